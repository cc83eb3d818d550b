#pragma once

// Failure modes that callers are expected to handle. Precondition violations
// throw std::domain_error; results that leave double range throw
// std::range_error; exact integer overflow throws std::overflow_error.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubesect {

// Quadrature ran out of its evaluation budget before reaching the requested
// absolute tolerance. Carries the partial result so diagnostics can report
// how close the run got.
class IntegrationError : public std::runtime_error {
public:
  IntegrationError(const std::string& what, double partial_value,
                   double abs_error_estimate, std::uint64_t evaluations)
      : std::runtime_error(what),
        partial_value_(partial_value),
        abs_error_estimate_(abs_error_estimate),
        evaluations_(evaluations) {}

  double partial_value() const noexcept { return partial_value_; }
  double abs_error_estimate() const noexcept { return abs_error_estimate_; }
  std::uint64_t evaluations() const noexcept { return evaluations_; }

private:
  double partial_value_;
  double abs_error_estimate_;
  std::uint64_t evaluations_;
};

// The LP solver hit its iteration cap (or reported a status that is
// impossible for a well-posed face-hit program).
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A Monte Carlo run discarded more samples than the health threshold
// allows, so its estimate cannot be trusted.
class DataQualityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Measure-zero geometric degeneracy (rank deficiency, duplicate hull
// points) persisted after the single allowed resample.
class DegenerateGeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed command-line input: bad range syntax, an invalid query grid
// point, or an inconsistent flag combination.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cubesect
