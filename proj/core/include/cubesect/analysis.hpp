#pragma once

// Scalar analysis layer: the Gaussian orthant integral against the cube
// indicator power, its large-m asymptotics, and the extreme-value
// normalization that locates where that integrand concentrates.

#include <cstdint>

namespace cubesect::analysis {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::uint64_t kDefaultMaxEvaluations = 1'000'000;

struct IntegralValue {
  double value = 0.0;               // >= 0
  double abs_error_estimate = 0.0;  // <= requested tol on success
  std::uint64_t evaluations = 0;    // integrand calls spent
};

// Normalizing constants for the maximum of n iid |N(0,1)| variables:
// centered at b_n with scale a_n, the maximum converges to a Gumbel limit.
struct ExtremeValueConstants {
  double a_n = 0.0;
  double b_n = 0.0;
};

// P(|g| <= t) for g ~ N(0,1). Requires t >= 0.
double symmetric_normal_cdf(double t);

// P(max_{i<=m} |g_i| <= t) for iid standard normals; equals
// symmetric_normal_cdf(t)^m evaluated in log space so it stays accurate
// for m up to ~1e6 and beyond. Requires t >= 0.
double gaussian_cube_measure(std::uint64_t m, double t);

// integral over [0, inf) of exp(-alpha t^2 / 2) * P(max of m |g_i| <= t) dt.
// tol is an absolute tolerance on the result; once met, refinement continues
// opportunistically toward 1e-8 relative accuracy within the same budget.
// m == 0 uses the closed form sqrt(pi / (2 alpha)). Requires alpha > 0 and
// tol > 0; throws IntegrationError if the budget runs out before tol is met.
IntegralValue cube_gauss_integral(double alpha, std::uint64_t m,
                                  double tol = kDefaultTol,
                                  std::uint64_t max_evaluations = kDefaultMaxEvaluations);

// a_n = 1/sqrt(2 log n), b_n = sqrt(2 log n) - log(pi log n)/(2 sqrt(2 log n)).
// Requires n >= 2.
ExtremeValueConstants extreme_value_constants(std::uint64_t n);

// Same formulas with a real-valued count (> 1), exposed so the constants can
// be checked at analytically convenient points such as n = e.
ExtremeValueConstants extreme_value_constants_real(double n);

// |P(max of n |g_i| <= a_n x + b_n) - exp(-exp(-x))|, the distance from the
// rescaled cube measure to its Gumbel limit. The evaluation point is clamped
// at zero where the measure vanishes. Requires n >= 2.
double gumbel_limit_deviation(std::uint64_t n, double x);

// Leading-order value of cube_gauss_integral(alpha, n) for large n:
// Gamma(alpha) pi^(alpha/2) / sqrt(2) * (log n)^((alpha-1)/2) / n^alpha.
// Requires alpha > 0 and n >= 2.
double integral_asymptotic(double alpha, std::uint64_t n);

}  // namespace cubesect::analysis
