#include "cubesect/formulas.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cubesect/errors.hpp"

namespace cubesect::formulas {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double checked_positive(double v, const char* who) {
  if (!std::isfinite(v) || !(v > 0.0))
    throw std::range_error(std::string(who) + ": result left double range");
  return v;
}

// 2^e * x with an overflow check.
double pow2_scaled(double x, std::uint64_t e, const char* who) {
  if (e > 60000) throw std::range_error(std::string(who) + ": exponent too large");
  return checked_positive(std::ldexp(x, static_cast<int>(e)), who);
}

}  // namespace

void validate(const FaceQuery& q) {
  if (!(q.j < q.k && q.k < q.n))
    throw std::domain_error("face query requires 0 <= j < k < n");
}

std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r holds C(n-k+i-1, i-1); the product below is divisible by i, and the
    // running value is monotone in i, so checking after each step suffices.
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial_exact: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

double binomial_real(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  try {
    return static_cast<double>(binomial_exact(n, k));
  } catch (const std::overflow_error&) {
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double lg = std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
                    std::lgamma(nn - kk + 1.0);
  const double v = std::exp(lg);
  if (!std::isfinite(v))
    throw std::range_error("binomial_real: value left double range");
  return v;
}

double expected_vertex_count(std::uint64_t k, std::uint64_t n, double tol) {
  if (!(1 <= k && k < n))
    throw std::domain_error("expected_vertex_count requires 1 <= k < n");
  const auto integral = analysis::cube_gauss_integral(static_cast<double>(k), n - k, tol);
  const double prefactor =
      pow2_scaled(binomial_real(n, k), k, "expected_vertex_count") *
      std::sqrt(2.0 * static_cast<double>(k) / kPi);
  return checked_positive(prefactor * integral.value, "expected_vertex_count");
}

double expected_vertex_count_codim1(std::uint64_t n) {
  if (n < 2) throw std::domain_error("expected_vertex_count_codim1 requires n >= 2");
  const double angle = std::atan(1.0 / std::sqrt(static_cast<double>(n - 1)));
  return pow2_scaled(static_cast<double>(n) / kPi * angle, n,
                     "expected_vertex_count_codim1");
}

double vertex_count_codim_lower_bound(std::uint64_t d, std::uint64_t n) {
  if (!(1 <= d && d < n))
    throw std::domain_error("vertex_count_codim_lower_bound requires 1 <= d < n");
  const double angle = std::atan(1.0 / std::sqrt(static_cast<double>(n - d)));
  const double factor = std::pow(angle / kPi, static_cast<double>(d));
  return pow2_scaled(binomial_real(n, d) * factor, n,
                     "vertex_count_codim_lower_bound");
}

double expected_vertex_count_asymptotic(std::uint64_t k, std::uint64_t n) {
  if (k < 1) throw std::domain_error("expected_vertex_count_asymptotic requires k >= 1");
  if (n < 2) throw std::domain_error("expected_vertex_count_asymptotic requires n >= 2");
  const double kk = static_cast<double>(k);
  const double body = std::pow(kPi * std::log(static_cast<double>(n)), 0.5 * (kk - 1.0)) /
                      std::sqrt(kk);
  return pow2_scaled(body, k, "expected_vertex_count_asymptotic");
}

double section_measure_bound(std::uint64_t j, std::uint64_t k, std::uint64_t n,
                             double tol) {
  validate({j, k, n});
  if (j < 1) throw std::domain_error("section_measure_bound requires j >= 1");
  const double alpha = static_cast<double>(j) * static_cast<double>(k - j) /
                       static_cast<double>(n - k + j);
  const auto integral = analysis::cube_gauss_integral(alpha, j, tol);
  const double bound = std::sqrt(alpha / (2.0 * kPi)) * integral.value;
  return std::min(0.5, bound);
}

double face_count_lower_bound(const FaceQuery& q, double tol) {
  validate(q);
  if (q.j < 1) throw std::domain_error("face_count_lower_bound requires j >= 1");
  return expected_vertex_count(q.k - q.j, q.n, tol) /
         (2.0 * section_measure_bound(q.j, q.k, q.n, tol));
}

double face_count_upper_bound(const FaceQuery& q) {
  validate(q);
  return pow2_scaled(binomial_real(q.n, q.k - q.j), q.k - q.j,
                     "face_count_upper_bound");
}

double codim_face_count_asymptotic(std::uint64_t l, std::uint64_t m,
                                   std::uint64_t n) {
  if (!(1 <= l && l < m && m < n))
    throw std::domain_error("codim_face_count_asymptotic requires 1 <= l < m < n");
  const double d = static_cast<double>(m - l);
  const double v = std::pow(2.0 * static_cast<double>(n), d) / std::tgamma(d + 1.0);
  return checked_positive(v, "codim_face_count_asymptotic");
}

BoundPair face_count_bounds(const FaceQuery& q, double tol) {
  validate(q);
  if (q.j == 0)
    return {vertex_count_codim_lower_bound(q.n - q.k, q.n), face_count_upper_bound(q)};
  return {face_count_lower_bound(q, tol), face_count_upper_bound(q)};
}

}  // namespace cubesect::formulas
