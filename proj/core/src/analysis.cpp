#include "cubesect/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubesect/errors.hpp"

namespace cubesect::analysis {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;
constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
// exp() underflows to zero a little below this exponent.
constexpr double kMinExp = -745.0;
// Once the absolute tolerance is met, keep refining toward this relative
// accuracy while budget remains; best effort, never an error.
constexpr double kRelPolish = 1e-8;

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
// Nodes are symmetric; only the non-negative half is stored, largest first.
constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
// Gauss weights for the odd-indexed Kronrod nodes and the center.
constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

// Compensated (Neumaier) summation; the final reductions must not depend on
// panel ordering more than roundoff already does.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Integrand {
  double alpha;
  double m;

  double operator()(double t) const {
    if (t <= 0.0) return 0.0;
    const double q = std::erfc(t * kInvSqrt2);
    if (q >= 1.0) return 0.0;
    const double lg = m * std::log1p(-q) - 0.5 * alpha * t * t;
    return (lg < kMinExp) ? 0.0 : std::exp(lg);
  }
};

struct Panel {
  double a;
  double b;
  double integral;
  double error;
};

// Max-heap ordering: largest error first, ties broken toward the panel
// with the smaller left endpoint so refinement order is deterministic.
struct PanelPriority {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Panel evaluate_panel(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kKronrodW[7];
  double resg = fc * kGaussW[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodX[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kKronrodW[i] * (f1 + f2);
    if (i % 2 == 1) resg += kGaussW[i / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

struct Workspace {
  std::vector<Panel> heap;
  std::uint64_t evaluations = 0;

  void push(const Integrand& f, double a, double b) {
    heap.push_back(evaluate_panel(f, a, b));
    std::push_heap(heap.begin(), heap.end(), PanelPriority{});
    evaluations += 15;
  }
  Panel pop() {
    std::pop_heap(heap.begin(), heap.end(), PanelPriority{});
    Panel p = heap.back();
    heap.pop_back();
    return p;
  }
  double exact_error_sum() const {
    CompensatedSum s;
    for (const Panel& p : heap) s.add(p.error);
    return s.value();
  }
  double exact_value() const {
    CompensatedSum s;
    for (const Panel& p : heap) s.add(p.integral);
    return s.value();
  }
};

// Upper bound on the integral of exp(-alpha t^2 / 2) over [t0, inf).
double gaussian_tail_bound(double alpha, double t0) {
  const double e = -0.5 * alpha * t0 * t0;
  return (e < kMinExp) ? 0.0 : std::exp(e) / (alpha * t0);
}

// Smallest convenient cutoff T with tail mass at most tol / 10.
double gaussian_tail_cutoff(double alpha, double tol) {
  const double target = 0.1 * tol;
  double t = std::sqrt(std::max(2.0 * std::log(1.0 / target) / alpha, 1.0));
  while (gaussian_tail_bound(alpha, t) > target) t *= 1.25;
  return t;
}

IntegralValue integrate_adaptive(const Integrand& f, std::vector<double> pts,
                                 double tol, double tail_bound,
                                 std::uint64_t max_evaluations) {
  Workspace ws;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) ws.push(f, pts[i], pts[i + 1]);

  auto fail = [&](const char* why) -> IntegrationError {
    return IntegrationError(
        std::string("cube_gauss_integral: ") + why,
        std::max(ws.exact_value(), 0.0), ws.exact_error_sum() + tail_bound,
        ws.evaluations);
  };

  // Splits the worst panel and returns the change in the error sum, or no
  // value when refinement cannot continue (zero estimate, width at the
  // roundoff floor, or budget exhausted).
  auto split_worst = [&]() -> std::optional<double> {
    const Panel& worst = ws.heap.front();
    if (!(worst.error > 0.0)) return std::nullopt;
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) return std::nullopt;
    if (ws.evaluations + 30 > max_evaluations) return std::nullopt;
    const Panel p = ws.pop();
    const Panel left = evaluate_panel(f, p.a, mid);
    const Panel right = evaluate_panel(f, mid, p.b);
    ws.heap.push_back(left);
    std::push_heap(ws.heap.begin(), ws.heap.end(), PanelPriority{});
    ws.heap.push_back(right);
    std::push_heap(ws.heap.begin(), ws.heap.end(), PanelPriority{});
    ws.evaluations += 30;
    return left.error + right.error - p.error;
  };

  // Phase 1: drive the absolute error estimate below tol, or fail loudly.
  // The cheap incremental sum gates the inner loop; the outer loop re-checks
  // against the compensated sum before declaring success.
  if (tail_bound > tol) throw fail("truncation tail alone exceeds tolerance");
  for (;;) {
    double running = ws.exact_error_sum() + tail_bound;
    if (running <= tol) break;
    while (running > tol && std::isfinite(running)) {
      const std::optional<double> delta = split_worst();
      if (!delta) {
        if (ws.evaluations + 30 > max_evaluations)
          throw fail("evaluation budget exhausted before reaching tolerance");
        throw fail("error estimate cannot be reduced further at this tolerance");
      }
      running += *delta;
    }
  }

  // Phase 2: opportunistic relative refinement within the remaining budget.
  for (;;) {
    const double value = ws.exact_value();
    const double err = ws.exact_error_sum() + tail_bound;
    if (err <= kRelPolish * std::abs(value)) break;
    if (!split_worst()) break;
  }

  return {std::max(ws.exact_value(), 0.0), ws.exact_error_sum() + tail_bound,
          ws.evaluations};
}

void append_clamped(std::vector<double>& pts, double x, double hi) {
  if (x > 0.0 && x < hi) pts.push_back(x);
}

}  // namespace

double symmetric_normal_cdf(double t) {
  if (!(t >= 0.0)) throw std::domain_error("symmetric_normal_cdf: t must be >= 0");
  return std::erf(t * kInvSqrt2);
}

double gaussian_cube_measure(std::uint64_t m, double t) {
  if (!(t >= 0.0)) throw std::domain_error("gaussian_cube_measure: t must be >= 0");
  if (m == 0) return 1.0;
  const double q = std::erfc(t * kInvSqrt2);
  if (q >= 1.0) return 0.0;
  const double lg = static_cast<double>(m) * std::log1p(-q);
  return (lg < kMinExp) ? 0.0 : std::exp(lg);
}

IntegralValue cube_gauss_integral(double alpha, std::uint64_t m, double tol,
                                  std::uint64_t max_evaluations) {
  if (!(alpha > 0.0)) throw std::domain_error("cube_gauss_integral: alpha must be > 0");
  if (!(tol > 0.0)) throw std::domain_error("cube_gauss_integral: tol must be > 0");

  if (m == 0) return {std::sqrt(kPi / (2.0 * alpha)), 0.0, 0};

  const Integrand f{alpha, static_cast<double>(m)};
  std::vector<double> pts{0.0};
  double cutoff;
  if (m == 1) {
    cutoff = gaussian_tail_cutoff(alpha, tol);
    append_clamped(pts, 1.0, cutoff);
    append_clamped(pts, 2.0, cutoff);
    append_clamped(pts, 0.5 * cutoff, cutoff);
  } else {
    // The integrand concentrates where the max of m half-normals sits, so
    // seed panels around the extreme-value location b with width scale a.
    const ExtremeValueConstants ev = extreme_value_constants(m);
    cutoff = std::max(ev.b_n + 12.0 * ev.a_n, gaussian_tail_cutoff(alpha, tol));
    append_clamped(pts, 0.5 * ev.b_n, cutoff);
    for (double s : {-6.0, -2.0, 0.0, 2.0, 6.0, 12.0})
      append_clamped(pts, ev.b_n + s * ev.a_n, cutoff);
  }
  pts.push_back(cutoff);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](double x, double y) { return y - x < 1e-12 * cutoff; }),
            pts.end());

  const double tail = gaussian_tail_bound(alpha, cutoff);
  return integrate_adaptive(f, std::move(pts), tol, tail, max_evaluations);
}

ExtremeValueConstants extreme_value_constants(std::uint64_t n) {
  if (n < 2) throw std::domain_error("extreme_value_constants: n must be >= 2");
  return extreme_value_constants_real(static_cast<double>(n));
}

ExtremeValueConstants extreme_value_constants_real(double n) {
  if (!(n > 1.0)) throw std::domain_error("extreme_value_constants: count must be > 1");
  const double ell = std::log(n);
  const double s = std::sqrt(2.0 * ell);
  return {1.0 / s, s - std::log(kPi * ell) / (2.0 * s)};
}

double gumbel_limit_deviation(std::uint64_t n, double x) {
  const ExtremeValueConstants ev = extreme_value_constants(n);
  const double t = std::max(ev.a_n * x + ev.b_n, 0.0);
  const double fn = gaussian_cube_measure(n, t);
  return std::abs(fn - std::exp(-std::exp(-x)));
}

double integral_asymptotic(double alpha, std::uint64_t n) {
  if (!(alpha > 0.0)) throw std::domain_error("integral_asymptotic: alpha must be > 0");
  if (n < 2) throw std::domain_error("integral_asymptotic: n must be >= 2");
  const double ell = std::log(static_cast<double>(n));
  return std::tgamma(alpha) * std::pow(kPi, 0.5 * alpha) / kSqrt2 *
         std::pow(ell, 0.5 * (alpha - 1.0)) /
         std::pow(static_cast<double>(n), alpha);
}

}  // namespace cubesect::analysis
