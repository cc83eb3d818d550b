#include "cubesect/verify.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "cubesect/analysis.hpp"
#include "cubesect/errors.hpp"
#include "cubesect/formulas.hpp"
#include "cubesect/geometry.hpp"
#include "cubesect/montecarlo.hpp"
#include "cubesect/records.hpp"
#include "cubesect/rng.hpp"

namespace cubesect::verify {
namespace {

constexpr double kSqrtHalfPi = 1.2533141373155002512078826424055226;

std::string numstr(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Scale {
  std::uint64_t concordance_samples;
  std::uint64_t floor_samples;
  std::uint64_t sandwich_samples;
  std::uint64_t trend_samples;
  std::uint64_t hull_trials;
  std::uint64_t measure_trials;
  std::uint64_t repro_samples;
  bool include_slow;
};

Scale scale_for(bool full) {
  if (full) return {100'000, 100'000, 100'000, 100'000, 1'000'000, 100'000, 100'000, true};
  return {10'000, 10'000, 5'000, 10'000, 100'000, 0, 20'000, false};
}

mc::RunConfig run_config(const Options& opts, formulas::FaceQuery q,
                         std::uint64_t samples) {
  mc::RunConfig cfg;
  cfg.query = q;
  cfg.samples = samples;
  cfg.seed = opts.seed;
  cfg.workers = opts.workers;
  return cfg;
}

// z distance between two estimates; infinite disagreement collapses to a
// plain comparison when both spreads vanish.
double z_between(double a, double sa, double b, double sb) {
  const double s = std::sqrt(sa * sa + sb * sb);
  if (s == 0.0) return a == b ? 0.0 : 1e300;
  return std::abs(a - b) / s;
}

CheckResult check_codim1_closed_form(const Options&, const Scale&) {
  double worst = 0.0;
  std::uint64_t worst_n = 0;
  for (std::uint64_t n = 3; n <= 12; ++n) {
    const double quad = formulas::expected_vertex_count(n - 1, n, 1e-13);
    const double closed = formulas::expected_vertex_count_codim1(n);
    const double dev = std::abs(quad - closed);
    if (dev > worst) {
      worst = dev;
      worst_n = n;
    }
  }
  return {"codim1-closed-form", worst <= 1e-8,
          "max |quadrature - closed form| = " + numstr(worst) + " at n = " +
              std::to_string(worst_n) + " (limit 1e-08)"};
}

CheckResult check_plane_section_value(const Options&, const Scale&) {
  const double v = formulas::expected_vertex_count(2, 3, 1e-12);
  const double dev = std::abs(v - 4.7016);
  return {"plane-section-vertex-value", dev <= 1e-3,
          "f(0,2,3) = " + numstr(v) + ", |dev from 4.7016| = " + numstr(dev) +
              " (limit 0.001)"};
}

CheckResult check_alpha1_identity(const Options&, const Scale&) {
  double worst = 0.0;
  std::uint64_t worst_m = 0;
  for (std::uint64_t m = 0; m <= 200; ++m) {
    const auto iv = analysis::cube_gauss_integral(1.0, m, 1e-12);
    const double dev =
        std::abs(iv.value * static_cast<double>(m + 1) - kSqrtHalfPi);
    if (dev > worst) {
      worst = dev;
      worst_m = m;
    }
  }
  return {"alpha1-identity", worst <= 1e-9,
          "max |I(1,m)(m+1) - sqrt(pi/2)| = " + numstr(worst) + " at m = " +
              std::to_string(worst_m) + " (limit 1e-09)"};
}

CheckResult check_estimator_concordance(const Options& opts, const Scale& sc) {
  double worst_z = 0.0;
  std::string worst_label = "none";
  for (std::uint64_t n : {std::uint64_t{3}, std::uint64_t{5}, std::uint64_t{10}}) {
    const double exact = formulas::expected_vertex_count(2, n, 1e-12);
    const auto cfg = run_config(opts, {0, 2, n}, sc.concordance_samples);
    struct Named {
      const char* name;
      double mean;
      double se;
    };
    const mc::Estimate lp = mc::estimate_face_count(cfg);
    const mc::Estimate poly = mc::estimate_polygon_fvector(cfg);
    const mc::Estimate hull = mc::estimate_hull_fvector(cfg);
    const Named est[4] = {{"exact", exact, 0.0},
                          {"face-lp", lp.mean, lp.std_error},
                          {"polygon", poly.mean, poly.std_error},
                          {"hull", hull.mean, hull.std_error}};
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const double z = z_between(est[a].mean, est[a].se, est[b].mean, est[b].se);
        if (z > worst_z) {
          worst_z = z;
          worst_label = std::string(est[a].name) + " vs " + est[b].name +
                        " at n = " + std::to_string(n);
        }
      }
  }
  return {"estimator-concordance", worst_z <= 3.0,
          "max pairwise z = " + numstr(worst_z) + " (" + worst_label +
              ", limit 3)"};
}

CheckResult check_polygon_vertex_floor(const Options& opts, const Scale& sc) {
  std::uint64_t global_min = 0;
  bool all_even = true;
  bool first = true;
  for (std::uint64_t n : {std::uint64_t{3}, std::uint64_t{10}, std::uint64_t{50}}) {
    mc::CountHistogram hist;
    mc::estimate_polygon_fvector(run_config(opts, {0, 2, n}, sc.floor_samples), &hist);
    for (const auto& [count, freq] : hist) {
      if (first || count < global_min) global_min = count;
      first = false;
      if (count % 2 != 0) all_even = false;
    }
  }
  const bool ok = !first && global_min >= 4 && all_even;
  return {"polygon-vertex-floor", ok,
          "min vertex count = " + std::to_string(global_min) +
              (all_even ? ", all counts even" : ", ODD COUNT SEEN") +
              " over n in {3,10,50} (hard floor 4)"};
}

CheckResult check_bound_sandwich(const Options& opts, const Scale& sc) {
  double worst_slack = 1e300;  // in z units; negative means violation
  std::string worst_label = "none";
  int queries = 0;
  bool ok = true;
  for (std::uint64_t n = 3; n <= 8; ++n)
    for (std::uint64_t k = 2; k < n; ++k)
      for (std::uint64_t j = 1; j < k; ++j) {
        const formulas::FaceQuery q{j, k, n};
        const formulas::BoundPair bounds = formulas::face_count_bounds(q, 1e-12);
        const mc::Estimate est =
            mc::estimate_face_count(run_config(opts, q, sc.sandwich_samples));
        ++queries;
        double slack;
        if (est.std_error == 0.0) {
          slack = (est.mean >= bounds.lower && est.mean <= bounds.upper) ? 1e300 : -1e300;
        } else {
          slack = std::min((est.mean - bounds.lower) / est.std_error,
                           (bounds.upper - est.mean) / est.std_error) +
                  3.0;
        }
        if (slack < worst_slack) {
          worst_slack = slack;
          worst_label = "(j=" + std::to_string(j) + ",k=" + std::to_string(k) +
                        ",n=" + std::to_string(n) + ")";
        }
        if (slack < 0.0) ok = false;
      }
  return {"bound-sandwich", ok,
          std::to_string(queries) + " queries in n <= 8; tightest slack z = " +
              numstr(worst_slack) + " at " + worst_label + " (fails below 0)"};
}

CheckResult check_codim_ratio_trend(const Options& opts, const Scale& sc) {
  const std::uint64_t ns[3] = {6, 10, 14};
  double r[3];
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t n = ns[i];
    const mc::Estimate est = mc::estimate_face_count(
        run_config(opts, {n - 2, n - 1, n}, sc.trend_samples));
    r[i] = est.mean / (2.0 * static_cast<double>(n));
  }
  const bool ok = r[0] <= r[1] && r[1] <= r[2] && r[0] < r[2] && r[2] > 0.8;
  return {"codim-ratio-trend", ok,
          "f(n-2,n-1,n)/(2n) = " + numstr(r[0]) + " / " + numstr(r[1]) + " / " +
              numstr(r[2]) + " at n = 6/10/14 (needs nondecreasing toward 1, last > 0.8)"};
}

CheckResult check_hexagon_frequency(const Options& opts, const Scale& sc) {
  mc::CountHistogram hist;
  const auto cfg = run_config(opts, {0, 2, 3}, sc.hull_trials);
  const mc::Estimate est = mc::estimate_hull_fvector(cfg, &hist);
  const double valid = static_cast<double>(cfg.samples - est.discarded);
  const double p4 = static_cast<double>(hist.count(4) ? hist.at(4) : 0) / valid;
  const double p6 = static_cast<double>(hist.count(6) ? hist.at(6) : 0) / valid;
  // Multinomial difference of proportions: the two counts are negatively
  // correlated, which the covariance term below accounts for.
  const double var_diff =
      (p4 * (1.0 - p4) + p6 * (1.0 - p6) + 2.0 * p4 * p6) / valid;
  const double z_sep = (p4 - p6) / std::sqrt(var_diff);
  const double z_mean = z_between(est.mean, est.std_error, 4.7016, 0.0);
  const bool ok = z_sep > 5.0 && z_mean <= 3.0;
  return {"hexagon-frequency", ok,
          "P(4) = " + numstr(p4) + ", P(6) = " + numstr(p6) + ", separation z = " +
              numstr(z_sep) + " (needs > 5); mean = " + numstr(est.mean) +
              ", z vs 4.7016 = " + numstr(z_mean) + " (limit 3)"};
}

CheckResult check_affine_section_measure(const Options& opts, const Scale& sc) {
  const double taus[3] = {0.5, 1.0, 2.0};
  double worst_slack = 1e300;
  std::string worst_label = "none";
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    RngStream rng(opts.seed, 0x53C710000ull + static_cast<std::uint64_t>(i));
    const std::uint64_t j = 1 + (rng.next_u64() & 1);
    const std::uint64_t m = j + 1 + rng.next_u64() % (6 - j);
    const double tau = taus[rng.next_u64() % 3];
    const geometry::SectionMeasureCheck r =
        geometry::affine_section_measure_check(m, j, tau, rng, sc.measure_trials);
    const double cushion = 3.0 * r.lhs_std_error + 1e-12;
    const double slack = r.rhs + cushion - r.lhs_estimate;
    if (slack < worst_slack) {
      worst_slack = slack;
      worst_label = "(j=" + std::to_string(j) + ",m=" + std::to_string(m) +
                    ",tau=" + numstr(tau) + ")";
    }
    if (r.lhs_estimate > r.rhs + cushion) ok = false;
  }
  return {"affine-section-measure", ok,
          "20 random configurations; tightest rhs + 3se - lhs = " +
              numstr(worst_slack) + " at " + worst_label + " (fails below 0)"};
}

CheckResult check_gumbel_convergence(const Options&, const Scale&) {
  double worst_dev = 0.0;
  bool shrinks = true;
  for (double x : {-1.0, 0.0, 1.0, 2.0}) {
    const double d_large = analysis::gumbel_limit_deviation(1'000'000, x);
    const double d_small = analysis::gumbel_limit_deviation(1'000, x);
    worst_dev = std::max(worst_dev, d_large);
    if (!(d_large < d_small)) shrinks = false;
  }
  return {"gumbel-convergence", worst_dev < 0.02 && shrinks,
          "max deviation at n = 1e6 is " + numstr(worst_dev) +
              " (limit 0.02), shrinking from n = 1e3: " + (shrinks ? "yes" : "no")};
}

CheckResult check_integral_asymptotic_ratio(const Options&, const Scale&) {
  double dev[2];
  const std::uint64_t ms[2] = {1'000, 100'000};
  for (int i = 0; i < 2; ++i) {
    const double asym = analysis::integral_asymptotic(2.0, ms[i]);
    const auto iv = analysis::cube_gauss_integral(2.0, ms[i], asym * 1e-4);
    dev[i] = std::abs(iv.value / asym - 1.0);
  }
  const bool ok = dev[1] <= 0.15 && dev[1] < dev[0];
  return {"integral-asymptotic-ratio", ok,
          "|I(2,m)/asymptotic - 1| = " + numstr(dev[0]) + " at m = 1e3, " +
              numstr(dev[1]) + " at m = 1e5 (limit 0.15, must shrink)"};
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

std::pair<int, std::string> run_capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  const int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

CheckResult check_worker_reproducibility(const Options& opts, const Scale& sc) {
  if (opts.cli_path.empty())
    return {"worker-reproducibility", false,
            "no CLI binary path provided to the verifier"};
  std::vector<std::string> outputs;
  for (int workers : {1, 4, 8}) {
    const std::string cmd =
        shell_quote(opts.cli_path) + " simulate --j 1 --k 3 --n 6 --samples " +
        std::to_string(sc.repro_samples) + " --seed " + std::to_string(opts.seed) +
        " --workers " + std::to_string(workers) + " --format csv";
    const auto [code, out] = run_capture(cmd);
    if (code != 0)
      return {"worker-reproducibility", false,
              "exit code " + std::to_string(code) + " at workers = " +
                  std::to_string(workers)};
    outputs.push_back(out);
  }
  const bool identical = outputs[0] == outputs[1] && outputs[1] == outputs[2];
  const bool sane = outputs[0].rfind(cli::kCsvHeader, 0) == 0;
  return {"worker-reproducibility", identical && sane,
          identical ? "stdout byte-identical across worker counts 1, 4, 8"
                    : "outputs differ between worker counts"};
}

}  // namespace

std::vector<CheckResult> run_checks(const Options& opts, const Progress& progress) {
  const Scale sc = scale_for(opts.full);
  struct Entry {
    const char* name;
    CheckResult (*fn)(const Options&, const Scale&);
    bool slow;
  };
  const Entry entries[] = {
      {"codim1-closed-form", check_codim1_closed_form, false},
      {"plane-section-vertex-value", check_plane_section_value, false},
      {"alpha1-identity", check_alpha1_identity, false},
      {"estimator-concordance", check_estimator_concordance, false},
      {"polygon-vertex-floor", check_polygon_vertex_floor, false},
      {"bound-sandwich", check_bound_sandwich, false},
      {"codim-ratio-trend", check_codim_ratio_trend, false},
      {"hexagon-frequency", check_hexagon_frequency, false},
      {"affine-section-measure", check_affine_section_measure, true},
      {"gumbel-convergence", check_gumbel_convergence, true},
      {"integral-asymptotic-ratio", check_integral_asymptotic_ratio, false},
      {"worker-reproducibility", check_worker_reproducibility, false},
  };

  std::vector<CheckResult> results;
  for (const Entry& e : entries) {
    if (e.slow && !sc.include_slow) continue;
    CheckResult r;
    try {
      r = e.fn(opts, sc);
    } catch (const std::exception& ex) {
      r = {e.name, false, std::string("exception: ") + ex.what()};
    }
    results.push_back(r);
    if (progress) progress(results.back());
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace cubesect::verify
