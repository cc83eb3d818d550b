// cubesect: expected face counts of random central sections of the cube.
// Three subcommands: eval (exact values, bounds, asymptotics over a query
// grid), simulate (Monte Carlo estimates), verify (the release check suite).

#include <unistd.h>

#include <charconv>
#include <cstdint>
#include <exception>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubesect/analysis.hpp"
#include "cubesect/errors.hpp"
#include "cubesect/formulas.hpp"
#include "cubesect/montecarlo.hpp"
#include "cubesect/query_grid.hpp"
#include "cubesect/records.hpp"
#include "cubesect/verify.hpp"

namespace {

namespace cli = cubesect::cli;
namespace formulas = cubesect::formulas;
namespace mc = cubesect::mc;
using cubesect::UsageError;

enum class Format { csv, json };

Format parse_format(const std::string& name) {
  return name == "json" ? Format::json : Format::csv;
}

// Streams records incrementally in either encoding.
class Emitter {
 public:
  explicit Emitter(Format format) : format_(format) {
    if (format_ == Format::csv)
      std::cout << cli::kCsvHeader << '\n';
    else
      std::cout << "[\n";
  }

  void emit(const cli::OutputRecord& rec) {
    if (format_ == Format::csv) {
      std::cout << cli::csv_row(rec) << '\n';
    } else {
      if (!first_) std::cout << ",\n";
      std::cout << "  " << cli::json_object(rec);
      first_ = false;
    }
    std::cout.flush();
  }

  void finish() {
    if (format_ == Format::json) std::cout << (first_ ? "]\n" : "\n]\n");
    std::cout.flush();
  }

 private:
  Format format_;
  bool first_ = true;
};

std::uint64_t resolve_seed(const std::string& text) {
  if (text == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::uint64_t v = 0;
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(text.data(), last, v);
  if (res.ec != std::errc{} || res.ptr != last || text.empty())
    throw UsageError("--seed expects an unsigned integer or 'random'");
  return v;
}

mc::Method parse_method(const std::string& name) {
  if (name == "face_hit_lp") return mc::Method::face_hit_lp;
  if (name == "polygon_exact") return mc::Method::polygon_exact;
  if (name == "gaussian_hull") return mc::Method::gaussian_hull;
  throw UsageError("unknown method '" + name + "'");
}

std::string self_path(const char* argv0) {
  char buf[4096];
  const ssize_t len = ::readlink("/proc/self/exe", buf, sizeof buf - 1);
  if (len > 0) return std::string(buf, static_cast<std::size_t>(len));
  return argv0 == nullptr ? std::string() : std::string(argv0);
}

struct EvalArgs {
  std::string j, k, n;
  double tol = cubesect::analysis::kDefaultTol;
  std::string format = "csv";
};

int run_eval(const EvalArgs& args) {
  const auto grid = cli::build_grid(cli::parse_range(args.j),
                                    cli::parse_range(args.k),
                                    cli::parse_range(args.n));
  Emitter out(parse_format(args.format));
  for (const formulas::FaceQuery& q : grid) {
    cli::OutputRecord rec;
    rec.j = q.j;
    rec.k = q.k;
    rec.n = q.n;
    const formulas::BoundPair bounds = formulas::face_count_bounds(q, args.tol);
    rec.lower_bound = bounds.lower;
    rec.upper_bound = bounds.upper;
    if (q.j == 0) {
      rec.method = "exact";
      // The closed form at codimension 1 beats quadrature, use it when it
      // applies.
      rec.value = q.k + 1 == q.n
                      ? formulas::expected_vertex_count_codim1(q.n)
                      : formulas::expected_vertex_count(q.k, q.n, args.tol);
      rec.asymptotic = formulas::expected_vertex_count_asymptotic(q.k, q.n);
    } else {
      rec.method = "bounds";
      rec.asymptotic =
          formulas::codim_face_count_asymptotic(q.n - q.k, q.n - q.j, q.n);
    }
    out.emit(rec);
  }
  out.finish();
  return 0;
}

struct SimulateArgs {
  std::string j, k, n;
  std::uint64_t samples = mc::kDefaultSamples;
  std::string seed = "1";
  unsigned workers = 0;
  double eps = 1e-9;
  std::string method = "face_hit_lp";
  std::string format = "csv";
};

int run_simulate(const SimulateArgs& args) {
  const auto grid = cli::build_grid(cli::parse_range(args.j),
                                    cli::parse_range(args.k),
                                    cli::parse_range(args.n));
  mc::RunConfig base;
  base.samples = args.samples;
  base.seed = resolve_seed(args.seed);
  base.workers = args.workers;
  base.eps = args.eps;
  base.method = parse_method(args.method);
  Emitter out(parse_format(args.format));
  for (const formulas::FaceQuery& q : grid) {
    mc::RunConfig cfg = base;
    cfg.query = q;
    mc::Estimate est;
    switch (cfg.method) {
      case mc::Method::face_hit_lp: est = mc::estimate_face_count(cfg); break;
      case mc::Method::polygon_exact: est = mc::estimate_polygon_fvector(cfg); break;
      case mc::Method::gaussian_hull: est = mc::estimate_hull_fvector(cfg); break;
    }
    cli::OutputRecord rec;
    rec.j = q.j;
    rec.k = q.k;
    rec.n = q.n;
    rec.method = mc::method_name(cfg.method);
    rec.value = est.mean;
    rec.std_error = est.std_error;
    rec.samples = est.samples;
    rec.seed = est.seed;
    out.emit(rec);
  }
  out.finish();
  return 0;
}

struct VerifyArgs {
  std::string level = "full";
  std::string seed = "1";
  unsigned workers = 0;
};

int run_verify(const VerifyArgs& args, const char* argv0) {
  cubesect::verify::Options opts;
  opts.seed = resolve_seed(args.seed);
  opts.workers = args.workers;
  opts.full = args.level == "full";
  opts.cli_path = self_path(argv0);
  const auto results = cubesect::verify::run_checks(
      opts, [](const cubesect::verify::CheckResult& r) {
        std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": "
                  << r.details << '\n';
      });
  nlohmann::json report;
  report["level"] = args.level;
  report["seed"] = opts.seed;
  report["checks"] = nlohmann::json::array();
  for (const auto& r : results)
    report["checks"].push_back(
        {{"name", r.name}, {"passed", r.passed}, {"details", r.details}});
  const bool ok = cubesect::verify::all_passed(results);
  report["all_passed"] = ok;
  std::cout << report.dump(2) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected face counts of random central sections of the cube"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "Exact values, bounds, and asymptotics over a query grid");
  eval->add_option("--j", eval_args.j, "Face dimension, value or range a..b")
      ->required();
  eval->add_option("--k", eval_args.k, "Section dimension, value or range a..b")
      ->required();
  eval->add_option("--n", eval_args.n, "Ambient dimension, value or range a..b")
      ->required();
  eval->add_option("--tol", eval_args.tol, "Quadrature tolerance");
  eval->add_option("--format", eval_args.format, "Output encoding")
      ->check(CLI::IsMember({"csv", "json"}));

  SimulateArgs sim_args;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo estimates over a query grid");
  simulate->add_option("--j", sim_args.j, "Face dimension, value or range a..b")
      ->required();
  simulate->add_option("--k", sim_args.k, "Section dimension, value or range a..b")
      ->required();
  simulate->add_option("--n", sim_args.n, "Ambient dimension, value or range a..b")
      ->required();
  simulate->add_option("--samples", sim_args.samples, "Subspace draws per query");
  simulate->add_option("--seed", sim_args.seed,
                       "Unsigned integer, or 'random' for entropy");
  simulate->add_option("--workers", sim_args.workers,
                       "Worker threads, 0 for hardware concurrency");
  simulate->add_option("--eps", sim_args.eps, "Hit-test boundary slack");
  simulate->add_option("--method", sim_args.method, "Estimator")
      ->check(CLI::IsMember({"face_hit_lp", "polygon_exact", "gaussian_hull"}));
  simulate->add_option("--format", sim_args.format, "Output encoding")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs verify_args;
  CLI::App* verify =
      app.add_subcommand("verify", "Run the release check suite, report as JSON");
  verify->add_option("--level", verify_args.level, "Suite scale")
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--seed", verify_args.seed,
                     "Unsigned integer, or 'random' for entropy");
  verify->add_option("--workers", verify_args.workers,
                     "Worker threads, 0 for hardware concurrency");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return run_eval(eval_args);
    if (*simulate) return run_simulate(sim_args);
    if (*verify) return run_verify(verify_args, argv[0]);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}
