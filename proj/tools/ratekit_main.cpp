// ratekit command-line front end: evaluate the reaction-rate integral
// families, sweep parameter grids, and run the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid flags,
// 3 numeric non-convergence.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ratekit/integrand.hpp"
#include "ratekit/limits.hpp"
#include "ratekit/ode.hpp"
#include "ratekit/report.hpp"
#include "ratekit/representations.hpp"
#include "ratekit/verify.hpp"

namespace {

using namespace ratekit;

struct SpecFlags {
  std::string variant = "i1";
  double alpha = 1.0;
  double a = 1.0;
  double b = 1.0;
  double delta = 1.0;
  double rho = 1.0;
  std::optional<double> beta;
  std::optional<double> cutoff;
  std::optional<int> m;  // shorthand: delta = m * rho

  void attach(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "family: i1, i2, i1beta, i2beta");
    cmd->add_option("--alpha", alpha, "exponent alpha > 0");
    cmd->add_option("--a", a, "kernel rate a > 0");
    cmd->add_option("--b", b, "barrier coefficient b >= 0");
    cmd->add_option("--delta", delta, "kernel exponent delta > 0");
    cmd->add_option("--rho", rho, "barrier exponent rho > 0");
    cmd->add_option("--beta", beta, "pathway parameter (i1beta: >1, i2beta: <1)");
    cmd->add_option("--cutoff", cutoff, "upper limit d (i2 only)");
    cmd->add_option("--m", m, "set delta = m * rho");
  }

  IntegralSpec build() const {
    IntegralSpec s;
    s.variant = variant_from_name(variant);
    s.alpha = alpha;
    s.a = a;
    s.b = b;
    s.delta = m.has_value() ? *m * rho : delta;
    s.rho = rho;
    if (beta.has_value()) s.beta = *beta;
    s.cutoff = cutoff;
    s.validate();
    return s;
  }

  Row config_row() const {
    Row row;
    row.emplace_back("variant", Field::str(variant));
    row.emplace_back("alpha", Field::num(alpha));
    row.emplace_back("a", Field::num(a));
    row.emplace_back("b", Field::num(b));
    row.emplace_back("delta", Field::num(m.has_value() ? *m * rho : delta));
    row.emplace_back("rho", Field::num(rho));
    if (beta.has_value()) row.emplace_back("beta", Field::num(*beta));
    if (cutoff.has_value()) row.emplace_back("cutoff", Field::num(*cutoff));
    return row;
  }
};

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

Grid parse_grid(const std::string& text) {
  Grid g;
  const auto p1 = text.find(':');
  const auto p2 = text.find(':', p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw DomainError("grid must be start:stop:count");
  g.lo = std::stod(text.substr(0, p1));
  g.hi = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
  g.count = std::stoi(text.substr(p2 + 1));
  if (g.count < 1) throw DomainError("grid count must be >= 1");
  return g;
}

std::vector<double> grid_points(const Grid& g, bool log_spacing) {
  std::vector<double> pts;
  if (g.count == 1) {
    pts.push_back(g.lo);
    return pts;
  }
  for (int i = 0; i < g.count; ++i) {
    const double f = static_cast<double>(i) / (g.count - 1);
    if (log_spacing) {
      pts.push_back(std::exp(std::log(g.lo) + f * (std::log(g.hi) - std::log(g.lo))));
    } else {
      pts.push_back(g.lo + f * (g.hi - g.lo));
    }
  }
  return pts;
}

Row result_row(const EvalResult& r) {
  Row row;
  row.emplace_back("value", Field::num(r.value));
  row.emplace_back("abs_error_estimate", Field::num(r.abs_error_estimate));
  row.emplace_back("method", Field::str(method_name(r.method)));
  row.emplace_back("work", Field::integer_of(r.work));
  return row;
}

Row case_row(const SuiteCase& c, const std::string& suite) {
  Row row;
  row.emplace_back("suite", Field::str(suite));
  row.emplace_back("name", Field::str(c.name));
  row.emplace_back("pass", Field::flag(c.pass));
  row.emplace_back("metric", Field::num(c.metric));
  row.emplace_back("threshold", Field::num(c.threshold));
  row.emplace_back("detail", Field::str(c.detail));
  return row;
}

int emit_suites(const std::vector<SuiteResult>& suites, const VerifyOptions& opt,
                const std::string& which, OutputFormat format) {
  Report report;
  report.command = "verify";
  report.config.emplace_back("suite", Field::str(which));
  report.config.emplace_back("seed", Field::integer_of(static_cast<long long>(opt.seed)));

  long long total = 0, failed = 0;
  for (const SuiteResult& s : suites) {
    for (const SuiteCase& c : s.cases) {
      report.cases.push_back(case_row(c, s.suite));
      ++total;
      if (!c.pass) ++failed;
    }
  }
  report.summary.emplace_back("total", Field::integer_of(total));
  report.summary.emplace_back("passed", Field::integer_of(total - failed));
  report.summary.emplace_back("failed", Field::integer_of(failed));
  std::cout << render(report, format);
  return failed == 0 ? 0 : 1;
}

// targeted `verify ode` for one explicit spec: the exact Mellin-side
// identity plus finite-difference residuals at a few reduced arguments
SuiteResult targeted_ode(const IntegralSpec& spec, std::uint64_t seed) {
  SuiteResult result;
  result.suite = "ode-target";
  Rng rng(seed ^ 0x746172676574ull);

  const GOperator op = operator_from_theorem(spec);
  const MeijerGParams g = reduce(spec).g;

  SuiteCase exact;
  exact.name = "mellin operator identity";
  exact.threshold = 1e-11;
  std::vector<Complex> samples;
  for (int i = 0; i < 100; ++i) {
    double im = rng.uniform(0.15, 20.0);
    if (rng.uniform() < 0.5) im = -im;
    samples.emplace_back(rng.uniform(0.3, 1.6), im);
  }
  exact.metric = mellin_operator_identity(op, g, samples);
  exact.pass = exact.metric < exact.threshold;
  result.cases.push_back(exact);

  OdeProbe probe;
  probe.z_points = {0.5, 1.0, 2.0};
  probe.stencil_points = op.m_order <= 2 ? 5 : 7;
  probe.fd_step = 0.05;
  const auto residuals = fd_residual(op, spec, probe, 1e-12);
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    SuiteCase c;
    c.name = "fd residual z=" + format_g17(probe.z_points[i]);
    c.threshold = 1e-3;
    c.metric = residuals[i];
    c.pass = c.metric < c.threshold;
    result.cases.push_back(c);
  }

  result.failed = 0;
  for (const auto& c : result.cases)
    if (!c.pass) ++result.failed;
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended nonresonant reaction-rate integrals: evaluation and "
               "verification"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format_name;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  app.add_option("--format", format_name, "output format: json, csv, human")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized verification draws");
  app.add_option("--threads", threads,
                 "worker pool size (RATEKIT_THREADS env overrides)");

  // ---- eval -------------------------------------------------------------
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one integral");
  eval_cmd->fallthrough();
  SpecFlags eval_spec;
  eval_spec.attach(eval_cmd);
  std::string method_name_flag = "auto";
  double rel_tol = 1e-9;
  eval_cmd->add_option("--method", method_name_flag,
                       "auto, quadrature, contour, series");
  eval_cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");

  // ---- table ------------------------------------------------------------
  CLI::App* table_cmd = app.add_subcommand("table", "sweep b or beta over a grid");
  table_cmd->fallthrough();
  SpecFlags table_spec;
  table_spec.attach(table_cmd);
  std::string b_grid_text, beta_grid_text;
  bool log_grid = false;
  std::string table_method = "auto";
  double table_rel_tol = 1e-9;
  table_cmd->add_option("--b-grid", b_grid_text, "b sweep start:stop:count");
  table_cmd->add_option("--beta-grid", beta_grid_text, "beta sweep start:stop:count");
  table_cmd->add_flag("--log-grid", log_grid, "logarithmic grid spacing");
  table_cmd->add_option("--method", table_method, "auto, quadrature, contour, series");
  table_cmd->add_option("--rel-tol", table_rel_tol, "quadrature relative tolerance");

  // ---- verify -----------------------------------------------------------
  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->require_subcommand(1);
  verify_cmd->fallthrough();
  CLI::App* v_repr = verify_cmd->add_subcommand("repr", "representation theorems");
  CLI::App* v_ode = verify_cmd->add_subcommand("ode", "differential-equation checks");
  SpecFlags ode_spec;
  ode_spec.attach(v_ode);
  bool ode_targeted = false;
  v_ode->callback([&] { ode_targeted = v_ode->count("--variant") > 0 ||
                                       v_ode->count("--m") > 0; });
  CLI::App* v_limit = verify_cmd->add_subcommand("limit", "pathway beta -> 1 limits");
  CLI::App* v_ident = verify_cmd->add_subcommand("identities", "gamma identities");
  CLI::App* v_coher = verify_cmd->add_subcommand("coherence", "method coherence");
  CLI::App* v_all = verify_cmd->add_subcommand("all", "every suite");
  for (CLI::App* sub : {v_repr, v_ode, v_limit, v_ident, v_coher, v_all}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  int status = 0;
  try {
    OutputFormat format = OutputFormat::Human;
    if (!format_name.empty()) format = output_format_from_name(format_name);

    VerifyOptions opt;
    opt.seed = seed;
    opt.threads = threads;

    if (*eval_cmd) {
      const IntegralSpec spec = eval_spec.build();
      const EvalResult r = eval(spec, eval_method_from_name(method_name_flag), rel_tol);
      Report report;
      report.command = "eval";
      report.config = eval_spec.config_row();
      report.config.emplace_back("method", Field::str(method_name_flag));
      report.config.emplace_back("rel_tol", Field::num(rel_tol));
      report.cases.push_back(result_row(r));
      report.summary.emplace_back("value", Field::num(r.value));
      std::cout << render(report, format);
    } else if (*table_cmd) {
      if (format_name.empty()) format = OutputFormat::Csv;
      if (b_grid_text.empty() == beta_grid_text.empty())
        throw DomainError("table: exactly one of --b-grid / --beta-grid required");
      const bool sweep_b = !b_grid_text.empty();
      if (!sweep_b) {
        const Variant v = variant_from_name(table_spec.variant);
        if (v != Variant::I1Beta && v != Variant::I2Beta)
          throw DomainError("table: a beta sweep requires a pathway family");
      }
      const Grid grid = parse_grid(sweep_b ? b_grid_text : beta_grid_text);
      const auto points = grid_points(grid, log_grid);
      const EvalMethod method = eval_method_from_name(table_method);

      Report report;
      report.command = "table";
      report.config = table_spec.config_row();
      report.config.emplace_back("sweep", Field::str(sweep_b ? "b" : "beta"));
      report.config.emplace_back("grid", Field::str(sweep_b ? b_grid_text : beta_grid_text));
      for (double point : points) {
        SpecFlags flags = table_spec;
        if (sweep_b)
          flags.b = point;
        else
          flags.beta = point;
        const IntegralSpec spec = flags.build();
        const EvalResult r = eval(spec, method, table_rel_tol);
        Row row;
        row.emplace_back("variant", Field::str(flags.variant));
        row.emplace_back("alpha", Field::num(spec.alpha));
        row.emplace_back("a", Field::num(spec.a));
        row.emplace_back("b", Field::num(spec.b));
        row.emplace_back("delta", Field::num(spec.delta));
        row.emplace_back("rho", Field::num(spec.rho));
        row.emplace_back("beta", Field::num(spec.beta));
        row.emplace_back("value", Field::num(r.value));
        row.emplace_back("error_estimate", Field::num(r.abs_error_estimate));
        row.emplace_back("method", Field::str(method_name(r.method)));
        row.emplace_back("work", Field::integer_of(r.work));
        report.cases.push_back(std::move(row));
      }
      report.summary.emplace_back("rows",
                                  Field::integer_of(static_cast<long long>(points.size())));
      std::cout << render(report, format);
    } else if (*verify_cmd) {
      std::vector<SuiteResult> suites;
      std::string which;
      if (*v_repr) {
        which = "repr";
        suites.push_back(run_repr_suite(opt));
      } else if (*v_ode) {
        which = "ode";
        if (ode_targeted) {
          suites.push_back(targeted_ode(ode_spec.build(), seed));
        } else {
          suites.push_back(run_ode_exact_suite(opt));
          suites.push_back(run_ode_fd_suite(opt));
        }
      } else if (*v_limit) {
        which = "limit";
        suites.push_back(run_limits_suite(opt));
      } else if (*v_ident) {
        which = "identities";
        suites.push_back(run_identities_suite(opt));
      } else if (*v_coher) {
        which = "coherence";
        suites.push_back(run_coherence_suite(opt));
      } else if (*v_all) {
        which = "all";
        suites = run_all_suites(opt);
      }
      status = emit_suites(suites, opt, which, format);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  const auto elapsed = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "elapsed: " << elapsed.count() << " s\n";
  return status;
}
