// Command-line front end: parameter handling, subcommand dispatch, CSV/SVG
// emission.  Exit codes: 0 success, 2 configuration error, 3 numeric
// failure, 4 verification failure.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kpr/analytic.hpp"
#include "kpr/enlarged.hpp"
#include "kpr/errors.hpp"
#include "kpr/finite_model.hpp"
#include "kpr/half_line.hpp"
#include "kpr/io.hpp"
#include "kpr/mc.hpp"
#include "kpr/network.hpp"
#include "kpr/pde_limits.hpp"
#include "kpr/variants.hpp"
#include "kpr/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerify = 4;

struct Options {
  std::string config_path;
  std::string out = "out.csv";
  std::string svg;
  int workers = 0;
  std::uint64_t seed = 1;

  kpr::ModelParams params;
  bool has_b = false;
  double b = 0.0;
  bool has_mu = false;
  double mu = 0.0;

  double ET = 1.0, ED = 0.5, EP = 0.3;

  double beta = 1.0, loss = 0.0, L = 10.0;
  int grid = 400;

  std::string kind = "attachment";
  double gamma = 1.0;
  int K = 200;

  double sigma_min = -3.0, sigma_max = 3.0;
  int points = 61;

  double t = 1.0;
  std::uint64_t trials = 100000;
};

void apply_config(Options& o) {
  if (o.config_path.empty()) return;
  const kpr::Config cfg = kpr::Config::load(o.config_path);
  o.params.N = static_cast<int>(cfg.get_int("N", o.params.N));
  o.params.alpha = cfg.get_double("alpha", o.params.alpha);
  o.params.energy_E = cfg.get_double("E", o.params.energy_E);
  o.params.delta = cfg.get_double("delta", o.params.delta);
  o.params.sigma = cfg.get_double("sigma", o.params.sigma);
  if (cfg.has("b")) {
    o.has_b = true;
    o.b = cfg.get_double("b", 0.0);
  }
  if (cfg.has("mu")) {
    o.has_mu = true;
    o.mu = cfg.get_double("mu", 0.0);
  }
  o.ET = cfg.get_double("E_T", o.ET);
  o.ED = cfg.get_double("E_D", o.ED);
  o.EP = cfg.get_double("E_P", o.EP);
  o.beta = cfg.get_double("beta", o.beta);
  o.loss = cfg.get_double("loss", o.loss);
  o.L = cfg.get_double("L", o.L);
  o.grid = static_cast<int>(cfg.get_int("grid", o.grid));
  o.kind = cfg.get("kind", o.kind);
  o.gamma = cfg.get_double("gamma", o.gamma);
  o.K = static_cast<int>(cfg.get_int("K", o.K));
  o.sigma_min = cfg.get_double("sigma_min", o.sigma_min);
  o.sigma_max = cfg.get_double("sigma_max", o.sigma_max);
  o.points = static_cast<int>(cfg.get_int("points", o.points));
  o.t = cfg.get_double("t", o.t);
  o.trials = static_cast<std::uint64_t>(cfg.get_int("trials",
                                                    static_cast<long long>(o.trials)));
  o.seed = static_cast<std::uint64_t>(cfg.get_int("seed",
                                                  static_cast<long long>(o.seed)));
  o.workers = static_cast<int>(cfg.get_int("workers", o.workers));
  o.out = cfg.get("out", o.out);
  o.svg = cfg.get("svg", o.svg);
}

kpr::ModelParams finalize_params(const Options& o) {
  kpr::ModelParams p = o.params;
  if (o.has_b) p.b = o.b;
  if (o.has_mu) p.mu_explicit = o.mu;
  return p;
}

std::vector<double> sigma_grid(const Options& o) {
  if (o.points < 2) throw kpr::config_error("points must be >= 2");
  std::vector<double> g(static_cast<std::size_t>(o.points));
  for (int i = 0; i < o.points; ++i)
    g[static_cast<std::size_t>(i)] =
        o.sigma_min + (o.sigma_max - o.sigma_min) * i / (o.points - 1);
  return g;
}

void maybe_svg(const Options& o, const std::vector<double>& x,
               const std::vector<std::vector<double>>& series,
               const std::string& title) {
  if (!o.svg.empty()) kpr::write_svg_lines(o.svg, x, series, title);
}

int cmd_report(const Options& o) {
  const kpr::ModelParams p = finalize_params(o);
  const kpr::AnalyticReport r = kpr::compute_report(p);
  kpr::CsvTable t({"key", "value"});
  const auto row = [&](const char* k, double v) {
    t.add_row_text({k, kpr::format_double(v)});
  };
  row("delta_c", r.delta_c);
  row("phi", r.phi);
  row("phi2", r.phi2);
  row("psi", r.psi);
  row("lambda", r.lambda);
  row("nbar_S", r.nbar_S);
  t.add_row_text({"regime", kpr::to_string(r.regime)});
  if (r.constants_available) {
    row("A0", r.A0);
    row("B0", r.B0);
    row("G", r.G);
    row("C1", r.C1);
    row("C2", r.C2);
  }
  t.write(o.out);
  std::cout << t.to_string();
  return kExitOk;
}

int cmd_pres(const Options& o) {
  const kpr::ModelParams p = finalize_params(o);
  const double pres = kpr::pres_exact(p);
  kpr::CsvTable t({"sigma", "pres", "log_odds"});
  t.add_row({p.sigma, pres, kpr::log_odds_exact(p)});
  t.write(o.out);
  std::cout << t.to_string();
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  const kpr::ModelParams p = finalize_params(o);
  const std::vector<double> grid = sigma_grid(o);
  const kpr::SweepResult sw = kpr::sweep_sigma(p, grid, o.workers);
  kpr::CsvTable t({"sigma", "pres", "log_odds", "error"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    t.add_row_text({kpr::format_double(sw.sigma_grid[i]), kpr::format_double(sw.pres[i]),
                    kpr::format_double(sw.log_odds[i]), sw.point_errors[i]});
  t.write(o.out);
  maybe_svg(o, sw.sigma_grid, {sw.pres}, "response probability vs sigma");
  return kExitOk;
}

int cmd_phase(const Options& o) {
  const kpr::ModelParams p = finalize_params(o);
  const std::vector<double> grid = sigma_grid(o);
  kpr::CsvTable t({"sigma", "delta_c"});
  std::vector<double> dc;
  for (double s : grid) {
    dc.push_back(kpr::delta_c(p.with_sigma(s)));
    t.add_row({s, dc.back()});
  }
  t.write(o.out);
  maybe_svg(o, grid, {dc}, "critical affinity vs sigma");
  return kExitOk;
}

int cmd_halfline(const Options& o) {
  const kpr::ModelParams p = finalize_params(o);
  const kpr::HalfLineRun run = kpr::integrate_halfline_auto(p, o.t, o.K);
  kpr::CsvTable t({"k", "n_k"});
  std::vector<double> ks, ns;
  for (int k = 0; k <= run.K; ++k) {
    ks.push_back(k);
    ns.push_back(run.n[static_cast<std::size_t>(k)]);
    t.add_row({static_cast<double>(k), run.n[static_cast<std::size_t>(k)]});
  }
  t.write(o.out);
  maybe_svg(o, ks, {ns}, "half-line occupation profile");
  return kExitOk;
}

int cmd_enlarged(const Options& o) {
  kpr::EnlargedParams p;
  p.base = finalize_params(o);
  p.E_T = o.ET;
  p.E_D = o.ED;
  p.E_P = o.EP;
  p.validate();
  kpr::EnlargedState s = kpr::boltzmann_state(p);
  if (o.t > 0.0) s = kpr::integrate_enlarged(s, p, o.t);
  kpr::CsvTable t({"species", "concentration"});
  for (int k = 0; k <= p.base.N; ++k)
    t.add_row_text({"C" + std::to_string(k), kpr::format_double(s.nk(k))});
  t.add_row_text({"ATP", kpr::format_double(s.nT())});
  t.add_row_text({"ADP", kpr::format_double(s.nD())});
  t.add_row_text({"P", kpr::format_double(s.nP())});
  t.add_row_text({"S", kpr::format_double(s.nS())});
  t.write(o.out);
  std::cout << t.to_string();
  return kExitOk;
}

int cmd_pde(const Options& o, int which) {
  kpr::PdeParams p;
  p.beta = o.beta;
  p.delta_loss = o.loss;
  p.alpha = o.params.alpha;
  p.energy_E = o.params.energy_E;
  p.Delta = o.params.delta;
  p.L = o.L;
  p.grid = o.grid;
  const kpr::PdeField f = which == 1 ? kpr::solve_pde1(p) : kpr::solve_pde2(p);
  const kpr::ExponentFit fit = kpr::fit_exponent(f);
  kpr::CsvTable t({"x", "f"});
  for (std::size_t i = 0; i < f.x.size(); ++i) t.add_row({f.x[i], f.f[i]});
  t.write(o.out);
  maybe_svg(o, f.x, {f.f}, which == 1 ? "transport limit 1" : "transport limit 2");
  std::cout << "tau_final=" << kpr::format_double(f.tau_final)
            << " slope=" << kpr::format_double(fit.slope)
            << " stderr=" << kpr::format_double(fit.stderr_) << "\n";
  return kExitOk;
}

int cmd_variant(const Options& o) {
  kpr::VariantSpec spec;
  if (o.kind == "detachment")
    spec.kind = kpr::VariantKind::detachment;
  else if (o.kind == "attachment")
    spec.kind = kpr::VariantKind::attachment;
  else if (o.kind == "dephosphorylation")
    spec.kind = kpr::VariantKind::dephosphorylation;
  else if (o.kind == "delta_infty")
    spec.kind = kpr::VariantKind::delta_infty;
  else
    throw kpr::config_error("unknown variant kind: " + o.kind);
  spec.params = finalize_params(o);
  spec.gamma = o.gamma;
  spec.K = o.K;
  const std::vector<double> prof = kpr::variant_steady_profile(spec);
  kpr::CsvTable t({"k", "n_k"});
  std::vector<double> ks;
  for (std::size_t k = 0; k < prof.size(); ++k) {
    ks.push_back(static_cast<double>(k));
    t.add_row({static_cast<double>(k), prof[k]});
  }
  t.write(o.out);
  maybe_svg(o, ks, {prof}, "variant stationary profile");
  const kpr::VariantExponent ve = kpr::variant_exponent(spec);
  std::cout << "lambda_fit=" << kpr::format_double(ve.lambda_fit)
            << " stderr=" << kpr::format_double(ve.stderr_)
            << " sigma_sensitive=" << ve.sigma_sensitive << "\n";
  return kExitOk;
}

int cmd_mc(const Options& o) {
  const kpr::ModelParams p = finalize_params(o);
  const kpr::PresEstimate est = kpr::estimate_pres(p, o.trials, o.seed, o.workers);
  kpr::CsvTable t({"sigma", "p_hat", "stderr", "trials", "seed"});
  t.add_row_text({kpr::format_double(p.sigma), kpr::format_double(est.p_hat),
                  kpr::format_double(est.stderr_), std::to_string(est.trials),
                  std::to_string(o.seed)});
  t.write(o.out);
  std::cout << t.to_string();
  return kExitOk;
}

int cmd_verify(const Options& o) {
  const std::vector<kpr::AcceptanceCheck> checks = kpr::run_acceptance(o.workers);
  kpr::CsvTable t({"id", "name", "pass", "detail", "seconds"});
  bool all = true;
  for (const kpr::AcceptanceCheck& c : checks) {
    std::cout << kpr::format_check(c) << "\n";
    std::string detail = c.detail;
    for (char& ch : detail)
      if (ch == ',') ch = ';';
    t.add_row_text({std::to_string(c.id), c.name, c.pass ? "1" : "0", detail,
                    kpr::format_double(c.seconds)});
    all = all && c.pass;
  }
  t.write(o.out);
  std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
  return all ? kExitOk : kExitVerify;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_path, "key=value configuration file");
  app->add_option("--out", o.out, "output CSV path");
  app->add_option("--svg", o.svg, "optional SVG plot path");
  app->add_option("--workers", o.workers, "worker thread count (0 = hardware)");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("-N,--steps", o.params.N, "number of proofreading steps");
  app->add_option("--alpha", o.params.alpha, "internal rate scale");
  app->add_option("-E,--energy", o.params.energy_E, "detachment energy step");
  app->add_option("--delta", o.params.delta, "affinity (detailed-balance gap)");
  app->add_option("--sigma", o.params.sigma, "ligand binding energy");
  app->add_option("-b,--decay-rate", o.b, "degradation exponent (mu = e^{-bN})")
      ->each([&o](const std::string&) { o.has_b = true; });
  app->add_option("--mu", o.mu, "explicit degradation rate")
      ->each([&o](const std::string&) { o.has_mu = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinetic-proofreading ladder toolkit"};
  app.require_subcommand(1);

  Options o;
  struct Sub {
    CLI::App* app;
    int (*run)(const Options&);
  };
  std::vector<Sub> subs;

  const auto make = [&](const char* name, const char* desc, int (*run)(const Options&)) {
    CLI::App* s = app.add_subcommand(name, desc);
    add_common(s, o);
    subs.push_back({s, run});
    return s;
  };

  make("report", "closed-form constants and regime at one parameter point", cmd_report);
  make("pres", "exact response probability", cmd_pres);
  CLI::App* sweep = make("sweep", "response probability over a sigma grid", cmd_sweep);
  CLI::App* phase = make("phase", "critical affinity curve over sigma", cmd_phase);
  CLI::App* halfline = make("halfline", "half-line occupation profile at time t",
                            cmd_halfline);
  CLI::App* enlarged = make("enlarged", "detailed-balance-complete network state",
                            [](const Options& opt) { return cmd_enlarged(opt); });
  CLI::App* pde1 = make("pde1", "first transport limit (E fixed)",
                        [](const Options& opt) { return cmd_pde(opt, 1); });
  CLI::App* pde2 = make("pde2", "second transport limit (E ~ 1/N)",
                        [](const Options& opt) { return cmd_pde(opt, 2); });
  CLI::App* variant = make("variant", "rate-placement variant stationary profile",
                           cmd_variant);
  CLI::App* mc = make("mc", "Monte Carlo response-probability estimate", cmd_mc);
  make("verify", "run the full acceptance suite", cmd_verify);

  for (CLI::App* s : {sweep, phase}) {
    s->add_option("--sigma-min", o.sigma_min, "grid start");
    s->add_option("--sigma-max", o.sigma_max, "grid end");
    s->add_option("--points", o.points, "grid size");
  }
  halfline->add_option("-t,--time", o.t, "integration time");
  halfline->add_option("-K,--sites", o.K, "initial lattice truncation");
  enlarged->add_option("-t,--time", o.t, "integration time");
  enlarged->add_option("--ET", o.ET, "ATP energy");
  enlarged->add_option("--ED", o.ED, "ADP energy");
  enlarged->add_option("--EP", o.EP, "phosphate energy");
  for (CLI::App* s : {pde1, pde2}) {
    s->add_option("--beta", o.beta, "rescaled detachment rate");
    s->add_option("--loss", o.loss, "rescaled degradation rate");
    s->add_option("-L,--length", o.L, "domain length");
    s->add_option("--grid", o.grid, "cell count");
  }
  variant->add_option("--kind", o.kind,
                      "detachment|attachment|dephosphorylation|delta_infty");
  variant->add_option("--gamma", o.gamma, "one-directional stepping rate");
  variant->add_option("-K,--sites", o.K, "lattice truncation");
  mc->add_option("--trials", o.trials, "trial count");

  try {
    app.parse(argc, argv);
    if (!o.config_path.empty()) {
      // Config supplies defaults; a second pass lets explicit command-line
      // flags override them.
      apply_config(o);
      app.clear();
      app.parse(argc, argv);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  } catch (const kpr::error& e) {
    std::cerr << "error: kind=config message=\"" << e.what() << "\"\n";
    return kExitConfig;
  }

  try {
    for (const auto& s : subs)
      if (s.app->parsed()) return s.run(o);
    std::cerr << "error: no subcommand\n";
    return kExitConfig;
  } catch (const kpr::config_error& e) {
    std::cerr << "error: kind=config message=\"" << e.what() << "\"\n";
    return kExitConfig;
  } catch (const kpr::parameter_error& e) {
    std::cerr << "error: kind=config message=\"" << e.what() << "\"\n";
    return kExitConfig;
  } catch (const kpr::error& e) {
    std::cerr << "error: kind=numeric message=\"" << e.what() << "\"\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: kind=internal message=\"" << e.what() << "\"\n";
    return kExitNumeric;
  }
}
