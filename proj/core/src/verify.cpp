#include "kpr/verify.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "kpr/analytic.hpp"
#include "kpr/enlarged.hpp"
#include "kpr/finite_model.hpp"
#include "kpr/half_line.hpp"
#include "kpr/io.hpp"
#include "kpr/mc.hpp"
#include "kpr/network.hpp"
#include "kpr/pde_limits.hpp"
#include "kpr/variants.hpp"

namespace kpr {

namespace {

using rational = boost::multiprecision::cpp_rational;
using clock_type = std::chrono::steady_clock;

std::string fmt(double v) { return format_double(v); }

/// Exact response probability for N=1 by Cramer's rule over the rationals;
/// the double-precision rates are treated as exact rational inputs.
double pres_rational_n1(const ModelParams& p) {
  const rational e_sigma(std::exp(p.sigma));
  const rational e_mE(std::exp(-p.energy_E));
  const rational phos(p.alpha * std::exp(p.delta));
  const rational dephos(p.alpha * std::exp(p.energy_E));
  const rational mu(p.mu());

  // B = -A with state order (S, C0, C1); solve B x = e_S.
  rational B[3][3];
  B[0][0] = rational(1) + e_mE + mu;
  B[0][1] = -e_sigma;
  B[0][2] = -e_sigma;
  B[1][0] = rational(-1);
  B[1][1] = e_sigma + phos + mu;
  B[1][2] = -dephos;
  B[2][0] = -e_mE;
  B[2][1] = -phos;
  B[2][2] = e_sigma + dephos + phos + mu;

  const auto det3 = [](const rational m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const rational det = det3(B);
  rational Bc[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Bc[i][j] = j == 2 ? (i == 0 ? rational(1) : rational(0)) : B[i][j];
  const rational x2 = det3(Bc) / det;
  return static_cast<double>(phos * x2);
}

AcceptanceCheck check_figure2() {
  AcceptanceCheck c{1, "response curves: flat at small affinity, sigmoidal at large", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    ModelParams p;
    p.N = 20;
    p.alpha = 1.0;
    p.energy_E = std::log(3.0);
    p.b = std::log(2.0);

    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(-2.0 + 0.1 * i);

    p.delta = 0.1;
    double max_low = 0.0;
    for (double s : grid) max_low = std::max(max_low, pres_exact(p.with_sigma(s)));

    p.delta = 2.0;
    std::vector<double> pres;
    for (double s : grid) pres.push_back(pres_exact(p.with_sigma(s)));
    double pmax = 0.0, pmin = 1.0, cross = std::nan("");
    for (std::size_t i = 0; i < pres.size(); ++i) {
      pmax = std::max(pmax, pres[i]);
      pmin = std::min(pmin, pres[i]);
      if (i > 0 && (pres[i - 1] - 0.5) * (pres[i] - 0.5) <= 0.0 && std::isnan(cross))
        cross = grid[i - 1] + 0.1 * (pres[i - 1] - 0.5) / (pres[i - 1] - pres[i]);
    }
    c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    c.pass = max_low < 0.05 && !std::isnan(cross) && std::abs(cross - 1.773) <= 0.15 &&
             pmax > 0.9 && pmin < 0.1 && c.seconds < 1.0;
    d << "max_pres(delta=0.1)=" << fmt(max_low) << " cross=" << fmt(cross)
      << " span=[" << fmt(pmin) << "," << fmt(pmax) << "]";
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  if (c.seconds == 0.0)
    c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_phase_boundary() {
  AcceptanceCheck c{2, "critical affinity curve increasing with known anchor", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    ModelParams p;
    p.alpha = 1.0;
    p.energy_E = std::log(2.0);
    bool increasing = true;
    double prev = -1e300;
    for (int i = 0; i <= 60; ++i) {
      const double dc = delta_c(p.with_sigma(-3.0 + 0.1 * i));
      if (!(dc > prev)) increasing = false;
      prev = dc;
    }
    const double anchor = delta_c(p.with_sigma(0.0));
    c.pass = increasing && std::abs(anchor - std::log(2.0)) <= 1e-12;
    d << "increasing=" << increasing << " delta_c(0)-log2=" << fmt(anchor - std::log(2.0));
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_log_odds_convergence() {
  AcceptanceCheck c{3, "log-odds rate converges to lambda - b", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    // Two supercritical points straddling sigma_c, one subcritical point.
    ModelParams sup;
    sup.alpha = 1.0;
    sup.energy_E = std::log(3.0);
    sup.delta = 3.0;
    sup.b = 0.3;
    const double sc = sigma_c(0.3, sup);

    ModelParams sub;
    sub.alpha = 1.0;
    sub.energy_E = std::log(3.0);
    sub.delta = 0.1;
    sub.b = std::log(2.0);
    sub.sigma = 0.0;

    bool all = true;
    const std::vector<ModelParams> pts = {sup.with_sigma(sc + 1.0),
                                          sup.with_sigma(sc - 1.0), sub};
    for (const ModelParams& base : pts) {
      const AnalyticReport rep = compute_report(base);
      const double target = rep.lambda - *base.b;
      ModelParams q = base;
      q.N = 20;
      const double g20 = std::abs(log_odds_exact(q) - target);
      q.N = 40;
      const double g40 = std::abs(log_odds_exact(q) - target);
      const double factor = g40 / g20;
      const bool ok = factor >= 0.3 && factor <= 0.8 && g40 <= 0.1;
      all = all && ok;
      d << "[sigma=" << fmt(base.sigma) << " " << to_string(rep.regime)
        << " gap20=" << fmt(g20) << " gap40=" << fmt(g40) << " factor=" << fmt(factor)
        << (ok ? "" : " FAIL") << "] ";
    }
    c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    c.pass = all && c.seconds < 1.0;
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  if (c.seconds == 0.0)
    c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_oracles(int workers) {
  AcceptanceCheck c{4, "exact solve vs rational and Monte Carlo oracles", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    ModelParams p1;
    p1.N = 1;
    p1.alpha = 1.0;
    p1.energy_E = std::log(3.0);
    p1.delta = 2.0;
    p1.sigma = 0.3;
    p1.b = 0.4;
    const double p_rat = pres_rational_n1(p1);
    const double p_num = pres_exact(p1);
    const double rat_gap = std::abs(p_num - p_rat) / p_rat;

    ModelParams p8;
    p8.N = 8;
    p8.alpha = 1.0;
    p8.energy_E = std::log(3.0);
    p8.delta = 2.0;
    p8.sigma = 0.0;
    p8.b = 0.3;
    const double exact8 = pres_exact(p8);
    const PresEstimate est = estimate_pres(p8, 1000000, 20260824, workers);
    const double mc_gap = std::abs(est.p_hat - exact8);

    c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    c.pass = rat_gap <= 1e-14 && mc_gap <= 3.0 * est.stderr_ && c.seconds < 60.0;
    d << "rational_rel_gap=" << fmt(rat_gap) << " mc_gap=" << fmt(mc_gap)
      << " 3stderr=" << fmt(3.0 * est.stderr_) << " p_hat=" << fmt(est.p_hat)
      << " exact=" << fmt(exact8);
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  if (c.seconds == 0.0)
    c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_total_probability() {
  AcceptanceCheck c{5, "response + degradation probabilities sum to one", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      ModelParams p;
      p.N = 1 + static_cast<int>(U(rng) * 30.0);
      p.alpha = 0.5 + 1.5 * U(rng);
      p.energy_E = 0.2 + 1.8 * U(rng);
      p.delta = 3.0 * U(rng);
      p.sigma = -2.0 + 4.0 * U(rng);
      p.b = 0.05 + 0.45 * U(rng);
      const std::vector<double> x = integrated_occupation(p);
      double total = 0.0;
      for (double v : x) total += v;
      const double ident =
          p.alpha * std::exp(p.delta) * x.back() + p.mu() * total;
      worst = std::max(worst, std::abs(ident - 1.0));
    }
    c.pass = worst <= 1e-10;
    d << "max_identity_defect=" << fmt(worst);
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_halfline_theorems() {
  AcceptanceCheck c{6, "half-line front asymptotics in all regimes", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    struct Case {
      const char* label;
      ModelParams p;
      double theta;
    };
    std::vector<Case> cases;
    {
      ModelParams p;  // subcritical
      p.alpha = 1.0;
      p.energy_E = std::log(3.0);
      p.delta = 0.1;
      p.sigma = 0.0;
      cases.push_back({"sub", p, 0.3});
    }
    {
      ModelParams p;  // critical line
      p.alpha = 1.0;
      p.energy_E = 2.0;
      p.sigma = -3.0;
      p.delta = delta_c(p);
      cases.push_back({"crit", p, 0.3});
    }
    {
      ModelParams p;  // supercritical, constant limit (w_theta < w_S)
      p.alpha = 1.0;
      p.energy_E = std::log(3.0);
      p.delta = 3.0;
      p.sigma = 0.0;
      cases.push_back({"sup-const", p, 0.5});
      // Zero-limit branch: w_theta must sit between w_S (1.388) and the image
      // of the origin w_0 (1.549); beyond w_0 the scaled ratio grows instead.
      cases.push_back({"sup-zero", p, 1.05});
    }
    const std::vector<double> taus = {40.0, 80.0, 160.0};
    bool all = true;
    for (const Case& cs : cases) {
      const TheoremTable tab = verify_theorem_5(cs.theta, taus, cs.p);
      bool mono = true;
      for (std::size_t i = 1; i < tab.rows.size(); ++i)
        if (!(tab.rows[i].gap < tab.rows[i - 1].gap)) mono = false;
      const double final_gap = tab.rows.back().gap;
      const double rel = tab.limit != 0.0
                             ? final_gap / std::abs(tab.limit)
                             : std::abs(tab.rows.back().ratio) /
                                   std::max(std::abs(tab.rows.front().ratio), 1e-300);
      const bool ok = mono && rel <= 0.10;
      all = all && ok;
      d << "[" << cs.label << " limit=" << fmt(tab.limit) << " final_rel=" << fmt(rel)
        << (mono ? "" : " not-monotone") << (ok ? "" : " FAIL") << "] ";
    }
    c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    c.pass = all && c.seconds < 120.0;
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  if (c.seconds == 0.0)
    c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_laplace_inversion() {
  AcceptanceCheck c{7, "Talbot inversion of the transform matches the lattice", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    ModelParams base;
    base.alpha = 1.0;
    base.energy_E = 1.0;
    base.sigma = 2.0;
    const double dc = delta_c(base);
    struct Case {
      const char* label;
      double delta;
    };
    const std::vector<Case> cases = {{"sub", 0.5}, {"crit", dc}, {"sup", 2.5}};
    const std::vector<int> ks = {0, 3, 7, 10};
    const std::vector<double> ts = {1.0, 5.0, 10.0};
    bool all = true;
    double worst = 0.0;
    for (const Case& cs : cases) {
      ModelParams p = base;
      p.delta = cs.delta;
      for (double t : ts) {
        const HalfLineRun run = integrate_halfline_auto(p, t, 80);
        for (int k : ks) {
          const double lattice = run.n[static_cast<std::size_t>(k)];
          const double inv = talbot_invert(k, t, p);
          const double rel = std::abs(inv - lattice) / std::max(std::abs(lattice), 1e-300);
          worst = std::max(worst, rel);
          if (rel > 1e-6) {
            all = false;
            d << "[" << cs.label << " k=" << k << " t=" << fmt(t) << " rel=" << fmt(rel)
              << " FAIL] ";
          }
        }
      }
    }
    c.pass = all;
    d << "worst_rel=" << fmt(worst);
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_enlarged_network() {
  AcceptanceCheck c{8, "completed network: equilibrium, conservation, fluxes", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    EnlargedParams p;
    p.base.N = 6;
    p.base.alpha = 1.0;
    p.base.energy_E = 0.8;
    p.base.sigma = 0.4;
    p.E_T = 1.0;
    p.E_D = 0.5;
    p.E_P = 0.3;
    p.validate();

    const EnlargedState eq = boltzmann_state(p);
    const std::vector<double> r = rhs_enlarged(eq, p);
    double rmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));

    // Conservation over a long stiff integration from a skewed state.
    EnlargedState s0 = eq;
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> U(0.5, 2.0);
    for (double& v : s0.v) v *= U(rng);
    const std::vector<double> m1 = conserved_m1(p.base.N);
    const std::vector<double> m2 = conserved_m2(p.base.N);
    const auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
      return s;
    };
    const double m1_0 = dot(m1, s0.v), m2_0 = dot(m2, s0.v);
    const EnlargedState s1 = integrate_enlarged(s0, p, 100.0);
    const double drift1 = std::abs(dot(m1, s1.v) - m1_0) / std::abs(m1_0);
    const double drift2 = std::abs(dot(m2, s1.v) - m2_0) / std::abs(m2_0);

    bool flux_ok = true;
    double worst_sum = 0.0, worst_p = 0.0;
    for (double delta : {0.5, 1.0, 2.0}) {
      const std::array<double, 3> J = external_fluxes(p, delta);
      worst_sum = std::max(worst_sum, std::abs(J[0] + J[1]));
      worst_p = std::max(worst_p, std::abs(J[2] - (1.0 - std::exp(delta))));
      if (!(J[0] > 0.0) || !(J[1] < 0.0)) flux_ok = false;
    }
    flux_ok = flux_ok && worst_sum <= 1e-12 && worst_p <= 1e-12;

    c.pass = rmax <= 1e-12 && drift1 <= 1e-9 && drift2 <= 1e-9 && flux_ok;
    d << "stationarity=" << fmt(rmax) << " drift=(" << fmt(drift1) << "," << fmt(drift2)
      << ") flux_sum=" << fmt(worst_sum) << " flux_P_gap=" << fmt(worst_p)
      << " signs=" << flux_ok;
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_pde_exponents() {
  AcceptanceCheck c{9, "transport-limit decay exponents with grid convergence", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    // First limit: boundary-fed advection; fitted slope vs -(beta+delta)/c.
    PdeParams p1;
    p1.beta = 1.5;
    p1.delta_loss = 0.0;
    p1.alpha = 1.0;
    p1.Delta = 2.0;
    p1.energy_E = 0.5;
    p1.L = 30.0;
    const double c1 = p1.alpha * (std::exp(p1.Delta) - std::exp(p1.energy_E));
    const double target1 = -(p1.beta + p1.delta_loss) / c1;
    p1.grid = 300;
    const double e1a = std::abs(fit_exponent(solve_pde1(p1)).slope - target1);
    p1.grid = 600;
    const double e1b = std::abs(fit_exponent(solve_pde1(p1)).slope - target1);
    const double rel1 = e1a / std::abs(target1);
    const double ratio1 = e1b / e1a;

    // Second limit: distributed source; fitted lambda vs beta/(alpha(e^D-1)).
    PdeParams p2;
    p2.beta = 0.5;
    p2.delta_loss = 0.0;
    p2.alpha = 1.0;
    p2.Delta = 1.5;
    p2.energy_E = 0.0;
    p2.L = 60.0;
    const double target2 = p2.beta / (p2.alpha * std::expm1(p2.Delta));
    p2.grid = 600;
    const double e2a = std::abs(-fit_exponent(solve_pde2(p2)).slope - target2);
    p2.grid = 1200;
    const double e2b = std::abs(-fit_exponent(solve_pde2(p2)).slope - target2);
    const double rel2 = e2a / target2;
    const double ratio2 = e2b / e2a;

    c.pass = rel1 <= 0.02 && rel2 <= 0.03 && ratio1 >= 0.35 && ratio1 <= 0.65 &&
             ratio2 >= 0.35 && ratio2 <= 0.65;
    d << "rel1=" << fmt(rel1) << " ratio1=" << fmt(ratio1) << " rel2=" << fmt(rel2)
      << " ratio2=" << fmt(ratio2);
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_variants() {
  AcceptanceCheck c{10, "rate-placement variants: exponents and sensitivity flip", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    // Attachment variant, supercritical: exponent = -log g(sigma).
    VariantSpec att;
    att.kind = VariantKind::attachment;
    att.params.alpha = 1.0;
    att.params.energy_E = 1.0;
    att.params.sigma = 0.0;
    att.params.delta = 2.0;
    att.K = 200;
    const double g_att = variant_g(att);
    const VariantExponent ve_att = variant_exponent(att);
    const double att_rel = std::abs(ve_att.lambda_fit - (-std::log(g_att))) /
                           std::abs(std::log(g_att));

    // Dephosphorylation variant: sensitivity flips across Delta_c.
    VariantSpec dep;
    dep.kind = VariantKind::dephosphorylation;
    dep.params.alpha = 1.0;
    dep.params.energy_E = 0.5;
    dep.params.sigma = std::log(0.25 * std::expm1(0.5));  // u = 1/4
    dep.K = 1000;
    dep.params.delta = 0.1;  // placeholder; Delta_c is sigma-only
    const double dc = *variant_delta_c(dep);
    dep.params.delta = dc - 0.2;
    const bool below = variant_exponent(dep).sigma_sensitive;
    dep.params.delta = dc + 0.2;
    const bool above = variant_exponent(dep).sigma_sensitive;

    // Detachment variant: flat once rescaled by the combined decay.
    VariantSpec det;
    det.kind = VariantKind::detachment;
    det.params.alpha = 1.0;
    det.params.energy_E = 0.5;
    det.params.sigma = 0.0;
    det.params.delta = 1.0;
    det.K = 100;
    const std::vector<double> prof = variant_steady_profile(det);
    double flat_lo = 1e300, flat_hi = 0.0;
    for (int k = det.K / 4; k <= 3 * det.K / 4; ++k) {
      const double v = prof[static_cast<std::size_t>(k)] *
                       std::exp(k * (det.params.energy_E + det.params.delta));
      flat_lo = std::min(flat_lo, v);
      flat_hi = std::max(flat_hi, v);
    }
    const double flatness = flat_hi / flat_lo - 1.0;

    // Large-affinity limit of the small root at fixed gamma = alpha e^Delta.
    const double gamma = 2.0, sig = 0.4, E = 0.5;
    ModelParams lim;
    lim.delta = 25.0;
    lim.alpha = gamma * std::exp(-25.0);
    lim.energy_E = E;
    lim.sigma = sig;
    const double phi_gap =
        std::abs(phi_root(lim, sig) - delta_infty_phi(sig, gamma, E));

    c.pass = att_rel <= 0.02 && !below && above && flatness <= 1e-3 && phi_gap <= 1e-6;
    d << "att_rel=" << fmt(att_rel) << " flip=(" << below << "->" << above
      << ") flatness=" << fmt(flatness) << " phi_gap=" << fmt(phi_gap);
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

AcceptanceCheck check_structure() {
  AcceptanceCheck c{11, "structural invariants of the network and roots", false, "", 0};
  const auto t0 = clock_type::now();
  std::ostringstream d;
  try {
    ModelParams p;
    p.N = 5;
    p.alpha = 1.3;
    p.energy_E = 1.0;
    p.sigma = 0.2;
    p.b = 0.4;

    p.delta = 0.0;
    const bool weg_eq = wegscheider_holds(build_ladder(p)).first;
    p.delta = 0.7;
    const bool weg_neq = wegscheider_holds(build_ladder(p)).first;

    // Root pairing at seeded complex points (right half-plane, off the cut).
    p.delta = 0.5;
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst_pair = 0.0, worst_mod = 0.0;
    const double target = std::exp(p.delta - p.energy_E);
    for (int i = 0; i < 1000; ++i) {
      const std::complex<double> z(0.01 + 4.0 * U(rng), -4.0 + 8.0 * U(rng));
      const LaplaceKernel ker = kernel_at(z, p);
      worst_pair = std::max(worst_pair, std::abs(ker.theta1 * ker.theta2 - target));
      worst_mod = std::max(worst_mod,
                           std::max(std::abs(ker.theta1) - 1.0, 1.0 - std::abs(ker.theta2)));
    }

    const AnalyticReport rep = compute_report(p);
    const double vieta = std::abs(rep.phi * rep.phi2 - std::exp(p.delta + p.energy_E));

    bool phi_dec = true;
    double prev = 1e300;
    for (int i = 0; i < 100; ++i) {
      const double phi = phi_root(p, -3.0 + 6.0 * i / 99.0);
      if (!(phi < prev)) phi_dec = false;
      prev = phi;
    }

    c.pass = weg_eq && !weg_neq && worst_pair <= 1e-10 && worst_mod <= 1e-12 &&
             vieta <= 1e-12 * std::exp(p.delta + p.energy_E) && phi_dec;
    d << "wegscheider=(" << weg_eq << "," << weg_neq << ") pair=" << fmt(worst_pair)
      << " mod_defect=" << fmt(worst_mod) << " vieta=" << fmt(vieta)
      << " phi_decreasing=" << phi_dec;
  } catch (const std::exception& e) {
    d << "exception: " << e.what();
  }
  c.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.detail = d.str();
  return c;
}

}  // namespace

std::vector<AcceptanceCheck> run_acceptance(int workers) {
  std::vector<AcceptanceCheck> out;
  out.push_back(check_figure2());
  out.push_back(check_phase_boundary());
  out.push_back(check_log_odds_convergence());
  out.push_back(check_oracles(workers));
  out.push_back(check_total_probability());
  out.push_back(check_halfline_theorems());
  out.push_back(check_laplace_inversion());
  out.push_back(check_enlarged_network());
  out.push_back(check_pde_exponents());
  out.push_back(check_variants());
  out.push_back(check_structure());
  return out;
}

std::string format_check(const AcceptanceCheck& c) {
  std::ostringstream out;
  out << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": "
      << c.detail << " (" << fmt(c.seconds) << " s)";
  return out.str();
}

}  // namespace kpr
