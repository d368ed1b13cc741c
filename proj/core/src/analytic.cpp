#include "kpr/analytic.hpp"

#include <cmath>

#include "kpr/errors.hpp"

namespace kpr {

namespace {

constexpr double kRegimeTol = 1e-12;

double omega0(const ModelParams& p, double sigma) {
  return std::exp(sigma) + p.alpha * (std::exp(p.energy_E) + std::exp(p.delta));
}

double resolve_b(const ModelParams& p) {
  if (p.b) return *p.b;
  if (p.mu_explicit) return -std::log(*p.mu_explicit) / static_cast<double>(p.N);
  throw parameter_error("asymptotic predictor needs a degradation exponent b");
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
  }
  return "?";
}

double delta_c(const ModelParams& p) {
  return std::log1p(std::exp(p.sigma) / (p.alpha * std::expm1(p.energy_E)));
}

double phi_root(const ModelParams& p, double sigma) {
  const double om = omega0(p, sigma);
  const double prod = std::exp(p.delta + p.energy_E);  // phi * phi2
  const double disc = om * om - 4.0 * p.alpha * p.alpha * prod;
  const double phi2 = (om + std::sqrt(std::max(disc, 0.0))) / (2.0 * p.alpha);
  return prod / phi2;
}

AnalyticReport compute_report(const ModelParams& p) {
  p.validate();
  AnalyticReport r;
  r.delta_c = delta_c(p);
  r.phi = phi_root(p, p.sigma);
  r.phi2 = std::exp(p.delta + p.energy_E) / r.phi;
  r.psi = p.energy_E - std::log(r.phi);

  const double es = std::exp(p.sigma);
  r.nbar_S = es / (es + std::exp(p.energy_E) / std::expm1(p.energy_E));

  const double gap = p.delta - r.delta_c;
  if (std::abs(gap) <= kRegimeTol) {
    r.regime = Regime::critical;
    r.lambda = p.energy_E;
    r.constants_available = false;
    return r;
  }
  r.regime = gap < 0.0 ? Regime::subcritical : Regime::supercritical;
  r.lambda = r.regime == Regime::subcritical ? p.energy_E : r.psi;

  const double alpha = p.alpha;
  const double ed = std::exp(p.delta), eE = std::exp(p.energy_E);
  r.A0 = 1.0 / (es - alpha * std::expm1(p.delta) * std::expm1(p.energy_E));
  const double denom = es + alpha * ed - alpha * r.phi;
  r.B0 = -alpha * eE * std::expm1(p.delta) / denom;
  r.G = (1.0 + alpha * r.A0 * (1.0 - r.phi)) / denom;
  r.C1 = 1.0 / (alpha * ed * r.A0 * r.nbar_S *
                (1.0 - r.phi * std::exp(-(p.energy_E + p.delta))));
  const double GmA = r.G - r.A0;
  r.C2 = 1.0 / (r.nbar_S * alpha * ed * GmA *
                (1.0 - r.phi * r.phi * std::exp(-(p.delta + p.energy_E))));
  r.C2_positive = r.C2 > 0.0;
  r.constants_available = true;
  return r;
}

double sigma_c(double b, const ModelParams& p) {
  const double E = p.energy_E;
  const double lo_bound = std::max(E - p.delta, 0.0);
  if (!(b < E))
    throw no_root_error("sigma_c: requires b < E");
  if (!(b > lo_bound))
    throw no_root_error("sigma_c: requires b > max{E - delta, 0}");

  // lambda(sigma) = E - log(phi(sigma)) is strictly increasing in sigma.
  auto h = [&](double s) { return (E - std::log(phi_root(p, s))) - b; };
  double lo = -50.0, hi = 50.0;
  for (int i = 0; i < 60 && h(lo) > 0.0; ++i) lo *= 2.0;
  for (int i = 0; i < 60 && h(hi) < 0.0; ++i) hi *= 2.0;
  if (h(lo) > 0.0 || h(hi) < 0.0)
    throw no_root_error("sigma_c: bisection bracket could not be established");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-14 * std::max(1.0, std::abs(mid))) break;
  }
  const double s = 0.5 * (lo + hi);
  if (std::abs(h(s)) > 1e-10)
    throw no_root_error("sigma_c: bisection did not converge");
  return s;
}

double asymptotic_log_odds(const ModelParams& p) {
  const AnalyticReport r = compute_report(p);
  if (r.regime == Regime::critical)
    throw unsupported_regime_error(
        "asymptotic_pres: critical regime has no (1+Ce^{N(lambda-b)}) form");
  const double b = resolve_b(p);
  const double C = r.regime == Regime::subcritical ? r.C1 : r.C2;
  if (!(C > 0.0))
    throw unsupported_regime_error("asymptotic_pres: response constant not positive");
  return static_cast<double>(p.N) * (r.lambda - b) + std::log(C);
}

double asymptotic_pres(const ModelParams& p) {
  const double L = asymptotic_log_odds(p);
  // 1/(1+e^L) without overflow on either side.
  if (L > 0.0) {
    const double e = std::exp(-L);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(L));
}

LaplaceKernel kernel_at(std::complex<double> z, const ModelParams& p) {
  p.validate();
  using cd = std::complex<double>;
  const double alpha = p.alpha;
  const double E = p.energy_E, D = p.delta;
  const double es = std::exp(p.sigma);
  const double eE = std::exp(E), ed = std::exp(D);

  LaplaceKernel k;
  k.z = z;
  k.z_S = -(1.0 / (1.0 - std::exp(-E)) + es);
  k.z_A = alpha * std::expm1(E) * std::expm1(D) - es;
  k.z1 = -es - alpha * (eE + ed);
  k.z2 = -es - alpha * std::pow(std::exp(E / 2.0) - std::exp(D / 2.0), 2);

  if (std::abs(z.imag()) < 1e-10 && z.real() >= k.z1 - 1e-10 &&
      z.real() <= k.z2 + 1e-10)
    throw branch_cut_error("kernel_at: z on the branch segment [z1, z2]");

  k.Omega = z + es + alpha * ed + alpha * eE;
  k.A = 1.0 / (z - k.z_A);
  k.nS_hat = (z + es) / (z * (z - k.z_S));

  const cd prod = cd(std::exp(D - E), 0.0);  // theta1 * theta2
  const cd disc = k.Omega * k.Omega - cd(4.0 * alpha * alpha * std::exp(E + D), 0.0);
  cd s = std::sqrt(disc);
  // Keep theta1 the small-modulus root: the analytic continuation of the
  // principal-branch formula off the branch segment.
  if (std::real(std::conj(k.Omega) * s) < 0.0) s = -s;
  k.theta2 = (k.Omega + s) / (2.0 * alpha * eE);
  k.theta1 = prod / k.theta2;
  k.varphi = eE * k.theta1;
  k.B = -alpha * eE * std::expm1(D) / (z + es + alpha * ed - alpha * k.varphi);
  return k;
}

ThetaCase classify_theta_regime(double theta, const ModelParams& p) {
  const AnalyticReport r = compute_report(p);
  if (r.regime != Regime::supercritical)
    throw unsupported_regime_error("classify_theta_regime: requires supercritical parameters");
  if (theta < 0.0) throw parameter_error("classify_theta_regime: theta must be >= 0");
  const SaddleData s = saddle_data(p);
  const double wt = SaddleData::w_theta(theta);
  const double tol = 1e-12;
  if (std::abs(wt - s.wS) <= tol || std::abs(wt - s.w0) <= tol ||
      std::abs(s.w0 - s.wS) <= tol)
    throw ambiguous_regime_error("classify_theta_regime: tie between w0, wS, w_theta");
  if (s.w0 > wt && wt > s.wS) return ThetaCase::case1;
  if (s.w0 > s.wS && s.wS > wt) return ThetaCase::case2;
  if (wt > s.w0 && s.w0 > s.wS) return ThetaCase::case3;
  throw ambiguous_regime_error("classify_theta_regime: ordering outside the three cases");
}

double SaddleData::tau(double t) const {
  return 2.0 * alpha * std::exp((energy_E + delta) / 2.0) * t;
}

double SaddleData::t_of_tau(double tau_) const {
  return tau_ / (2.0 * alpha * std::exp((energy_E + delta) / 2.0));
}

double SaddleData::w_theta(double theta) { return std::sqrt(1.0 + theta * theta); }

double SaddleData::Phi(double w, double theta) {
  return w - theta * std::log(w + std::sqrt(w * w - 1.0));
}

double SaddleData::PsiM(double theta) const {
  return Phi(w_theta(theta), theta) + theta * (energy_E + delta) / 2.0;
}

SaddleData saddle_data(const ModelParams& p) {
  p.validate();
  SaddleData s;
  s.alpha = p.alpha;
  s.delta = p.delta;
  s.energy_E = p.energy_E;
  const double E = p.energy_E, D = p.delta;
  const double ch = std::cosh((E - D) / 2.0);
  const double scale = std::exp(-(E + D) / 2.0) / (2.0 * p.alpha);
  s.w0 = std::exp(p.sigma) * scale + ch;
  s.wS = -scale / (1.0 - std::exp(-E)) + ch;
  s.wA = std::cosh((E + D) / 2.0);
  s.theta_M = std::sinh((E + D) / 2.0);
  return s;
}

}  // namespace kpr
