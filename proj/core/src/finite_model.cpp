#include "kpr/finite_model.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <thread>

#include "kpr/errors.hpp"

namespace kpr {

namespace {

// Thomas solve of the shifted tridiagonal C block: (s - diag[k]) x_k
// - sub x_{k-1} - super x_{k+1} = rhs_k.
std::vector<double> thomas(const Generator& g, double s, const std::vector<double>& rhs) {
  const int n = static_cast<int>(g.diag.size());
  std::vector<double> c(n), d(n);
  double den = s - g.diag[0];
  c[0] = -g.super / den;
  d[0] = rhs[0] / den;
  for (int i = 1; i < n; ++i) {
    den = (s - g.diag[i]) - (-g.sub) * c[i - 1];
    if (den == 0.0) throw degenerate_parameter_error("thomas: zero pivot");
    c[i] = -g.super / den;
    d[i] = (rhs[i] + g.sub * d[i - 1]) / den;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

// y = (s*I - A) x with the structured generator.
std::vector<double> apply_shifted(const Generator& g, double s,
                                  const std::vector<double>& x) {
  const int n = g.N + 1;
  std::vector<double> y(n + 1);
  double sum_c = 0.0;
  for (int k = 0; k < n; ++k) sum_c += x[1 + k];
  y[0] = (s - g.diag_S) * x[0] - g.detach * sum_c;
  for (int k = 0; k < n; ++k) {
    double v = (s - g.diag[k]) * x[1 + k] - g.attach[k] * x[0];
    if (k > 0) v -= g.sub * x[k];
    if (k + 1 < n) v -= g.super * x[2 + k];
    y[1 + k] = v;
  }
  return y;
}

std::vector<double> solve_shifted_once(const Generator& g, double s,
                                       const std::vector<double>& rhs) {
  const int n = g.N + 1;
  std::vector<double> rhs_c(rhs.begin() + 1, rhs.end());
  const std::vector<double> u = thomas(g, s, rhs_c);
  const std::vector<double> v = thomas(g, s, g.attach);
  const double su = std::accumulate(u.begin(), u.end(), 0.0);
  const double sv = std::accumulate(v.begin(), v.end(), 0.0);
  const double den = (s - g.diag_S) - g.detach * sv;
  if (den == 0.0) throw degenerate_parameter_error("solve_shifted: singular arrowhead pivot");
  const double xs = (rhs[0] + g.detach * su) / den;
  std::vector<double> x(n + 1);
  x[0] = xs;
  for (int k = 0; k < n; ++k) x[1 + k] = u[k] + xs * v[k];
  return x;
}

double geometric_sum(double q, int N) {
  // sum_{k=0}^{N} q^k
  if (std::abs(q - 1.0) < 1e-12) return static_cast<double>(N + 1);
  return std::expm1(static_cast<double>(N + 1) * std::log(q)) / (q - 1.0);
}

}  // namespace

double StateVector::M() const {
  return nS + std::accumulate(n.begin(), n.end(), 0.0);
}

Generator build_generator(const ModelParams& p) {
  p.validate();
  if (!(p.mu() > 0.0))
    throw degenerate_parameter_error("build_generator: mu must be > 0");
  Generator g;
  g.N = p.N;
  g.mu = p.mu();
  const double E = p.energy_E;
  const double es = std::exp(p.sigma);
  const double phos = p.alpha * std::exp(p.delta);
  const double dephos = p.alpha * std::exp(E);

  g.sub = phos;
  g.super = dephos;
  g.detach = es;
  g.attach.resize(static_cast<std::size_t>(p.N) + 1);
  for (int k = 0; k <= p.N; ++k) g.attach[static_cast<std::size_t>(k)] = std::exp(-k * E);

  const double S_N = -std::expm1(-p.N * E) / std::expm1(E);
  // S_N = (1 - e^{-NE})/(e^E - 1); total attach loss is 1 + S_N.
  g.diag_S = -(1.0 + S_N + g.mu);

  g.diag.resize(static_cast<std::size_t>(p.N) + 1);
  g.diag[0] = -(es + phos + g.mu);
  for (int k = 1; k <= p.N; ++k) g.diag[static_cast<std::size_t>(k)] = -(es + dephos + phos + g.mu);
  return g;
}

Eigen::MatrixXd Generator::dense() const {
  const int n = N + 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  A(0, 0) = diag_S;
  for (int k = 0; k <= N; ++k) {
    A(0, 1 + k) = detach;
    A(1 + k, 0) = attach[static_cast<std::size_t>(k)];
    A(1 + k, 1 + k) = diag[static_cast<std::size_t>(k)];
    if (k > 0) A(1 + k, k) = sub;
    if (k < N) A(1 + k, 2 + k) = super;
  }
  return A;
}

std::vector<double> solve_shifted(const Generator& g, double s,
                                  const std::vector<double>& rhs) {
  std::vector<double> x = solve_shifted_once(g, s, rhs);
  // Entries span alpha e^delta down to mu = e^{-bN}; one refinement pass
  // when the residual is above the target.
  const std::vector<double> Ax = apply_shifted(g, s, x);
  double rnorm = 0.0, bnorm = 0.0;
  std::vector<double> r(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    r[i] = rhs[i] - Ax[i];
    rnorm = std::max(rnorm, std::abs(r[i]));
    bnorm = std::max(bnorm, std::abs(rhs[i]));
  }
  if (rnorm > 1e-10 * std::max(bnorm, 1e-300)) {
    const std::vector<double> dx = solve_shifted_once(g, s, r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  }
  return x;
}

std::vector<double> integrated_occupation(const ModelParams& p) {
  const Generator g = build_generator(p);
  std::vector<double> rhs(static_cast<std::size_t>(p.N) + 2, 0.0);
  rhs[0] = 1.0;
  return solve_shifted(g, 0.0, rhs);  // (-A) x = n(0)
}

double pres_exact(const ModelParams& p) {
  const std::vector<double> x = integrated_occupation(p);
  return p.alpha * std::exp(p.delta) * x.back();
}

double pres_exact_dense(const ModelParams& p) {
  const Generator g = build_generator(p);
  const int n = p.N + 2;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(0) = 1.0;
  const Eigen::MatrixXd M = -g.dense();
  const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(M).solve(rhs);
  return p.alpha * std::exp(p.delta) * x(n - 1);
}

double log_odds_exact(const ModelParams& p) {
  const std::vector<double> x = integrated_occupation(p);
  const double xsum = std::accumulate(x.begin(), x.end(), 0.0);
  // 1 - p_res = mu * sum(x) by the total-probability identity.
  const double log_num = std::log(p.mu()) + std::log(xsum);
  const double log_den = std::log(p.alpha) + p.delta + std::log(x.back());
  return (log_num - log_den) / static_cast<double>(p.N);
}

std::vector<StateVector> integrate_trajectory(const ModelParams& p,
                                              const std::vector<double>& t_grid) {
  StateVector init;
  init.nS = 1.0;
  init.n.assign(static_cast<std::size_t>(p.N) + 1, 0.0);
  return integrate_trajectory(p, t_grid, init);
}

std::vector<StateVector> integrate_trajectory(const ModelParams& p,
                                              const std::vector<double>& t_grid,
                                              const StateVector& init) {
  p.validate();
  if (static_cast<int>(init.n.size()) != p.N + 1)
    throw parameter_error("integrate_trajectory: initial state size mismatch");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw parameter_error("integrate_trajectory: t_grid must be increasing");
  const Generator g = build_generator(p);
  const int n = p.N + 2;

  std::vector<StateVector> out;
  auto push = [&](const std::vector<double>& x) {
    StateVector s;
    s.nS = x[0];
    s.n.assign(x.begin() + 1, x.end());
    out.push_back(std::move(s));
  };

  if (p.N <= 12) {
    const Eigen::MatrixXd A = g.dense();
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    x0(0) = init.nS;
    for (int k = 0; k <= p.N; ++k) x0(1 + k) = init.n[static_cast<std::size_t>(k)];
    for (double t : t_grid) {
      const Eigen::VectorXd xt = (A * t).exp() * x0;
      std::vector<double> x(xt.data(), xt.data() + n);
      push(x);
    }
    return out;
  }

  // TR-BDF2, L-stable; per-interval step count doubled until two sweeps
  // agree in the sup norm.
  const double gamma = 2.0 - std::sqrt(2.0);
  auto trbdf2_span = [&](std::vector<double> x, double t0, double t1, int steps) {
    const double h = (t1 - t0) / steps;
    if (!(h > 0.0)) return x;
    const double s_tr = 2.0 / (gamma * h);
    const double c_bdf = (1.0 - gamma) / (2.0 - gamma) * h;
    const double s_bdf = 1.0 / c_bdf;
    for (int i = 0; i < steps; ++i) {
      const std::vector<double> Ax = apply_shifted(g, 0.0, x);  // -A x
      std::vector<double> rhs(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) rhs[j] = s_tr * x[j] - Ax[j];
      const std::vector<double> xstar = solve_shifted(g, s_tr, rhs);
      const double a = 1.0 / (gamma * (2.0 - gamma));
      const double b = (1.0 - gamma) * (1.0 - gamma) / (gamma * (2.0 - gamma));
      for (std::size_t j = 0; j < x.size(); ++j)
        rhs[j] = s_bdf * (a * xstar[j] - b * x[j]);
      x = solve_shifted(g, s_bdf, rhs);
    }
    return x;
  };

  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  x[0] = init.nS;
  for (int k = 0; k <= p.N; ++k) x[static_cast<std::size_t>(1 + k)] = init.n[static_cast<std::size_t>(k)];
  double t_prev = 0.0;
  for (double t : t_grid) {
    if (t == 0.0) {
      push(x);
      continue;
    }
    int steps = std::max(8, static_cast<int>((t - t_prev) * 4.0));
    std::vector<double> coarse = trbdf2_span(x, t_prev, t, steps);
    for (int it = 0;; ++it) {
      if (it > 14)
        throw stiffness_error("integrate_trajectory: step refinement did not converge");
      std::vector<double> fine = trbdf2_span(x, t_prev, t, steps * 2);
      double diff = 0.0, scale = 0.0;
      for (std::size_t j = 0; j < fine.size(); ++j) {
        diff = std::max(diff, std::abs(fine[j] - coarse[j]));
        scale = std::max(scale, std::abs(fine[j]));
      }
      coarse = std::move(fine);
      steps *= 2;
      if (diff <= 1e-9 * std::max(scale, 1e-12)) break;
    }
    x = coarse;
    push(x);
    t_prev = t;
  }
  return out;
}

SweepResult sweep_sigma(const ModelParams& p, const std::vector<double>& sigma_grid,
                        int workers) {
  if (sigma_grid.empty()) throw parameter_error("sweep_sigma: empty grid");
  SweepResult res;
  res.sigma_grid = sigma_grid;
  res.params = p;
  const std::size_t n = sigma_grid.size();
  res.pres.assign(n, 0.0);
  res.log_odds.assign(n, 0.0);
  res.point_errors.assign(n, "");

  if (workers <= 0)
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, static_cast<int>(n));

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        const ModelParams q = p.with_sigma(sigma_grid[i]);
        res.pres[i] = pres_exact(q);
        res.log_odds[i] = log_odds_exact(q);
      } catch (const error& e) {
        res.point_errors[i] = e.what();
      }
    }
  };
  std::vector<std::future<void>> futs;
  const std::size_t chunk = (n + static_cast<std::size_t>(workers) - 1) / workers;
  for (std::size_t b = 0; b < n; b += chunk)
    futs.push_back(std::async(std::launch::async, work, b, std::min(n, b + chunk)));
  for (auto& f : futs) f.get();
  return res;
}

double ClosedFormStationary::n_hat(int k) const {
  const double t2 = G2 * std::exp((k - (N + 1)) * std::log(phi2));
  return std::exp(-k * energy_E) * (A_mu * nS_hat + F1 * std::pow(phi, k) + t2);
}

ClosedFormStationary closed_form_stationary(const ModelParams& p) {
  p.validate();
  const double mu = p.mu();
  if (!(mu > 0.0))
    throw degenerate_parameter_error("closed_form_stationary: mu must be > 0");
  const int N = p.N;
  const double E = p.energy_E, alpha = p.alpha;
  const double es = std::exp(p.sigma), ed = std::exp(p.delta), eE = std::exp(E);

  ClosedFormStationary cf;
  cf.N = N;
  cf.energy_E = E;
  // Roots of phi^2 - ((Omega0+mu)/alpha) phi + e^{delta+E} = 0; carrying mu
  // keeps the representation exact for the finite system.
  const double om = es + alpha * (eE + ed) + mu;
  const double prod = std::exp(p.delta + E);
  cf.phi2 = (om + std::sqrt(std::max(om * om - 4.0 * alpha * alpha * prod, 0.0))) /
            (2.0 * alpha);
  cf.phi = prod / cf.phi2;
  cf.A_mu = 1.0 / (es + mu - alpha * std::expm1(p.delta) * std::expm1(E));

  const double phiN1 = std::pow(cf.phi, N + 1);
  const double inv_phi2N1 = std::exp(-(N + 1) * std::log(cf.phi2));
  const double d0 = es + alpha * ed + mu;
  const double S_N = -std::expm1(-N * E) / std::expm1(E);

  // Unknowns (nS, F1, G2/sG) with G2 = F2 phi2^{N+1}:
  //   absorbing closure, the rung-0 equation, and the S equation.
  // Above the critical affinity the closure forces G2 ~ -F1 phi^{N+1}, so the
  // growing-mode unknown is rescaled by sG = phi^{N+1} (and the closure row
  // normalised by the same factor) to keep the system balanced.
  const double sG = cf.phi > 1.0 ? phiN1 : 1.0;
  Eigen::Matrix3d M;
  Eigen::Vector3d rhs;
  M(0, 0) = cf.A_mu / sG;
  M(0, 1) = phiN1 / sG;
  M(0, 2) = 1.0;
  rhs(0) = 0.0;

  M(1, 0) = (d0 - alpha) * cf.A_mu - 1.0;
  M(1, 1) = d0 - alpha * cf.phi;
  M(1, 2) = (d0 - alpha * cf.phi2) * inv_phi2N1 * sG;
  rhs(1) = 0.0;

  const double g_A = geometric_sum(std::exp(-E), N);
  const double g_F1 = geometric_sum(cf.phi * std::exp(-E), N);
  const double q2 = cf.phi2 * std::exp(-E);
  const double g_G2 =
      (std::exp(-(N + 1) * E) * std::exp((N + 1) * std::log(cf.phi2)) - 1.0) /
      (q2 - 1.0) * inv_phi2N1;  // F2 * sum (phi2 e^{-E})^k, scaled by G2
  M(2, 0) = (1.0 + S_N + mu) - es * cf.A_mu * g_A;
  M(2, 1) = -es * g_F1;
  M(2, 2) = -es * g_G2 * sG;
  rhs(2) = 1.0;

  const Eigen::Vector3d sol = Eigen::FullPivLU<Eigen::Matrix3d>(M).solve(rhs);
  cf.nS_hat = sol(0);
  cf.F1 = sol(1);
  cf.G2 = sol(2) * sG;
  cf.F2 = cf.G2 * inv_phi2N1;
  cf.pres = alpha * ed * cf.n_hat(N);
  return cf;
}

ProfileComparison quasi_steady_profile(const ModelParams& p) {
  const std::vector<double> x = integrated_occupation(p);
  ProfileComparison pc;
  pc.profile.resize(static_cast<std::size_t>(p.N) + 1);
  for (int k = 0; k <= p.N; ++k)
    pc.profile[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(1 + k)] / x[0];

  const AnalyticReport rep = compute_report(p);
  pc.regime = rep.regime;
  pc.k_lo = std::max(1, p.N / 5);
  pc.k_hi = std::max(pc.k_lo, 4 * p.N / 5);

  pc.prediction.resize(pc.profile.size());
  if (rep.regime == Regime::critical) {
    // Inner critical shape ~ k e^{-kE}; anchor the free prefactor mid-window.
    const int km = (pc.k_lo + pc.k_hi) / 2;
    const double c =
        pc.profile[static_cast<std::size_t>(km)] / (km * std::exp(-km * p.energy_E));
    for (int k = 0; k <= p.N; ++k)
      pc.prediction[static_cast<std::size_t>(k)] = c * k * std::exp(-k * p.energy_E);
  } else {
    const ClosedFormStationary cf = closed_form_stationary(p);
    for (int k = 0; k <= p.N; ++k)
      pc.prediction[static_cast<std::size_t>(k)] = cf.n_hat(k) / cf.nS_hat;
  }

  double dev = 0.0;
  for (int k = pc.k_lo; k <= pc.k_hi; ++k) {
    const double pr = pc.prediction[static_cast<std::size_t>(k)];
    if (pr != 0.0)
      dev = std::max(dev, std::abs(pc.profile[static_cast<std::size_t>(k)] / pr - 1.0));
  }
  pc.max_rel_dev = dev;
  return pc;
}

}  // namespace kpr
