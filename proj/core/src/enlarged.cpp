#include "kpr/enlarged.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpr/errors.hpp"

namespace kpr {

namespace {

struct Rates {
  double K1, Km1, K2, Km2, K3;
  std::vector<double> Km3;  // e^{k(E_P - E)}

  Rates(const EnlargedParams& p) {
    const double E = p.base.energy_E;
    K1 = p.base.alpha * std::exp(p.E_T);
    Km1 = p.base.alpha * std::exp(E + p.E_D);
    K2 = std::exp(p.E_T);
    Km2 = std::exp(p.E_D + p.E_P);
    K3 = std::exp(p.base.sigma);
    Km3.resize(static_cast<std::size_t>(p.base.N) + 1);
    for (int k = 0; k <= p.base.N; ++k)
      Km3[static_cast<std::size_t>(k)] = std::exp(k * (p.E_P - E));
  }
};

std::vector<double> powers(double x, int N) {
  std::vector<double> p(static_cast<std::size_t>(N) + 1);
  p[0] = 1.0;
  for (int k = 1; k <= N; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * x;
  return p;
}

}  // namespace

void EnlargedParams::validate() const {
  base.validate();
  if (!std::isfinite(E_T) || !std::isfinite(E_D) || !std::isfinite(E_P))
    throw parameter_error("EnlargedParams: carrier energies must be finite");
}

std::vector<double> conserved_m1(int N) {
  std::vector<double> m(static_cast<std::size_t>(N) + 5, 0.0);
  for (int k = 0; k <= N; ++k) m[static_cast<std::size_t>(k)] = 1.0;
  m.back() = 1.0;  // n_S
  return m;
}

std::vector<double> conserved_m2(int N) {
  std::vector<double> m(static_cast<std::size_t>(N) + 5, 0.0);
  for (int k = 0; k <= N; ++k) m[static_cast<std::size_t>(k)] = static_cast<double>(k);
  m[static_cast<std::size_t>(N) + 1] = 2.0;  // ATP
  m[static_cast<std::size_t>(N) + 2] = 1.0;  // ADP
  m[static_cast<std::size_t>(N) + 3] = 1.0;  // P
  return m;
}

std::vector<double> rhs_enlarged(const EnlargedState& s, const EnlargedParams& p) {
  p.validate();
  const int N = p.base.N;
  if (static_cast<int>(s.v.size()) != N + 5)
    throw parameter_error("rhs_enlarged: state size mismatch");
  const Rates r(p);
  const std::vector<double> pk = powers(s.nP(), N);

  std::vector<double> d(s.v.size(), 0.0);
  double sum_low = 0.0, sum_high = 0.0, sum_all = 0.0, sum_k = 0.0;
  double attach_all = 0.0, attach_k = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double nk = s.nk(k);
    sum_all += nk;
    sum_k += k * nk;
    if (k < N) sum_low += nk;
    if (k > 0) sum_high += nk;
    const double att = r.Km3[static_cast<std::size_t>(k)] * pk[static_cast<std::size_t>(k)];
    attach_all += att;
    attach_k += k * att;
  }

  for (int k = 0; k <= N; ++k) {
    double v = -r.K3 * s.nk(k) +
               r.Km3[static_cast<std::size_t>(k)] * s.nS() * pk[static_cast<std::size_t>(k)];
    if (k > 0) v += r.K1 * s.nT() * s.nk(k - 1) - r.Km1 * s.nD() * s.nk(k);
    if (k < N) v += r.Km1 * s.nD() * s.nk(k + 1) - r.K1 * s.nT() * s.nk(k);
    d[static_cast<std::size_t>(k)] = v;
  }
  const double dT = -r.K2 * s.nT() + r.Km2 * s.nD() * s.nP() -
                    r.K1 * s.nT() * sum_low + r.Km1 * s.nD() * sum_high;
  d[static_cast<std::size_t>(N) + 1] = dT;
  d[static_cast<std::size_t>(N) + 2] = -dT;
  d[static_cast<std::size_t>(N) + 3] = r.K2 * s.nT() - r.Km2 * s.nD() * s.nP() +
                                       r.K3 * sum_k - s.nS() * attach_k;
  d.back() = r.K3 * sum_all - s.nS() * attach_all;
  return d;
}

std::vector<std::vector<double>> jacobian_enlarged(const EnlargedState& s,
                                                   const EnlargedParams& p) {
  const int N = p.base.N;
  const int n = N + 5;
  const int iT = N + 1, iD = N + 2, iP = N + 3, iS = N + 4;
  const Rates r(p);
  const std::vector<double> pk = powers(s.nP(), N);

  std::vector<std::vector<double>> J(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  double sum_low = 0.0, sum_high = 0.0;
  double attach_all = 0.0, attach_k = 0.0, dattach_all = 0.0, dattach_k = 0.0;
  for (int k = 0; k <= N; ++k) {
    if (k < N) sum_low += s.nk(k);
    if (k > 0) sum_high += s.nk(k);
    const double km3 = r.Km3[static_cast<std::size_t>(k)];
    attach_all += km3 * pk[static_cast<std::size_t>(k)];
    attach_k += k * km3 * pk[static_cast<std::size_t>(k)];
    if (k >= 1) {
      dattach_all += k * km3 * pk[static_cast<std::size_t>(k - 1)];
      dattach_k += k * k * km3 * pk[static_cast<std::size_t>(k - 1)];
    }
  }

  for (int k = 0; k <= N; ++k) {
    auto& row = J[static_cast<std::size_t>(k)];
    row[static_cast<std::size_t>(k)] = -r.K3;
    if (k > 0) {
      row[static_cast<std::size_t>(k - 1)] += r.K1 * s.nT();
      row[static_cast<std::size_t>(k)] -= r.Km1 * s.nD();
      row[static_cast<std::size_t>(iT)] += r.K1 * s.nk(k - 1);
      row[static_cast<std::size_t>(iD)] -= r.Km1 * s.nk(k);
    }
    if (k < N) {
      row[static_cast<std::size_t>(k + 1)] += r.Km1 * s.nD();
      row[static_cast<std::size_t>(k)] -= r.K1 * s.nT();
      row[static_cast<std::size_t>(iT)] -= r.K1 * s.nk(k);
      row[static_cast<std::size_t>(iD)] += r.Km1 * s.nk(k + 1);
    }
    const double km3 = r.Km3[static_cast<std::size_t>(k)];
    if (k >= 1)
      row[static_cast<std::size_t>(iP)] +=
          km3 * s.nS() * k * pk[static_cast<std::size_t>(k - 1)];
    row[static_cast<std::size_t>(iS)] += km3 * pk[static_cast<std::size_t>(k)];
  }

  auto& rT = J[static_cast<std::size_t>(iT)];
  for (int k = 0; k <= N; ++k) {
    if (k < N) rT[static_cast<std::size_t>(k)] -= r.K1 * s.nT();
    if (k > 0) rT[static_cast<std::size_t>(k)] += r.Km1 * s.nD();
  }
  rT[static_cast<std::size_t>(iT)] = -r.K2 - r.K1 * sum_low;
  rT[static_cast<std::size_t>(iD)] = r.Km2 * s.nP() + r.Km1 * sum_high;
  rT[static_cast<std::size_t>(iP)] = r.Km2 * s.nD();
  for (int j = 0; j < n; ++j)
    J[static_cast<std::size_t>(iD)][static_cast<std::size_t>(j)] =
        -rT[static_cast<std::size_t>(j)];

  auto& rP = J[static_cast<std::size_t>(iP)];
  for (int k = 0; k <= N; ++k) rP[static_cast<std::size_t>(k)] = r.K3 * k;
  rP[static_cast<std::size_t>(iT)] = r.K2;
  rP[static_cast<std::size_t>(iD)] = -r.Km2 * s.nP();
  rP[static_cast<std::size_t>(iP)] = -r.Km2 * s.nD() - s.nS() * dattach_k;
  rP[static_cast<std::size_t>(iS)] = -attach_k;

  auto& rS = J[static_cast<std::size_t>(iS)];
  for (int k = 0; k <= N; ++k) rS[static_cast<std::size_t>(k)] = r.K3;
  rS[static_cast<std::size_t>(iP)] = -s.nS() * dattach_all;
  rS[static_cast<std::size_t>(iS)] = -attach_all;
  return J;
}

EnlargedState boltzmann_state(const EnlargedParams& p) {
  p.validate();
  const int N = p.base.N;
  EnlargedState s;
  s.v.assign(static_cast<std::size_t>(N) + 5, 0.0);
  for (int k = 0; k <= N; ++k)
    s.nk(k) = std::exp(-(p.base.sigma + k * p.base.energy_E));
  s.nT() = std::exp(-p.E_T);
  s.nD() = std::exp(-p.E_D);
  s.nP() = std::exp(-p.E_P);
  s.nS() = 1.0;  // E_S = 0, consistent with the section-2 normalization
  return s;
}

EnlargedState integrate_enlarged(const EnlargedState& s0, const EnlargedParams& p,
                                 double t) {
  p.validate();
  for (double v : s0.v)
    if (v < 0.0) throw parameter_error("integrate_enlarged: negative initial state");
  if (!(t > 0.0)) return s0;

  const int n = static_cast<int>(s0.v.size());
  using Vec = Eigen::VectorXd;
  using Mat = Eigen::MatrixXd;

  const auto rhs_at = [&](const Vec& x) {
    EnlargedState s;
    s.v.assign(x.data(), x.data() + n);
    const std::vector<double> d = rhs_enlarged(s, p);
    return Eigen::Map<const Vec>(d.data(), n).eval();
  };
  const auto jac_at = [&](const Vec& x) {
    EnlargedState s;
    s.v.assign(x.data(), x.data() + n);
    const auto Jm = jacobian_enlarged(s, p);
    Mat J(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        J(i, j) = Jm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return J;
  };

  double scale = 1.0;
  for (double v : s0.v) scale = std::max(scale, v);

  // Solve x = base + c*f(x) by Newton with the analytic Jacobian.
  const auto implicit_solve = [&](const Vec& base, double c, const Vec& guess,
                                  Vec& out_x) {
    Vec x = guess;
    for (int it = 0; it < 25; ++it) {
      const Vec res = x - base - c * rhs_at(x);
      if (res.lpNorm<Eigen::Infinity>() <= 1e-13 * scale) {
        out_x = x;
        return true;
      }
      const Mat M = Mat::Identity(n, n) - c * jac_at(x);
      x -= M.partialPivLu().solve(res);
      if (!x.allFinite()) return false;
    }
    return false;
  };

  // One L-stable TR-BDF2 step (trapezoidal stage to t+gamma*h, BDF2 to t+h).
  const double gamma = 2.0 - std::sqrt(2.0);
  const auto trbdf2_step = [&](const Vec& x0, double h, Vec& x1) {
    const Vec f0 = rhs_at(x0);
    Vec xg;
    if (!implicit_solve(x0 + (gamma * h / 2.0) * f0, gamma * h / 2.0, x0, xg))
      return false;
    const double c1 = 1.0 / (gamma * (2.0 - gamma));
    const double c2 = -(1.0 - gamma) * (1.0 - gamma) / (gamma * (2.0 - gamma));
    const double c3 = (1.0 - gamma) / (2.0 - gamma);
    if (!implicit_solve(c1 * xg + c2 * x0, c3 * h, xg, x1)) return false;
    return x1.minCoeff() >= -1e-13 * scale;
  };

  Vec x = Eigen::Map<const Vec>(s0.v.data(), n);
  double time = 0.0, dt = std::min(1e-3, t);
  while (time < t) {
    if (time + dt > t) dt = t - time;
    // Step-doubling error control: one full step vs two half steps.
    Vec full, half1, half2;
    const bool ok = trbdf2_step(x, dt, full) && trbdf2_step(x, dt / 2.0, half1) &&
                    trbdf2_step(half1, dt / 2.0, half2);
    double err = std::numeric_limits<double>::infinity();
    if (ok) {
      err = 0.0;
      for (int i = 0; i < n; ++i)
        err = std::max(err, std::abs(full[i] - half2[i]) /
                                (1e-2 * scale + std::abs(half2[i])));
    }
    const double tol = 1e-10;
    if (err <= tol) {
      x = half2;
      time += dt;
      if (err < tol / 8.0) dt *= 2.0;
    } else {
      dt /= 2.0;
      if (dt < 1e-14 * std::max(t, 1.0))
        throw stiffness_error("integrate_enlarged: step-size underflow");
    }
  }

  EnlargedState out;
  out.v.assign(x.data(), x.data() + n);
  return out;
}

NetworkSpec build_enlarged_network(const EnlargedParams& p) {
  p.validate();
  const int N = p.base.N;
  const Rates r(p);
  NetworkSpec net;
  net.species.push_back("S");
  for (int k = 0; k <= N; ++k) net.species.push_back("C" + std::to_string(k));
  net.species.push_back("ATP");
  net.species.push_back("ADP");
  net.species.push_back("P");

  auto C = [](int k) { return "C" + std::to_string(k); };
  for (int k = 0; k < N; ++k) {
    net.reactions.push_back({{C(k), "ATP"}, {C(k + 1), "ADP"}, r.K1});
    net.reactions.push_back({{C(k + 1), "ADP"}, {C(k), "ATP"}, r.Km1});
  }
  net.reactions.push_back({{"ATP"}, {"ADP", "P"}, r.K2});
  net.reactions.push_back({{"ADP", "P"}, {"ATP"}, r.Km2});
  for (int k = 0; k <= N; ++k) {
    std::vector<std::string> side = {"S"};
    for (int j = 0; j < k; ++j) side.push_back("P");
    net.reactions.push_back({{C(k)}, side, r.K3});
    net.reactions.push_back({side, {C(k)}, r.Km3[static_cast<std::size_t>(k)]});
  }
  return net;
}

std::pair<ModelParams, NetworkSpec> frozen_reduction(double nbar_T, double nbar_D,
                                                     double nbar_P,
                                                     const EnlargedParams& p) {
  p.validate();
  if (!(nbar_T > 0.0) || !(nbar_D > 0.0) || !(nbar_P > 0.0))
    throw parameter_error("frozen_reduction: carrier concentrations must be > 0");
  ModelParams q = p.base;
  q.delta = p.E_T - p.E_D - p.E_P + std::log(nbar_T / (nbar_P * nbar_D));

  const int N = q.N;
  const double E = q.energy_E;
  const Rates r(p);
  NetworkSpec net;
  net.species.push_back("S");
  for (int k = 0; k <= N; ++k) net.species.push_back("C" + std::to_string(k));
  net.species.push_back("out");
  net.species.push_back("deg");
  auto C = [](int k) { return "C" + std::to_string(k); };
  for (int k = 0; k <= N; ++k) {
    const double att = r.Km3[static_cast<std::size_t>(k)] * std::pow(nbar_P, k);
    net.reactions.push_back({{"S"}, {C(k)}, att});
  }
  for (int k = 0; k <= N; ++k) net.reactions.push_back({{C(k)}, {"S"}, r.K3});
  for (int k = 0; k < N; ++k)
    net.reactions.push_back({{C(k)}, {C(k + 1)}, r.K1 * nbar_T});
  for (int k = 1; k <= N; ++k)
    net.reactions.push_back({{C(k)}, {C(k - 1)}, r.Km1 * nbar_D});
  net.reactions.push_back({{C(N)}, {"out"}, r.K1 * nbar_T});
  if (q.has_degradation()) {
    net.reactions.push_back({{"S"}, {"deg"}, q.mu()});
    for (int k = 0; k <= N; ++k) net.reactions.push_back({{C(k)}, {"deg"}, q.mu()});
  }
  (void)E;
  return {q, net};
}

std::array<double, 3> external_fluxes(const EnlargedParams& p, double delta) {
  p.validate();
  if (delta < 0.0) throw parameter_error("external_fluxes: requires delta >= 0");
  const double E = p.base.energy_E;
  const double geo = -std::expm1(-p.base.N * E) / -std::expm1(-E);
  const double JT = std::expm1(delta) *
                    (1.0 + p.base.alpha * std::exp(-p.base.sigma) * geo);
  return {JT, -JT, -std::expm1(delta)};
}

std::array<double, 3> external_fluxes_residual(const EnlargedParams& p, double delta) {
  p.validate();
  const int N = p.base.N;
  EnlargedState s;
  s.v.assign(static_cast<std::size_t>(N) + 5, 0.0);
  for (int k = 0; k <= N; ++k)
    s.nk(k) = std::exp(-(p.base.sigma + k * p.base.energy_E));
  s.nT() = std::exp(delta - p.E_T);
  s.nD() = std::exp(-p.E_D);
  s.nP() = std::exp(-p.E_P);
  s.nS() = 1.0;
  const std::vector<double> d = rhs_enlarged(s, p);
  return {-d[static_cast<std::size_t>(N) + 1], -d[static_cast<std::size_t>(N) + 2],
          -d[static_cast<std::size_t>(N) + 3]};
}

}  // namespace kpr
