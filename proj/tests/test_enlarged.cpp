#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "kpr/enlarged.hpp"
#include "kpr/errors.hpp"
#include "kpr/network.hpp"

namespace {

kpr::EnlargedParams eparams(int N) {
  kpr::EnlargedParams p;
  p.base.N = N;
  p.base.alpha = 1.0;
  p.base.energy_E = 1.0;
  p.base.delta = 0.0;  // unused; the carriers set the affinity
  p.base.sigma = 0.5;
  p.E_T = 1.0;
  p.E_D = 0.5;
  p.E_P = 0.3;
  return p;
}

std::vector<double> species_energies(const kpr::EnlargedParams& p) {
  const int N = p.base.N;
  std::vector<double> e(static_cast<std::size_t>(N + 5));
  for (int k = 0; k <= N; ++k)
    e[static_cast<std::size_t>(k)] = p.base.sigma + k * p.base.energy_E;
  e[static_cast<std::size_t>(N + 1)] = p.E_T;
  e[static_cast<std::size_t>(N + 2)] = p.E_D;
  e[static_cast<std::size_t>(N + 3)] = p.E_P;
  e[static_cast<std::size_t>(N + 4)] = 0.0;
  return e;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

kpr::EnlargedState random_state(int N, std::uint64_t& s) {
  auto next = [&s]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) / 9007199254740992.0;
  };
  kpr::EnlargedState x;
  x.v.resize(static_cast<std::size_t>(N + 5));
  for (double& vi : x.v) vi = 0.2 + 1.8 * next();
  return x;
}

// Adenine count (ATP + ADP) is conserved separately from the ligand and
// phosphate moments, so the equilibrium manifold carries three multipliers.
std::vector<double> conserved_m3(int N) {
  std::vector<double> m(static_cast<std::size_t>(N + 5), 0.0);
  m[static_cast<std::size_t>(N + 1)] = 1.0;
  m[static_cast<std::size_t>(N + 2)] = 1.0;
  return m;
}

// Equilibrium x_i = exp(-E_i + sum_a mu_a m_a,i), the multipliers chosen by
// Newton so every conserved moment matches its target.
std::vector<double> equilibrium_oracle(const kpr::EnlargedParams& p,
                                       const std::vector<double>& targets) {
  const std::vector<double> e = species_energies(p);
  const std::vector<std::vector<double>> m = {kpr::conserved_m1(p.base.N),
                                              kpr::conserved_m2(p.base.N),
                                              conserved_m3(p.base.N)};
  Eigen::Vector3d mu = Eigen::Vector3d::Zero();
  std::vector<double> x(e.size());
  for (int it = 0; it < 300; ++it) {
    for (std::size_t i = 0; i < e.size(); ++i)
      x[i] = std::exp(-e[i] + mu[0] * m[0][i] + mu[1] * m[1][i] + mu[2] * m[2][i]);
    Eigen::Vector3d f;
    double tscale = 0.0;
    for (int a = 0; a < 3; ++a) {
      f[a] = dot(m[static_cast<std::size_t>(a)], x) -
             targets[static_cast<std::size_t>(a)];
      tscale += std::abs(targets[static_cast<std::size_t>(a)]);
    }
    if (f.cwiseAbs().sum() < 1e-13 * tscale) break;
    Eigen::Matrix3d J;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
          s += m[static_cast<std::size_t>(a)][i] * m[static_cast<std::size_t>(b)][i] *
               x[i];
        J(a, b) = s;
      }
    Eigen::Vector3d step = J.partialPivLu().solve(f);
    const double mag = step.cwiseAbs().maxCoeff();
    if (mag > 0.5) step *= 0.5 / mag;  // damp large Newton steps
    mu -= step;
  }
  return x;
}

}  // namespace

TEST_CASE("Boltzmann state is stationary") {
  const kpr::EnlargedParams p = eparams(5);
  const kpr::EnlargedState eq = kpr::boltzmann_state(p);
  const std::vector<double> r = kpr::rhs_enlarged(eq, p);
  for (double ri : r) CHECK(std::abs(ri) <= 1e-13);
}

TEST_CASE("all three moments are conserved by the dynamics") {
  const kpr::EnlargedParams p = eparams(4);
  const std::vector<double> m1 = kpr::conserved_m1(p.base.N);
  const std::vector<double> m2 = kpr::conserved_m2(p.base.N);
  const std::vector<double> m3 = conserved_m3(p.base.N);
  std::uint64_t s = 0x9e3779b97f4a7c15ull;
  for (int trial = 0; trial < 50; ++trial) {
    const kpr::EnlargedState x = random_state(p.base.N, s);
    const std::vector<double> r = kpr::rhs_enlarged(x, p);
    CHECK(std::abs(dot(m1, r)) <= 1e-12);
    CHECK(std::abs(dot(m2, r)) <= 1e-12);
    CHECK(std::abs(dot(m3, r)) <= 1e-12);
  }
}

TEST_CASE("analytic Jacobian matches finite differences") {
  const kpr::EnlargedParams p = eparams(3);
  std::uint64_t s = 12345;
  const kpr::EnlargedState x = random_state(p.base.N, s);
  const std::vector<std::vector<double>> J = kpr::jacobian_enlarged(x, p);
  const std::size_t M = x.v.size();
  REQUIRE(J.size() == M);
  const double h = 1e-6;
  for (std::size_t j = 0; j < M; ++j) {
    kpr::EnlargedState xp = x, xm = x;
    xp.v[j] += h;
    xm.v[j] -= h;
    const std::vector<double> rp = kpr::rhs_enlarged(xp, p);
    const std::vector<double> rm = kpr::rhs_enlarged(xm, p);
    for (std::size_t i = 0; i < M; ++i)
      CHECK(J[i][j] == doctest::Approx((rp[i] - rm[i]) / (2.0 * h)).epsilon(1e-5));
  }
}

TEST_CASE("Jacobian nullity at a generic state is exactly three") {
  const kpr::EnlargedParams p = eparams(4);
  std::uint64_t s = 777;
  const kpr::EnlargedState x = random_state(p.base.N, s);
  const std::vector<std::vector<double>> J = kpr::jacobian_enlarged(x, p);
  const int M = static_cast<int>(J.size());
  Eigen::MatrixXd Jm(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      Jm(i, j) = J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Jm);
  const Eigen::VectorXd sv = svd.singularValues();
  CHECK(sv[M - 4] > 1e-6 * sv[0]);
  CHECK(sv[M - 3] <= 1e-10 * sv[0]);
  CHECK(sv[M - 2] <= 1e-10 * sv[0]);
  CHECK(sv[M - 1] <= 1e-10 * sv[0]);
}

TEST_CASE("integration preserves the Boltzmann state") {
  const kpr::EnlargedParams p = eparams(4);
  const kpr::EnlargedState eq = kpr::boltzmann_state(p);
  const kpr::EnlargedState out = kpr::integrate_enlarged(eq, p, 10.0);
  for (std::size_t i = 0; i < eq.v.size(); ++i)
    CHECK(std::abs(out.v[i] - eq.v[i]) <= 1e-8 * (1.0 + eq.v[i]));
}

TEST_CASE("random initial data relax to the three-moment equilibrium") {
  const kpr::EnlargedParams p = eparams(4);
  const std::vector<double> m1 = kpr::conserved_m1(p.base.N);
  const std::vector<double> m2 = kpr::conserved_m2(p.base.N);
  const std::vector<double> m3 = conserved_m3(p.base.N);
  std::uint64_t s = 424242;
  const kpr::EnlargedState x0 = random_state(p.base.N, s);
  const double M1 = dot(m1, x0.v);
  const double M2 = dot(m2, x0.v);
  const double M3 = dot(m3, x0.v);

  const kpr::EnlargedState xf = kpr::integrate_enlarged(x0, p, 500.0);
  CHECK(dot(m1, xf.v) == doctest::Approx(M1).epsilon(1e-8));
  CHECK(dot(m2, xf.v) == doctest::Approx(M2).epsilon(1e-8));
  CHECK(dot(m3, xf.v) == doctest::Approx(M3).epsilon(1e-8));

  const std::vector<double> want = equilibrium_oracle(p, {M1, M2, M3});
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(xf.v[i] == doctest::Approx(want[i]).epsilon(1e-6));
}

TEST_CASE("frozen carriers induce the ladder affinity") {
  const kpr::EnlargedParams p = eparams(3);
  const double nT = 2.0, nD = 0.5, nP = 0.25;
  const auto [lp, net] = kpr::frozen_reduction(nT, nD, nP, p);
  const double want = p.E_T - p.E_D - p.E_P + std::log(nT / (nP * nD));
  CHECK(lp.delta == doctest::Approx(want).epsilon(1e-12));
  CHECK(lp.N == p.base.N);
  for (int k = 0; k < p.base.N; ++k)
    CHECK(kpr::cycle_delta(net, k) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("carrier fluxes: closed form equals mass-action bookkeeping") {
  const kpr::EnlargedParams p = eparams(4);
  for (double delta : {0.0, 0.5, 1.5}) {
    const std::array<double, 3> closed = kpr::external_fluxes(p, delta);
    const std::array<double, 3> direct = kpr::external_fluxes_residual(p, delta);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(closed[static_cast<std::size_t>(i)] -
                     direct[static_cast<std::size_t>(i)]) <= 1e-12);
    // Adenine balance ties the ATP and ADP feeds together exactly.
    CHECK(std::abs(closed[0] + closed[1]) <= 1e-12);
    if (delta > 0.0) {
      CHECK(closed[0] > 0.0);
      CHECK(closed[2] < 0.0);
    } else {
      for (double f : closed) CHECK(std::abs(f) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(kpr::external_fluxes(p, -0.5), kpr::parameter_error);
}
