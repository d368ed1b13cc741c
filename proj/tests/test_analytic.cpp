#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "kpr/analytic.hpp"
#include "kpr/errors.hpp"

namespace {

kpr::ModelParams base(double E, double delta, double sigma, double alpha = 1.0) {
  kpr::ModelParams p;
  p.alpha = alpha;
  p.energy_E = E;
  p.delta = delta;
  p.sigma = sigma;
  return p;
}

}  // namespace

TEST_CASE("critical affinity anchor values") {
  // alpha=1, E=ln 2, sigma=0: delta_c = log(1 + 1/(2-1)) = ln 2.
  CHECK(kpr::delta_c(base(std::log(2.0), 0.0, 0.0)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // alpha=1, E=log 3, sigma=0: delta_c = log(3/2) < 2, so delta=2 is
  // supercritical.
  const kpr::ModelParams p = base(std::log(3.0), 2.0, 0.0);
  CHECK(kpr::delta_c(p) == doctest::Approx(std::log(1.5)).epsilon(1e-14));
  CHECK(kpr::compute_report(p).regime == kpr::Regime::supercritical);
}

TEST_CASE("critical affinity stays accurate for deeply negative sigma") {
  const double E = 1.0;
  const kpr::ModelParams p = base(E, 0.0, -40.0);
  const double expected = std::log1p(std::exp(-40.0) / std::expm1(E));
  CHECK(kpr::delta_c(p) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(kpr::delta_c(p) > 0.0);
  CHECK(kpr::delta_c(p) < 1e-16);
}

TEST_CASE("report at the critical affinity: phi = 1, psi = E, no constants") {
  kpr::ModelParams p = base(2.0, 0.0, -1.0);
  p.delta = kpr::delta_c(p);
  const kpr::AnalyticReport r = kpr::compute_report(p);
  CHECK(r.regime == kpr::Regime::critical);
  CHECK_FALSE(r.constants_available);
  CHECK(r.phi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.psi == doctest::Approx(p.energy_E).epsilon(1e-12));
}

TEST_CASE("root pair satisfies its quadratic (Vieta)") {
  for (const kpr::ModelParams& p :
       {base(1.0, 2.0, 0.5), base(std::log(3.0), 0.1, -1.0), base(0.7, 3.0, 2.0, 0.6)}) {
    const kpr::AnalyticReport r = kpr::compute_report(p);
    const double omega0 = std::exp(p.sigma) +
                          p.alpha * (std::exp(p.energy_E) + std::exp(p.delta));
    CHECK(r.phi * r.phi2 ==
          doctest::Approx(std::exp(p.delta + p.energy_E)).epsilon(1e-12));
    CHECK(r.phi + r.phi2 == doctest::Approx(omega0 / p.alpha).epsilon(1e-12));
    CHECK(r.phi <= r.phi2);
    CHECK(r.psi == doctest::Approx(p.energy_E - std::log(r.phi)).epsilon(1e-12));
  }
}

TEST_CASE("response exponent switches from E to psi at the critical affinity") {
  const kpr::AnalyticReport sub = kpr::compute_report(base(std::log(3.0), 0.1, 0.0));
  CHECK(sub.regime == kpr::Regime::subcritical);
  CHECK(sub.lambda == doctest::Approx(sub.psi == sub.psi ? std::log(3.0) : 0.0));
  const kpr::AnalyticReport sup = kpr::compute_report(base(std::log(3.0), 2.0, 0.0));
  CHECK(sup.regime == kpr::Regime::supercritical);
  CHECK(sup.lambda == doctest::Approx(sup.psi).epsilon(1e-14));
  CHECK(sup.lambda < std::log(3.0));
}

TEST_CASE("sigma_c solves lambda(sigma) = b") {
  // With alpha=1, E=1, delta=2 and b = 1 - log(3/2), the crossing has
  // phi(sigma_c) = 3/2, hence e^{sigma_c} = 3/2 + e^3/(3/2) - e - e^2.
  const kpr::ModelParams p = base(1.0, 2.0, 0.0);
  const double b = 1.0 - std::log(1.5);
  const double expected =
      std::log(1.5 + std::exp(3.0) / 1.5 - std::exp(1.0) - std::exp(2.0));
  CHECK(kpr::sigma_c(b, p) == doctest::Approx(expected).epsilon(1e-10));

  CHECK_THROWS_AS(kpr::sigma_c(1.5, p), kpr::no_root_error);   // b >= E
  CHECK_THROWS_AS(kpr::sigma_c(-0.1, p), kpr::no_root_error);  // b <= max{E-delta,0}
}

TEST_CASE("asymptotic predictor is consistent in log-odds space") {
  kpr::ModelParams p = base(std::log(3.0), 2.0, 1.0);
  p.N = 20;
  p.b = std::log(2.0);
  const double pres = kpr::asymptotic_pres(p);
  CHECK(pres > 0.0);
  CHECK(pres < 1.0);
  CHECK(std::log(1.0 / pres - 1.0) ==
        doctest::Approx(kpr::asymptotic_log_odds(p)).epsilon(1e-10));

  kpr::ModelParams crit = p;
  crit.delta = kpr::delta_c(crit);
  CHECK_THROWS_AS(kpr::asymptotic_pres(crit), kpr::unsupported_regime_error);

  kpr::ModelParams no_b = base(std::log(3.0), 2.0, 1.0);
  CHECK_THROWS_AS(kpr::asymptotic_pres(no_b), kpr::parameter_error);
}

TEST_CASE("Laplace kernel roots at seeded complex points") {
  const kpr::ModelParams p = base(1.0, 0.5, 2.0);
  const double alpha_eE = p.alpha * std::exp(p.energy_E);
  std::uint64_t s = 88172645463325252ull;
  auto next = [&s]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) / 9007199254740992.0;
  };
  for (int i = 0; i < 1000; ++i) {
    const std::complex<double> z(20.0 * next() - 10.0, 20.0 * next() - 10.0);
    if (std::abs(z.imag()) < 1e-3) continue;
    const kpr::LaplaceKernel k = kpr::kernel_at(z, p);
    const std::complex<double> vieta_sum = k.theta1 + k.theta2 - k.Omega / alpha_eE;
    const std::complex<double> vieta_prod =
        k.theta1 * k.theta2 - std::exp(p.delta - p.energy_E);
    CHECK(std::abs(vieta_sum) <= 1e-10);
    CHECK(std::abs(vieta_prod) <= 1e-10);
    CHECK(std::abs(k.theta1) <= std::abs(k.theta2) + 1e-12);
    CHECK(std::abs(k.varphi - std::exp(p.energy_E) * k.theta1) <= 1e-12);
    CHECK(std::abs(k.A - 1.0 / (z - k.z_A)) <= 1e-12);
  }
}

TEST_CASE("free-ligand transform vanishes at z = -e^sigma") {
  const kpr::ModelParams p = base(1.0, 0.5, 0.3);  // E != delta keeps z2 < -e^sigma
  const kpr::LaplaceKernel k =
      kpr::kernel_at(std::complex<double>(-std::exp(p.sigma), 0.0), p);
  CHECK(std::abs(k.nS_hat) <= 1e-14);
}

TEST_CASE("kernel refuses evaluation on the branch segment") {
  const kpr::ModelParams p = base(1.0, 0.5, 0.3);
  const kpr::LaplaceKernel k = kpr::kernel_at(std::complex<double>(1.0, 1.0), p);
  const double mid = 0.5 * (k.z1 + k.z2);
  CHECK(k.z1 < k.z2);
  CHECK(k.z2 < 0.0);
  CHECK_THROWS_AS(kpr::kernel_at(std::complex<double>(mid, 0.0), p),
                  kpr::branch_cut_error);
}

TEST_CASE("B at the origin matches the report amplitude") {
  const kpr::ModelParams p = base(std::log(3.0), 3.0, 0.0);
  const kpr::AnalyticReport r = kpr::compute_report(p);
  const kpr::LaplaceKernel k = kpr::kernel_at(std::complex<double>(0.0, 0.0), p);
  CHECK(std::real(k.B) == doctest::Approx(r.B0).epsilon(1e-10));
  CHECK(std::abs(std::imag(k.B)) <= 1e-14);
}

TEST_CASE("theta classification covers the three orderings") {
  const kpr::ModelParams p = base(std::log(3.0), 3.0, 0.0);  // supercritical
  // w0 = 1.5487, wS = 1.3882 for these parameters.
  CHECK(kpr::classify_theta_regime(0.5, p) == kpr::ThetaCase::case2);
  CHECK(kpr::classify_theta_regime(1.05, p) == kpr::ThetaCase::case1);
  CHECK(kpr::classify_theta_regime(1.5, p) == kpr::ThetaCase::case3);

  const kpr::SaddleData sd = kpr::saddle_data(p);
  const double theta_tie = std::sqrt(sd.wS * sd.wS - 1.0);
  CHECK_THROWS_AS(kpr::classify_theta_regime(theta_tie, p),
                  kpr::ambiguous_regime_error);
  CHECK_THROWS_AS(kpr::classify_theta_regime(-0.1, p), kpr::parameter_error);
  CHECK_THROWS_AS(kpr::classify_theta_regime(0.5, base(std::log(3.0), 0.1, 0.0)),
                  kpr::unsupported_regime_error);
}

TEST_CASE("saddle bookkeeping: stationarity, peak value, time mapping") {
  const kpr::ModelParams p = base(1.0, 2.0, 0.5);
  const kpr::SaddleData sd = kpr::saddle_data(p);
  for (double theta : {0.3, 1.0, 2.5}) {
    const double w = kpr::SaddleData::w_theta(theta);
    CHECK(w == doctest::Approx(std::sqrt(1.0 + theta * theta)).epsilon(1e-14));
    const double h = 1e-6;
    const double dPhi = (kpr::SaddleData::Phi(w + h, theta) -
                         kpr::SaddleData::Phi(w - h, theta)) /
                        (2.0 * h);
    CHECK(std::abs(dPhi) <= 1e-8);
  }
  const double ebar = 0.5 * (p.energy_E + p.delta);
  CHECK(sd.theta_M == doctest::Approx(std::sinh(ebar)).epsilon(1e-14));
  CHECK(sd.PsiM(sd.theta_M) == doctest::Approx(std::cosh(ebar)).epsilon(1e-12));
  CHECK(sd.PsiM(sd.theta_M) >= sd.PsiM(sd.theta_M * 0.7));
  CHECK(sd.PsiM(sd.theta_M) >= sd.PsiM(sd.theta_M * 1.3));
  CHECK(sd.wA == doctest::Approx(std::cosh(ebar)).epsilon(1e-14));
  const double t = 0.37;
  CHECK(sd.t_of_tau(sd.tau(t)) == doctest::Approx(t).epsilon(1e-14));
}

TEST_CASE("amplitude identities: G - A0 = B0 A0 and C2 > 0") {
  for (const kpr::ModelParams& p :
       {base(std::log(3.0), 2.0, 0.0), base(1.0, 2.5, 1.0), base(std::log(3.0), 3.0, 2.0)}) {
    const kpr::AnalyticReport r = kpr::compute_report(p);
    REQUIRE(r.constants_available);
    CHECK(r.G - r.A0 == doctest::Approx(r.B0 * r.A0).epsilon(1e-10));
    CHECK(r.C2_positive);
    CHECK(r.C2 > 0.0);
  }
}

TEST_CASE("phi decreases with sigma") {
  const kpr::ModelParams p = base(1.0, 2.0, 0.0);
  double prev = kpr::phi_root(p, -2.0);
  for (int i = 1; i <= 100; ++i) {
    const double s = -2.0 + 6.0 * i / 100.0;
    const double cur = kpr::phi_root(p, s);
    CHECK(cur < prev);
    prev = cur;
  }
}
