#include <cmath>
#include <vector>

#include "doctest.h"
#include "kpr/errors.hpp"
#include "kpr/pde_limits.hpp"

namespace {

kpr::PdeParams pde1_params() {
  kpr::PdeParams p;
  p.beta = 1.5;
  p.delta_loss = 0.0;
  p.alpha = 1.0;
  p.Delta = 2.0;
  p.energy_E = 0.5;
  p.L = 30.0;
  p.grid = 300;
  return p;
}

kpr::PdeParams pde2_params() {
  kpr::PdeParams p;
  p.beta = 0.5;
  p.delta_loss = 0.0;
  p.alpha = 1.0;
  p.Delta = 1.5;
  p.energy_E = 0.0;
  p.L = 60.0;
  p.grid = 600;
  return p;
}

}  // namespace

TEST_CASE("parameter validation") {
  kpr::PdeParams p = pde1_params();
  p.grid = 8;
  CHECK_THROWS_AS(p.validate_pde1(), kpr::parameter_error);

  p = pde1_params();
  p.energy_E = 3.0;  // e^E > e^Delta: transport points the wrong way
  CHECK_THROWS_AS(p.validate_pde1(), kpr::unsupported_regime_error);

  p = pde2_params();
  p.Delta = -0.5;
  CHECK_THROWS_AS(p.validate_pde2(), kpr::unsupported_regime_error);
}

TEST_CASE("upwind scheme bookkeeping closes the mass budget") {
  kpr::PdeParams p = pde1_params();
  p.L = 4.0;
  p.grid = 200;

  // Without re-attachment or loss, mass only leaves through the far boundary.
  p.beta = 0.0;
  kpr::PdeField f = kpr::solve_pde1(p, 1.0);
  CHECK(f.mass_in == 0.0);
  CHECK(f.mass_final ==
        doctest::Approx(f.mass0 - f.mass_out).epsilon(1e-12));
  CHECK(f.mass0 == doctest::Approx(1.0).epsilon(1e-3));  // unit sine bump

  // Re-attachment recycles exactly what the bulk loses, so the same identity
  // holds for beta > 0 as long as delta_loss = 0.
  p.beta = 1.0;
  f = kpr::solve_pde1(p, 1.0);
  CHECK(f.mass_in > 0.0);
  CHECK(f.mass_final ==
        doctest::Approx(f.mass0 - f.mass_out).epsilon(1e-12));

  // Degradation makes the budget strictly lossy.
  p.delta_loss = 0.5;
  f = kpr::solve_pde1(p, 1.0);
  CHECK(f.mass_final < f.mass0 - f.mass_out);
}

TEST_CASE("boundary-fed limit decays at rate (beta+delta)/speed") {
  const kpr::PdeParams p = pde1_params();
  const double c = p.alpha * (std::exp(p.Delta) - std::exp(p.energy_E));
  const double target = -(p.beta + p.delta_loss) / c;
  const kpr::ExponentFit fit = kpr::fit_exponent(kpr::solve_pde1(p));
  CHECK(std::abs(fit.slope - target) <= 0.02 * std::abs(target));
  CHECK(fit.stderr_ < std::abs(target));
  CHECK(fit.x_lo < fit.x_hi);
}

TEST_CASE("distributed-source limit decays at rate beta/(alpha(e^Delta-1))") {
  const kpr::PdeParams p = pde2_params();
  const double target = p.beta / (p.alpha * std::expm1(p.Delta));
  const kpr::ExponentFit fit = kpr::fit_exponent(kpr::solve_pde2(p));
  CHECK(std::abs(-fit.slope - target) <= 0.03 * target);
}

TEST_CASE("exponent fit rejects fields without enough positive cells") {
  kpr::PdeField f;
  f.x = {0.5, 1.5, 2.5, 3.5};
  f.f = {1.0, 0.0, -1.0, 0.0};
  CHECK_THROWS_AS(kpr::fit_exponent(f), kpr::degenerate_parameter_error);
}

TEST_CASE("discrete ladders converge to the first transport limit") {
  kpr::PdeParams p = pde1_params();
  p.L = 4.0;
  p.grid = 200;
  const std::vector<kpr::PdeDiscreteGap> gaps =
      kpr::compare_pde_vs_discrete(p, 1, 0.5, {20, 40, 80});
  REQUIRE(gaps.size() == 3);
  CHECK(gaps[1].sup_gap < gaps[0].sup_gap);
  CHECK(gaps[2].sup_gap < gaps[1].sup_gap);
}

TEST_CASE("discrete ladders converge to the second transport limit") {
  kpr::PdeParams p = pde2_params();
  p.L = 4.0;
  p.grid = 200;
  const std::vector<kpr::PdeDiscreteGap> gaps =
      kpr::compare_pde_vs_discrete(p, 2, 0.5, {20, 40, 80});
  REQUIRE(gaps.size() == 3);
  CHECK(gaps[1].sup_gap < gaps[0].sup_gap);
  CHECK(gaps[2].sup_gap < gaps[1].sup_gap);
}

TEST_CASE("comparison rejects bad requests") {
  kpr::PdeParams p = pde1_params();
  p.L = 4.0;
  p.grid = 200;
  CHECK_THROWS_AS(kpr::compare_pde_vs_discrete(p, 3, 0.5, {20, 40}),
                  kpr::parameter_error);
  CHECK_THROWS_AS(kpr::compare_pde_vs_discrete(p, 1, 0.5, {40, 20}),
                  kpr::parameter_error);
  p.energy_E = 2.5;
  CHECK_THROWS_AS(kpr::compare_pde_vs_discrete(p, 1, 0.5, {20, 40}),
                  kpr::unsupported_regime_error);
}
