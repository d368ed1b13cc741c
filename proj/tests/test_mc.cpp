#include <cmath>
#include <set>

#include "doctest.h"
#include "kpr/finite_model.hpp"
#include "kpr/mc.hpp"
#include "kpr/params.hpp"

namespace {

kpr::ModelParams mc_params() {
  kpr::ModelParams p;
  p.N = 4;
  p.alpha = 1.0;
  p.energy_E = 1.0;
  p.delta = 2.0;
  p.sigma = 0.5;
  p.b = 0.5;  // mu = e^{-2}
  return p;
}

}  // namespace

TEST_CASE("Philox draws are in range and streams decorrelate") {
  kpr::Philox g(123, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const double u = g.uniform();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    CHECK(g.exponential(2.0) > 0.0);
    seen.insert(g.next_u64());
  }
  CHECK(seen.size() == 1000);

  kpr::Philox a(123, 1), b(123, 2);
  int equal = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++equal;
  CHECK(equal == 0);
}

TEST_CASE("single trials are reproducible per (seed, trial)") {
  const kpr::ModelParams p = mc_params();
  const kpr::TrialOutcome t1 = kpr::simulate_ligand(p, 42, 7);
  const kpr::TrialOutcome t2 = kpr::simulate_ligand(p, 42, 7);
  CHECK(t1.outcome == t2.outcome);
  CHECK(t1.absorption_time == t2.absorption_time);
  CHECK(t1.path_length == t2.path_length);
  CHECK(t1.absorption_time > 0.0);
  CHECK(t1.path_length >= 1);
}

TEST_CASE("simulation requires degradation") {
  kpr::ModelParams p = mc_params();
  p.b.reset();
  CHECK_THROWS_AS(kpr::simulate_ligand(p, 1, 0), kpr::parameter_error);
}

TEST_CASE("estimate is identical across worker counts and seeds matter") {
  const kpr::ModelParams p = mc_params();
  const kpr::PresEstimate e1 = kpr::estimate_pres(p, 2000, 99, 1);
  const kpr::PresEstimate e4 = kpr::estimate_pres(p, 2000, 99, 4);
  CHECK(e1.p_hat == e4.p_hat);
  CHECK(e1.responses == e4.responses);
  CHECK(e1.trials == 2000);

  const kpr::PresEstimate other = kpr::estimate_pres(p, 2000, 100, 1);
  CHECK(other.responses != e1.responses);

  CHECK(e1.stderr_ ==
        doctest::Approx(std::sqrt(e1.p_hat * (1.0 - e1.p_hat) / 2000.0))
            .epsilon(1e-12));
}

TEST_CASE("strong drive responds almost surely") {
  kpr::ModelParams p = mc_params();
  p.N = 2;
  p.sigma = -30.0;
  p.b = 5.0;  // mu = e^{-10}, tiny
  const kpr::PresEstimate e = kpr::estimate_pres(p, 1000, 7, 2);
  CHECK(e.responses >= 990);
}

TEST_CASE("estimator is unbiased against the exact linear solve") {
  const kpr::ModelParams p = mc_params();
  const double exact = kpr::pres_exact(p);
  int covered = 0;
  for (std::uint64_t batch = 0; batch < 100; ++batch) {
    const kpr::PresEstimate e = kpr::estimate_pres(p, 1000, 1000 + batch, 2);
    const double half = 3.0 * std::max(e.stderr_, 1e-12);
    if (std::abs(e.p_hat - exact) <= half) ++covered;
  }
  // 3-sigma coverage is ~99.7%; 97/100 is a loose floor for a sound estimator.
  CHECK(covered >= 97);
}
