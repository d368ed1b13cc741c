#include <cmath>
#include <vector>

#include "doctest.h"
#include "kpr/errors.hpp"
#include "kpr/variants.hpp"

namespace {

kpr::VariantSpec make_spec(kpr::VariantKind kind, double E, double delta,
                           double sigma, int K = 200) {
  kpr::VariantSpec s;
  s.kind = kind;
  s.params.alpha = 1.0;
  s.params.energy_E = E;
  s.params.delta = delta;
  s.params.sigma = sigma;
  s.K = K;
  return s;
}

// Residual of the stationary balance at site k given the variant's rates.
double residual(const kpr::VariantSpec& s, const std::vector<double>& n, int k) {
  const double E = s.params.energy_E, D = s.params.delta;
  const double sigma = s.params.sigma, a = s.params.alpha;
  const int K = s.K;
  auto at = [&](int j) {
    return (j >= 0 && j <= K) ? n[static_cast<std::size_t>(j)] : 0.0;
  };
  double src = 0.0, detach = 0.0, phos = a, dephos = a * std::exp(E);
  switch (s.kind) {
    case kpr::VariantKind::detachment:
      src = std::exp(-k * E);
      detach = std::exp(sigma + k * D);
      break;
    case kpr::VariantKind::attachment:
      src = std::exp(-k * (E + D));
      detach = std::exp(sigma);
      break;
    case kpr::VariantKind::dephosphorylation:
      src = std::exp(-k * E);
      detach = std::exp(sigma);
      dephos = a * std::exp(E - D);
      break;
    case kpr::VariantKind::delta_infty:
      src = std::exp(-k * E);
      detach = std::exp(sigma);
      phos = s.gamma;
      dephos = 0.0;
      break;
  }
  double r = src - (detach + phos + (k > 0 ? dephos : 0.0)) * at(k);
  if (k > 0) r += phos * at(k - 1);
  if (k < K) r += dephos * at(k + 1);
  return r;
}

}  // namespace

TEST_CASE("steady profiles satisfy the site balance for every variant") {
  std::vector<kpr::VariantSpec> specs = {
      make_spec(kpr::VariantKind::detachment, 0.5, 1.0, 0.0, 100),
      make_spec(kpr::VariantKind::attachment, 1.0, 2.0, 0.0),
      make_spec(kpr::VariantKind::dephosphorylation, 0.5, 1.5, -1.0),
      make_spec(kpr::VariantKind::delta_infty, 1.0, 0.0, 0.5)};
  specs.back().gamma = 2.0;
  for (const kpr::VariantSpec& s : specs) {
    const std::vector<double> n = kpr::variant_steady_profile(s);
    REQUIRE(static_cast<int>(n.size()) == s.K + 1);
    for (int k = 0; k <= s.K; ++k) {
      CHECK(std::abs(residual(s, n, k)) <= 1e-12);
      CHECK(n[static_cast<std::size_t>(k)] >= 0.0);
    }
  }
}

TEST_CASE("truncation below the fitting window is rejected") {
  kpr::VariantSpec s = make_spec(kpr::VariantKind::attachment, 1.0, 2.0, 0.0, 40);
  CHECK_THROWS_AS(kpr::variant_steady_profile(s), kpr::parameter_error);
}

TEST_CASE("homogeneous root solves its quadratic and decays") {
  for (kpr::VariantKind kind :
       {kpr::VariantKind::attachment, kpr::VariantKind::dephosphorylation}) {
    const kpr::VariantSpec s = make_spec(kind, 0.8, 1.2, 0.3);
    const double g = kpr::variant_g(s);
    CHECK(g > 0.0);
    CHECK(g < 1.0);
    const double E = s.params.energy_E, D = s.params.delta,
                 sig = s.params.sigma;
    double b, c;
    if (kind == kpr::VariantKind::attachment) {
      b = 1.0 + std::exp(sig - E) + std::exp(-E);
      c = std::exp(-E);
    } else {
      b = 1.0 + std::exp(D - E) + std::exp(sig + D - E);
      c = std::exp(D - E);
    }
    CHECK(std::abs(g * g - b * g + c) <= 1e-12);
    // g is the smaller of the two roots.
    CHECK(g <= b - g + 1e-12);
  }
  CHECK_THROWS_AS(kpr::variant_g(make_spec(kpr::VariantKind::detachment, 1.0, 1.0, 0.0)),
                  kpr::unsupported_regime_error);
}

TEST_CASE("attachment variant: threshold where the source branch loses") {
  const kpr::VariantSpec s = make_spec(kpr::VariantKind::attachment, 1.0, 2.0, 0.0);
  const auto dc = kpr::variant_delta_c(s);
  REQUIRE(dc.has_value());
  // At Delta = Delta_c the source decay e^{-(E+Delta)} equals g.
  CHECK(std::exp(-(s.params.energy_E + *dc)) ==
        doctest::Approx(kpr::variant_g(s)).epsilon(1e-12));
}

TEST_CASE("dephosphorylation variant: critical affinity and its domain") {
  kpr::VariantSpec s = make_spec(kpr::VariantKind::dephosphorylation, 0.5, 0.1,
                                 std::log(0.25 * std::expm1(0.5)));
  const auto dc = kpr::variant_delta_c(s);
  REQUIRE(dc.has_value());
  CHECK(*dc == doctest::Approx(-std::log1p(-0.25)).epsilon(1e-12));
  // With detachment too strong no threshold exists.
  s.params.sigma = 5.0;
  CHECK_FALSE(kpr::variant_delta_c(s).has_value());
  // The detachment variant has no critical affinity at all.
  CHECK_FALSE(
      kpr::variant_delta_c(make_spec(kpr::VariantKind::detachment, 1.0, 1.0, 0.0))
          .has_value());
}

TEST_CASE("attachment variant decays at rate -log g") {
  const kpr::VariantSpec s = make_spec(kpr::VariantKind::attachment, 1.0, 2.0, 0.0);
  const kpr::VariantExponent ve = kpr::variant_exponent(s);
  CHECK(ve.lambda_fit ==
        doctest::Approx(-std::log(kpr::variant_g(s))).epsilon(0.02));
}

TEST_CASE("detachment variant is flat under the combined rescaling") {
  const kpr::VariantSpec s =
      make_spec(kpr::VariantKind::detachment, 0.5, 1.0, 0.0, 100);
  const kpr::VariantExponent ve = kpr::variant_exponent(s);
  // lambda is fitted after multiplying by e^{k(E+Delta)}; flat means ~0.
  CHECK(std::abs(ve.lambda_fit) <= 0.05);
  CHECK_FALSE(ve.sigma_sensitive);
}

TEST_CASE("dephosphorylation sensitivity flips across the threshold") {
  kpr::VariantSpec s = make_spec(kpr::VariantKind::dephosphorylation, 0.5, 0.1,
                                 std::log(0.25 * std::expm1(0.5)), 1000);
  const double dc = *kpr::variant_delta_c(s);
  s.params.delta = dc - 0.2;
  CHECK_FALSE(kpr::variant_exponent(s).sigma_sensitive);
  s.params.delta = dc + 0.2;
  CHECK(kpr::variant_exponent(s).sigma_sensitive);
}

TEST_CASE("one-directional limit approximates the large-affinity ladder") {
  const double E = 1.0, sigma = 0.5, gamma = 1.5;
  const double phi = kpr::delta_infty_phi(sigma, gamma, E);
  CHECK(phi == doctest::Approx(std::exp(E) / (1.0 + std::exp(sigma) / gamma))
                   .epsilon(1e-14));
  const double lam = kpr::delta_infty_lambda(sigma, gamma, E);
  CHECK(lam == doctest::Approx(std::min(E, std::log1p(std::exp(sigma) / gamma)))
                   .epsilon(1e-14));
  CHECK_THROWS_AS(kpr::delta_infty_phi(0.0, 0.0, 1.0), kpr::parameter_error);

  // The one-directional profile itself decays at the limiting exponent.
  kpr::VariantSpec s = make_spec(kpr::VariantKind::delta_infty, E, 0.0, sigma);
  s.gamma = gamma;
  const kpr::VariantExponent ve = kpr::variant_exponent(s);
  CHECK(ve.lambda_fit == doctest::Approx(lam).epsilon(0.02));
}
