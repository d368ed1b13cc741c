#include "kpr/variants.hpp"

#include <cmath>

#include "kpr/errors.hpp"

namespace kpr {

namespace {

// Solve the stationary tridiagonal system
//   sub[k] x_{k-1} + diag[k] x_k + sup[k] x_{k+1} = -src[k]
// with the absorbing closure x_{K+1} = 0.
std::vector<double> thomas(const std::vector<double>& diag,
                           const std::vector<double>& sub,
                           const std::vector<double>& sup,
                           const std::vector<double>& src) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> c(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n));
  double den = diag[0];
  if (den == 0.0) throw degenerate_parameter_error("variant solve: zero pivot");
  c[0] = sup[0] / den;
  d[0] = -src[0] / den;
  for (int i = 1; i < n; ++i) {
    den = diag[static_cast<std::size_t>(i)] - sub[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i - 1)];
    if (den == 0.0) throw degenerate_parameter_error("variant solve: zero pivot");
    c[static_cast<std::size_t>(i)] = sup[static_cast<std::size_t>(i)] / den;
    d[static_cast<std::size_t>(i)] =
        (-src[static_cast<std::size_t>(i)] - sub[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i - 1)]) / den;
  }
  std::vector<double> x(static_cast<std::size_t>(n));
  x[static_cast<std::size_t>(n - 1)] = d[static_cast<std::size_t>(n - 1)];
  for (int i = n - 2; i >= 0; --i)
    x[static_cast<std::size_t>(i)] =
        d[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)];
  return x;
}

struct SlopeFit {
  double slope, stderr_;
};

SlopeFit fit_log_slope(const std::vector<double>& y, int k_lo, int k_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  std::vector<double> xs, ys;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double v = y[static_cast<std::size_t>(k)];
    if (!(v > 0.0)) continue;
    const double ly = std::log(v);
    xs.push_back(k);
    ys.push_back(ly);
    sx += k;
    sy += ly;
    sxx += static_cast<double>(k) * k;
    sxy += k * ly;
    ++n;
  }
  if (n < 4) throw degenerate_parameter_error("variant_exponent: too few positive sites");
  const double det = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[static_cast<std::size_t>(i)] -
                     (intercept + slope * xs[static_cast<std::size_t>(i)]);
    rss += r * r;
  }
  return {slope, std::sqrt(rss / std::max(1, n - 2) * n / det)};
}

}  // namespace

void VariantSpec::validate() const {
  params.validate();
  if (K < 50) throw parameter_error("VariantSpec: K must be >= 50 for exponent fits");
  if (kind == VariantKind::delta_infty && !(gamma > 0.0))
    throw parameter_error("VariantSpec: gamma must be > 0");
}

std::vector<double> variant_steady_profile(const VariantSpec& spec) {
  spec.validate();
  const int K = spec.K;
  const double alpha = spec.params.alpha;
  const double E = spec.params.energy_E;
  const double D = spec.params.delta;
  const double sigma = spec.params.sigma;

  std::vector<double> diag(static_cast<std::size_t>(K) + 1),
      sub(static_cast<std::size_t>(K) + 1, 0.0), sup(static_cast<std::size_t>(K) + 1, 0.0),
      src(static_cast<std::size_t>(K) + 1);

  double phos, dephos;
  switch (spec.kind) {
    case VariantKind::detachment:
      phos = alpha;
      dephos = alpha * std::exp(E);
      for (int k = 0; k <= K; ++k) {
        src[static_cast<std::size_t>(k)] = std::exp(-k * E);
        const double detach = std::exp(sigma + k * D);
        diag[static_cast<std::size_t>(k)] =
            -(detach + phos + (k > 0 ? dephos : 0.0));
        if (k > 0) sub[static_cast<std::size_t>(k)] = phos;
        if (k < K) sup[static_cast<std::size_t>(k)] = dephos;
      }
      break;
    case VariantKind::attachment:
      phos = alpha;
      dephos = alpha * std::exp(E);
      for (int k = 0; k <= K; ++k) {
        src[static_cast<std::size_t>(k)] = std::exp(-k * (E + D));
        diag[static_cast<std::size_t>(k)] =
            -(std::exp(sigma) + phos + (k > 0 ? dephos : 0.0));
        if (k > 0) sub[static_cast<std::size_t>(k)] = phos;
        if (k < K) sup[static_cast<std::size_t>(k)] = dephos;
      }
      break;
    case VariantKind::dephosphorylation:
      phos = alpha;
      dephos = alpha * std::exp(E - D);
      for (int k = 0; k <= K; ++k) {
        src[static_cast<std::size_t>(k)] = std::exp(-k * E);
        diag[static_cast<std::size_t>(k)] =
            -(std::exp(sigma) + phos + (k > 0 ? dephos : 0.0));
        if (k > 0) sub[static_cast<std::size_t>(k)] = phos;
        if (k < K) sup[static_cast<std::size_t>(k)] = dephos;
      }
      break;
    case VariantKind::delta_infty:
      // One-directional ladder: phosphorylation gamma, no dephosphorylation.
      for (int k = 0; k <= K; ++k) {
        src[static_cast<std::size_t>(k)] = std::exp(-k * E);
        diag[static_cast<std::size_t>(k)] = -(std::exp(sigma) + spec.gamma);
        if (k > 0) sub[static_cast<std::size_t>(k)] = spec.gamma;
      }
      break;
  }
  return thomas(diag, sub, sup, src);
}

double variant_g(const VariantSpec& spec) {
  const double alpha = spec.params.alpha;
  const double E = spec.params.energy_E;
  const double D = spec.params.delta;
  const double sigma = spec.params.sigma;
  double b, c;  // g^2 - b g + c = 0, g the smaller root
  switch (spec.kind) {
    case VariantKind::attachment:
      b = 1.0 + std::exp(sigma - E) / alpha + std::exp(-E);
      c = std::exp(-E);
      break;
    case VariantKind::dephosphorylation:
      b = 1.0 + std::exp(D - E) + std::exp(sigma + D - E) / alpha;
      c = std::exp(D - E);
      break;
    default:
      throw unsupported_regime_error("variant_g: defined for attachment/dephosphorylation");
  }
  const double big = 0.5 * (b + std::sqrt(std::max(b * b - 4.0 * c, 0.0)));
  return c / big;
}

std::optional<double> variant_delta_c(const VariantSpec& spec) {
  const double alpha = spec.params.alpha;
  const double E = spec.params.energy_E;
  const double sigma = spec.params.sigma;
  switch (spec.kind) {
    case VariantKind::attachment:
      // g is Delta-free; the source branch e^{-k(E+Delta)} loses to g^k
      // once e^{E+Delta} g > 1.
      return -E - std::log(variant_g(spec));
    case VariantKind::dephosphorylation: {
      const double u = std::exp(sigma - E) / (alpha * (1.0 - std::exp(-E)));
      if (u >= 1.0) return std::nullopt;
      return -std::log1p(-u);
    }
    default:
      return std::nullopt;
  }
}

VariantExponent variant_exponent(const VariantSpec& spec) {
  spec.validate();
  const int k_lo = spec.K / 4, k_hi = 3 * spec.K / 4;
  const double E = spec.params.energy_E, D = spec.params.delta;

  auto exponent_at = [&](double sigma) {
    VariantSpec s = spec;
    s.params.sigma = sigma;
    std::vector<double> prof = variant_steady_profile(s);
    if (spec.kind == VariantKind::detachment) {
      for (int k = 0; k < static_cast<int>(prof.size()); ++k)
        prof[static_cast<std::size_t>(k)] *= std::exp(k * (E + D));
    }
    const SlopeFit f = fit_log_slope(prof, k_lo, k_hi);
    return std::pair<double, double>{-f.slope, f.stderr_};
  };

  const auto [lam, se] = exponent_at(spec.params.sigma);
  VariantExponent out;
  out.lambda_fit = lam;
  out.stderr_ = se;
  const auto [lam_hi, se_hi] = exponent_at(spec.params.sigma + 0.5);
  const auto [lam_lo, se_lo] = exponent_at(spec.params.sigma - 0.5);
  (void)se_hi;
  (void)se_lo;
  // Threshold floor absorbs truncation bias when the fit is near-exact.
  const double thresh = std::max(5.0 * se, 5e-3);
  out.sigma_sensitive =
      std::abs(lam_hi - lam) > thresh || std::abs(lam_lo - lam) > thresh;
  return out;
}

double delta_infty_phi(double sigma, double gamma, double E) {
  if (!(gamma > 0.0)) throw parameter_error("delta_infty_phi: gamma must be > 0");
  return std::exp(E) / (1.0 + std::exp(sigma) / gamma);
}

double delta_infty_lambda(double sigma, double gamma, double E) {
  if (!(gamma > 0.0)) throw parameter_error("delta_infty_lambda: gamma must be > 0");
  return std::min(E, std::log1p(std::exp(sigma) / gamma));
}

}  // namespace kpr
