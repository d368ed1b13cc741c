#ifndef KPR_PARAMS_HPP
#define KPR_PARAMS_HPP

#include <cmath>
#include <optional>

#include "kpr/errors.hpp"

namespace kpr {

/**
 * Scalar parameters of the proofreading ladder.
 *
 * Time units are chosen so that the attachment prefactor is 1; the
 * detachment rate is then e^sigma, phosphorylation runs at alpha*e^delta,
 * dephosphorylation at alpha*e^E and every ligand-carrying species is
 * degraded at rate mu.  When the decay exponent b is supplied instead of
 * mu, we set mu = e^{-b*N} exactly.
 */
struct ModelParams {
  int N = 1;                  // number of phosphorylation steps (>= 1)
  double alpha = 1.0;         // internal-rate scale (> 0)
  double delta = 0.0;         // cycle affinity (lack of detailed balance)
  double sigma = 0.0;         // binding energy: detach rate e^sigma
  double energy_E = 1.0;      // per-step energy E (> 0)
  std::optional<double> b;    // degradation exponent; mu = e^{-b N}
  std::optional<double> mu_explicit;  // explicit degradation rate

  double mu() const {
    if (b) return std::exp(-(*b) * static_cast<double>(N));
    if (mu_explicit) return *mu_explicit;
    return 0.0;  // degradation-free variants (half-line model)
  }

  bool has_degradation() const { return b.has_value() || mu_explicit.has_value(); }

  void validate() const {
    if (N < 1) throw parameter_error("ModelParams: N must be >= 1");
    if (!(alpha > 0.0)) throw parameter_error("ModelParams: alpha must be > 0");
    if (!(energy_E > 0.0)) throw parameter_error("ModelParams: energy_E must be > 0");
    if (!std::isfinite(delta) || !std::isfinite(sigma))
      throw parameter_error("ModelParams: delta/sigma must be finite");
    if (has_degradation() && !(mu() > 0.0))
      throw parameter_error("ModelParams: resolved mu must be > 0");
  }

  ModelParams with_sigma(double s) const {
    ModelParams p = *this;
    p.sigma = s;
    return p;
  }
};

}  // namespace kpr

#endif
