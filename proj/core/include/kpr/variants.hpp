#ifndef KPR_VARIANTS_HPP
#define KPR_VARIANTS_HPP

#include <optional>
#include <vector>

#include "kpr/params.hpp"

namespace kpr {

enum class VariantKind {
  detachment,         // detach rate e^{sigma + k Delta}
  attachment,         // attach rate e^{-k(E + Delta)}
  dephosphorylation,  // dephosph rate alpha e^{E - Delta}
  delta_infty         // one-directional limit, gamma = alpha e^Delta fixed
};

struct VariantSpec {
  VariantKind kind = VariantKind::detachment;
  ModelParams params;
  double gamma = 1.0;  // only for delta_infty
  int K = 100;         // lattice truncation

  void validate() const;
};

/// Stationary profile (relative to the free-ligand drive) of the variant
/// lattice with the absorbing closure at K.
std::vector<double> variant_steady_profile(const VariantSpec& spec);

/// Decaying homogeneous root g(sigma) of the attachment (8.2) or
/// dephosphorylation (8.3) variant recursion.
double variant_g(const VariantSpec& spec);

/// Critical affinity of the variant, when one exists.
std::optional<double> variant_delta_c(const VariantSpec& spec);

struct VariantExponent {
  double lambda_fit = 0.0;   // decay exponent of the profile (positive)
  double stderr_ = 0.0;      // least-squares slope standard error
  bool sigma_sensitive = false;
};

/// Least-squares exponent over k in [K/4, 3K/4] plus a sigma-sensitivity
/// flag (recomputed at sigma +- 0.5).  For the detachment variant the fit
/// is done under the e^{k(E+Delta)} normalization.
VariantExponent variant_exponent(const VariantSpec& spec);

/// Large-Delta limit of the small root: e^E/(1 + e^sigma/gamma).
double delta_infty_phi(double sigma, double gamma, double E);

/// Limiting response exponent min(E, log(1 + e^sigma/gamma)).
double delta_infty_lambda(double sigma, double gamma, double E);

}  // namespace kpr

#endif
