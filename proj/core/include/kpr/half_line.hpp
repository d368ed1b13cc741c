#ifndef KPR_HALF_LINE_HPP
#define KPR_HALF_LINE_HPP

#include <complex>
#include <string>
#include <vector>

#include "kpr/analytic.hpp"
#include "kpr/params.hpp"

namespace kpr {

/// Snapshot of the degradation-free half-line model truncated at site K.
struct HalfLineRun {
  int K = 0;
  double t = 0.0;
  double nS = 0.0;
  std::vector<double> n;  // n_0..n_K
  double mass = 0.0;      // nS + sum n_k; conserved up to boundary outflow

  /// Largest site where e^{kE} n_k is at least half its maximum.
  int front_position(double energy_E) const;
};

/// Integrate the half-line ODEs to time t on a K+1-site lattice with the
/// absorbing closure n_{K+1}=0.  Errors out if the front reaches within
/// 10 sites of K or the boundary outflow exceeds 1e-8 of the mass.
HalfLineRun integrate_halfline(const ModelParams& p, double t, int K);

/// Same, doubling K until the truncation checks pass.
HalfLineRun integrate_halfline_auto(const ModelParams& p, double t, int K0);

/// Laplace-domain occupation A(z) nS_hat(z) e^{-kE} (1 + B(z) varphi(z)^k).
std::complex<double> closed_form_nk_hat(int k, std::complex<double> z,
                                        const ModelParams& p);

/// Fixed-Talbot numerical inversion of the closed form, self-checked against
/// a coarser quadrature order (4/5 of the requested one).
double talbot_invert(int k, double t, const ModelParams& p, int order = 40);

struct TheoremRow {
  double theta = 0.0;
  double tau = 0.0;
  int k = 0;
  double ratio = 0.0;  // n_k(t) / target scaling
  double gap = 0.0;    // |ratio - limit|
};

struct TheoremTable {
  std::vector<TheoremRow> rows;
  double limit = 0.0;
  std::string target;  // description of the scaling used
};

/// Measure n_{⌊θτ⌋}(t(τ)) against the theorem's scaling and limit for each
/// τ in the list.  The target depends on the regime and, in the
/// supercritical case, on the position of w_theta relative to w_S.
TheoremTable verify_theorem_5(double theta, const std::vector<double>& tau_list,
                              const ModelParams& p);

}  // namespace kpr

#endif
