#ifndef KPR_PDE_LIMITS_HPP
#define KPR_PDE_LIMITS_HPP

#include <vector>

#include "kpr/params.hpp"

namespace kpr {

/// Parameters of the continuum transport limits; beta = N e^sigma and
/// delta_loss = N mu are the rescaled detachment and degradation rates.
struct PdeParams {
  double beta = 1.0;
  double delta_loss = 0.0;
  double alpha = 1.0;
  double energy_E = 1.0;
  double Delta = 2.0;
  double L = 4.0;   // domain length
  int grid = 400;   // cell count

  void validate_pde1() const;
  void validate_pde2() const;
};

struct PdeField {
  std::vector<double> x;  // cell centers
  std::vector<double> f;  // cell averages
  double m = 0.0;         // PDE2 source amplitude
  double tau_final = 0.0; // time actually integrated
  // Discrete mass book-keeping of the upwind scheme (PDE1):
  double mass0 = 0.0, mass_in = 0.0, mass_out = 0.0, mass_final = 0.0;
};

/// First transport limit (E fixed): advection toward large x at speed
/// alpha(e^Delta - e^E) with re-injection at x=0 proportional to the
/// integral of f.  Run until the normalized profile stabilizes (or to
/// t_final if positive).
PdeField solve_pde1(const PdeParams& p, double t_final = -1.0);

/// Second transport limit (E = 1/N): advection at speed alpha(e^Delta-1)
/// with distributed source e^{-x} m(tau) and f(tau, 0) = 0.
PdeField solve_pde2(const PdeParams& p, double t_final = -1.0);

struct ExponentFit {
  double slope = 0.0;    // d(log f)/dx over the fit window
  double stderr_ = 0.0;  // least-squares standard error of the slope
  double x_lo = 0.0, x_hi = 0.0;
};

/// Least-squares fit of log f over the middle 60% of the domain (or the
/// given sub-window fractions).
ExponentFit fit_exponent(const PdeField& field, double frac_lo = 0.2,
                         double frac_hi = 0.8);

struct PdeDiscreteGap {
  int N = 0;
  double sup_gap = 0.0;
};

/// Compare the PDE solution at time tau with the rescaled discrete ladder
/// (N L sites, e^sigma = beta/N, mu = delta_loss/N) for each N.
std::vector<PdeDiscreteGap> compare_pde_vs_discrete(const PdeParams& p, int which_pde,
                                                    double tau,
                                                    const std::vector<int>& N_list);

}  // namespace kpr

#endif
