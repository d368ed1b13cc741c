#ifndef KPR_ENLARGED_HPP
#define KPR_ENLARGED_HPP

#include <array>
#include <utility>
#include <vector>

#include "kpr/network.hpp"
#include "kpr/params.hpp"

namespace kpr {

/// Parameters of the detailed-balance-complete network with explicit
/// ATP/ADP/P carriers.  The base delta is ignored; the affinity emerges
/// from the carrier concentrations.
struct EnlargedParams {
  ModelParams base;
  double E_T = 0.0, E_D = 0.0, E_P = 0.0;

  void validate() const;
};

/**
 * Concentration vector ordered (n_0..n_N, n_T, n_D, n_P, n_S).
 */
struct EnlargedState {
  std::vector<double> v;

  int N() const { return static_cast<int>(v.size()) - 5; }
  double& nk(int k) { return v[static_cast<std::size_t>(k)]; }
  double nk(int k) const { return v[static_cast<std::size_t>(k)]; }
  double& nT() { return v[v.size() - 4]; }
  double nT() const { return v[v.size() - 4]; }
  double& nD() { return v[v.size() - 3]; }
  double nD() const { return v[v.size() - 3]; }
  double& nP() { return v[v.size() - 2]; }
  double nP() const { return v[v.size() - 2]; }
  double& nS() { return v.back(); }
  double nS() const { return v.back(); }
};

/// Ligand-count conservation vector m1.
std::vector<double> conserved_m1(int N);
/// Phosphate-count conservation vector m2 (coefficients k on the rungs,
/// 2 on ATP, 1 on ADP and P).
std::vector<double> conserved_m2(int N);

/// Mass-action right-hand side of the completed ODE system.
std::vector<double> rhs_enlarged(const EnlargedState& s, const EnlargedParams& p);

/// Analytic Jacobian of rhs_enlarged.
std::vector<std::vector<double>> jacobian_enlarged(const EnlargedState& s,
                                                   const EnlargedParams& p);

/// The Boltzmann steady state e^{-E} with energies
/// (sigma, sigma+E, ..., sigma+NE, E_T, E_D, E_P, 0).
EnlargedState boltzmann_state(const EnlargedParams& p);

/// Stiff (Rosenbrock) integration with step rejection on negativity;
/// conservation is monitored, never projected.
EnlargedState integrate_enlarged(const EnlargedState& s0, const EnlargedParams& p,
                                 double t);

/// Explicit reaction list of the completed network (for cycle checks).
NetworkSpec build_enlarged_network(const EnlargedParams& p);

/// Reduce at frozen carrier concentrations: the derived affinity
/// delta = E_T - E_D - E_P + log(nbar_T/(nbar_P nbar_D)) and the induced
/// ladder network.
std::pair<ModelParams, NetworkSpec> frozen_reduction(double nbar_T, double nbar_D,
                                                     double nbar_P,
                                                     const EnlargedParams& p);

/// Carrier fluxes (J_T, J_D, J_P) required to hold the frozen steady
/// state, in closed form.
std::array<double, 3> external_fluxes(const EnlargedParams& p, double delta);

/// Same fluxes read off the mass-action right-hand side at the frozen
/// state (verification path).
std::array<double, 3> external_fluxes_residual(const EnlargedParams& p, double delta);

}  // namespace kpr

#endif
