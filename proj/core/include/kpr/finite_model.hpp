#ifndef KPR_FINITE_MODEL_HPP
#define KPR_FINITE_MODEL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kpr/analytic.hpp"
#include "kpr/params.hpp"

namespace kpr {

/// Probability vector (n_S, n_0..n_N) of the finite ladder.
struct StateVector {
  double nS = 0.0;
  std::vector<double> n;  // n_0..n_N

  double M() const;  // total ligand mass
};

/**
 * The (N+2)x(N+2) generator of the ladder ODEs, stored both in its
 * structured form (arrowhead S row/column + tridiagonal C block) and
 * densely for verification.
 *
 * State ordering: index 0 = S, index 1+k = C_k.
 */
struct Generator {
  int N = 0;
  double mu = 0.0;
  // C-block tridiagonal (row k couples to k-1 and k+1).
  std::vector<double> diag;   // size N+1
  double sub = 0.0;           // alpha e^delta  (gain from k-1)
  double super = 0.0;         // alpha e^E      (gain from k+1)
  // Arrowhead couplings.
  std::vector<double> attach;  // e^{-kE}, column S into row C_k
  double detach = 0.0;         // e^sigma, every C_k into row S
  double diag_S = 0.0;

  Eigen::MatrixXd dense() const;
};

Generator build_generator(const ModelParams& p);

/// Solve (s*I - A) y = rhs through the arrowhead elimination, with one
/// pass of iterative refinement when the residual warrants it.  s >= 0.
std::vector<double> solve_shifted(const Generator& g, double s,
                                  const std::vector<double>& rhs);

/// Time-integrated occupations x = -A^{-1} n(0), n(0) = e_S.
std::vector<double> integrated_occupation(const ModelParams& p);

/// Response probability alpha e^delta x_N from the exact linear solve.
double pres_exact(const ModelParams& p);

/// Same quantity through a dense partial-pivot LU (verification path).
double pres_exact_dense(const ModelParams& p);

/// (1/N) log(1/p_res - 1), evaluated in log space.
double log_odds_exact(const ModelParams& p);

/// Trajectory of the ladder ODEs on the given increasing time grid.
/// Dense matrix exponential for N <= 12, L-stable TR-BDF2 above.
std::vector<StateVector> integrate_trajectory(const ModelParams& p,
                                              const std::vector<double>& t_grid);

/// Same, from an arbitrary initial state.
std::vector<StateVector> integrate_trajectory(const ModelParams& p,
                                              const std::vector<double>& t_grid,
                                              const StateVector& init);

struct SweepResult {
  std::vector<double> sigma_grid;
  std::vector<double> pres;
  std::vector<double> log_odds;
  std::vector<std::string> point_errors;  // empty string when the point succeeded
  ModelParams params;
};

SweepResult sweep_sigma(const ModelParams& p, const std::vector<double>& sigma_grid,
                        int workers = 0);

/**
 * Exact z=0 solution in closed form: n_k = e^{-kE}(A_mu nS + F1 phi^k +
 * F2 phi2^k) with the absorbing closure n_{N+1} = 0.  The degradation
 * rate is carried exactly (Omega(0) + mu in the root quadratic), so this
 * reproduces the linear solve to rounding.
 */
struct ClosedFormStationary {
  int N = 0;
  double nS_hat = 0.0;
  double A_mu = 0.0;
  double F1 = 0.0, F2 = 0.0;
  double G2 = 0.0;  // F2 * phi2^{N+1}, the well-scaled unknown
  double phi = 0.0, phi2 = 0.0;
  double energy_E = 0.0;
  double pres = 0.0;

  double n_hat(int k) const;
};

ClosedFormStationary closed_form_stationary(const ModelParams& p);

struct ProfileComparison {
  std::vector<double> profile;     // x_k / x_S from the exact solve
  std::vector<double> prediction;  // closed-form (or critical k e^{-kE}) shape
  double max_rel_dev = 0.0;        // over the mid-ladder window
  int k_lo = 0, k_hi = 0;          // window used
  Regime regime = Regime::subcritical;
};

ProfileComparison quasi_steady_profile(const ModelParams& p);

}  // namespace kpr

#endif
