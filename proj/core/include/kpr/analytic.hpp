#ifndef KPR_ANALYTIC_HPP
#define KPR_ANALYTIC_HPP

#include <complex>
#include <string>

#include "kpr/params.hpp"

namespace kpr {

enum class Regime { subcritical, critical, supercritical };

std::string to_string(Regime r);

/**
 * All closed-form steady-state and asymptotic constants of the ladder
 * model at one parameter point.
 *
 * phi and phi2 are the two roots of alpha*phi^2 - Omega(0)*phi +
 * alpha*e^{delta+E} = 0 with phi <= phi2; the response exponent is
 * lambda = E below the critical affinity and psi = E - log(phi) above it.
 */
struct AnalyticReport {
  double delta_c = 0.0;   // critical affinity at this sigma
  double phi = 0.0;       // small root
  double phi2 = 0.0;      // large root
  double psi = 0.0;       // E - log(phi)
  double lambda = 0.0;    // active decay exponent
  double nbar_S = 0.0;    // quasi-steady free-ligand fraction
  Regime regime = Regime::subcritical;

  // Amplitude constants; undefined on the critical line.
  bool constants_available = false;
  double A0 = 0.0;  // 1/(e^sigma - alpha(e^delta-1)(e^E-1))
  double B0 = 0.0;  // boundary-layer amplitude, z=0 value
  double G = 0.0;   // rung-0 amplitude
  double C1 = 0.0;  // subcritical response constant
  double C2 = 0.0;  // supercritical response constant
  bool C2_positive = true;
};

/// Critical affinity log(1 + e^sigma/(alpha(e^E - 1))).
double delta_c(const ModelParams& p);

/// Small root phi at the given detachment energy (p.sigma ignored).
double phi_root(const ModelParams& p, double sigma);

AnalyticReport compute_report(const ModelParams& p);

/// Solve lambda(sigma_c) = b by bisection; requires max{E-delta,0} < b < E.
double sigma_c(double b, const ModelParams& p);

/// Asymptotic response probability (1 + C e^{N(lambda-b)})^{-1},
/// evaluated in log-odds space.
double asymptotic_pres(const ModelParams& p);

/// log(1/p - 1) = N(lambda - b) + log C for the asymptotic predictor.
double asymptotic_log_odds(const ModelParams& p);

/**
 * z-dependent Laplace-domain objects of the half-line solution.
 *
 * theta1/theta2 are the roots of alpha e^E theta^2 - Omega(z) theta +
 * alpha e^delta = 0 with |theta1| <= |theta2| (the branch that continues
 * the principal-root formula off the branch segment [z1, z2]);
 * varphi = e^E theta1.
 */
struct LaplaceKernel {
  std::complex<double> z;
  std::complex<double> Omega;
  std::complex<double> A;        // 1/(z - z_A)
  std::complex<double> nS_hat;   // (z + e^sigma)/(z (z - z_S))
  std::complex<double> theta1, theta2;
  std::complex<double> varphi;
  std::complex<double> B;
  double z_S = 0.0;  // free-ligand relaxation pole
  double z_A = 0.0;  // zero of 1/A
  double z1 = 0.0, z2 = 0.0;  // branch segment endpoints, z1 <= z2 < 0
};

LaplaceKernel kernel_at(std::complex<double> z, const ModelParams& p);

enum class ThetaCase {
  case1,  // w0 > w_theta > wS
  case2,  // w0 > wS > w_theta
  case3   // w_theta > w0 > wS
};

ThetaCase classify_theta_regime(double theta, const ModelParams& p);

/**
 * Saddle-point bookkeeping in the w-plane: w_theta = sqrt(1+theta^2) is
 * the minimizer of Phi(w) = w - theta log(w + sqrt(w^2-1)), and
 * PsiM(theta) = Phi(w_theta) + theta (E+delta)/2 peaks at
 * theta_M = sinh((E+delta)/2) with value cosh((E+delta)/2).
 */
struct SaddleData {
  double alpha, delta, energy_E;
  double w0, wS, wA, theta_M;

  double tau(double t) const;         // 2 alpha e^{(E+delta)/2} t
  double t_of_tau(double tau) const;
  static double w_theta(double theta);
  static double Phi(double w, double theta);
  double PsiM(double theta) const;
};

SaddleData saddle_data(const ModelParams& p);

}  // namespace kpr

#endif
