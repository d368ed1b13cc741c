#ifndef KPR_ERRORS_HPP
#define KPR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kpr {

/// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid or out-of-range model parameters.
struct parameter_error : error {
  explicit parameter_error(const std::string& msg) : error(msg) {}
};

/// Malformed network topology (e.g. a cycle is missing its reverse reaction).
struct structure_error : error {
  explicit structure_error(const std::string& msg) : error(msg) {}
};

/// A root-finding bracket does not contain a root.
struct no_root_error : error {
  explicit no_root_error(const std::string& msg) : error(msg) {}
};

/// Requested quantity undefined in the current regime.
struct unsupported_regime_error : error {
  explicit unsupported_regime_error(const std::string& msg) : error(msg) {}
};

/// Comparison quantities tie within tolerance; classification refused.
struct ambiguous_regime_error : error {
  explicit ambiguous_regime_error(const std::string& msg) : error(msg) {}
};

/// Evaluation point on (or too close to) the branch segment or a pole.
struct branch_cut_error : error {
  explicit branch_cut_error(const std::string& msg) : error(msg) {}
};

/// Singular or near-singular linear system.
struct degenerate_parameter_error : error {
  explicit degenerate_parameter_error(const std::string& msg) : error(msg) {}
};

/// Adaptive time stepping failed (step-size underflow).
struct stiffness_error : error {
  explicit stiffness_error(const std::string& msg) : error(msg) {}
};

/// Lattice truncation too small for the requested observable.
struct truncation_error : error {
  explicit truncation_error(const std::string& msg) : error(msg) {}
};

/// Numerical inverse Laplace transform failed its self-check.
struct inversion_error : error {
  explicit inversion_error(const std::string& msg) : error(msg) {}
};

/// Generic numerical-step failure (CFL violation, underflow, ...).
struct step_error : error {
  explicit step_error(const std::string& msg) : error(msg) {}
};

/// Configuration / CLI input problems.
struct config_error : error {
  explicit config_error(const std::string& msg) : error(msg) {}
};

}  // namespace kpr

#endif
