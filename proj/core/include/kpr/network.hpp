#ifndef KPR_NETWORK_HPP
#define KPR_NETWORK_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kpr/params.hpp"

namespace kpr {

/// One mass-action reaction; multiplicity is encoded by repetition.
struct Reaction {
  std::vector<std::string> reactants;
  std::vector<std::string> products;
  double rate = 0.0;
};

/**
 * Explicit reaction list with named species.
 *
 * Covers the ladder topology (S, C0..CN, out, deg) and the completed
 * network with ATP/ADP/P carriers.
 */
struct NetworkSpec {
  std::vector<std::string> species;
  std::vector<Reaction> reactions;

  /// Index of the reaction with the given (unordered) reactant/product
  /// multisets, or -1 if absent.
  int find(const std::vector<std::string>& reactants,
           const std::vector<std::string>& products) const;

  /// Index of the reverse of reaction i, or -1 if the network lacks it.
  int find_reverse(int i) const;

  /// Number of ladder rungs (species named C0..CN), or -1.
  int ladder_N() const;
};

struct CycleReport {
  int cycle_index = 0;
  double delta_k = 0.0;
  bool balanced = false;
};

/// Build the N-step proofreading ladder with rates
///   attach  S -> Ck        e^{-kE}
///   detach  Ck -> S        e^{sigma}
///   phos    Ck -> Ck+1     alpha e^{delta}
///   dephos  Ck -> Ck-1     alpha e^{E}
///   output  CN -> out      alpha e^{delta}
///   decay   S, Ck -> deg   mu
NetworkSpec build_ladder(const ModelParams& params);

/// Affinity of the elementary cycle S -> Ck -> Ck+1 -> S:
/// log of the forward over backward rate products.
double cycle_delta(const NetworkSpec& net, int k);

/// Affinity of a general closed path given by forward reaction indices;
/// each reaction must have a reverse present in the network.
double cycle_delta_path(const NetworkSpec& net, std::span<const int> path);

/// Check |delta_k| <= tol on every basis cycle of the network.
std::pair<bool, std::vector<CycleReport>> wegscheider_holds(
    const NetworkSpec& net, double tol = 1e-10);

/// Line-oriented text form: "reactants -> products @ rate".
std::string to_text(const NetworkSpec& net);

}  // namespace kpr

#endif
