#ifndef KPR_MC_HPP
#define KPR_MC_HPP

#include <array>
#include <cstdint>

#include "kpr/params.hpp"

namespace kpr {

/// Philox4x32-10 counter-based generator (Salmon et al. 2011).  Streams are
/// keyed by (seed, stream) so parallel trials are bitwise reproducible
/// regardless of scheduling.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream);

  /// Next 64 random bits.
  std::uint64_t next_u64();
  /// Uniform draw in (0, 1].
  double uniform();
  /// Exponential draw with the given rate.
  double exponential(double rate);

 private:
  std::array<std::uint32_t, 4> block();

  std::uint32_t key_[2];
  std::uint64_t counter_ = 0;
  std::uint64_t stream_;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;  // force refill on first use
};

enum class TrialResult { response, degraded };

struct TrialOutcome {
  TrialResult outcome = TrialResult::degraded;
  double absorption_time = 0.0;
  std::uint64_t path_length = 0;  // number of jump events
};

/// Simulate one ligand from the free state until absorption (response from
/// the top rung, or degradation anywhere).  Requires mu > 0.  Trials running
/// past 1e9 events abort with step_error.
TrialOutcome simulate_ligand(const ModelParams& params, std::uint64_t seed,
                             std::uint64_t trial = 0);

struct PresEstimate {
  double p_hat = 0.0;
  double stderr_ = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t responses = 0;
};

/// Binomial response-probability estimate over independent trials, with
/// per-trial derived streams; the result is independent of worker count.
PresEstimate estimate_pres(const ModelParams& params, std::uint64_t trials,
                           std::uint64_t seed, int workers = 0);

}  // namespace kpr

#endif
