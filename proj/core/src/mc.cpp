#include "kpr/mc.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <vector>

#include "kpr/errors.hpp"

namespace kpr {

namespace {

constexpr std::uint64_t kMaxEvents = 1000000000ULL;

inline std::uint32_t mulhi(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) >> 32);
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream) : stream_(stream) {
  key_[0] = static_cast<std::uint32_t>(seed);
  key_[1] = static_cast<std::uint32_t>(seed >> 32);
}

std::array<std::uint32_t, 4> Philox::block() {
  std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
  std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
  std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    const std::uint32_t hi0 = mulhi(0xD2511F53u, c0);
    const std::uint32_t lo0 = 0xD2511F53u * c0;
    const std::uint32_t hi1 = mulhi(0xCD9E8D57u, c2);
    const std::uint32_t lo1 = 0xCD9E8D57u * c2;
    const std::uint32_t n0 = hi1 ^ c1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c3 ^ k1;
    const std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += 0x9E3779B9u;  // golden-ratio key schedule
    k1 += 0xBB67AE85u;
  }
  ++counter_;
  return {c0, c1, c2, c3};
}

std::uint64_t Philox::next_u64() {
  if (buf_pos_ >= 4) {
    buf_ = block();
    buf_pos_ = 0;
  }
  const std::uint64_t lo = buf_[static_cast<std::size_t>(buf_pos_)];
  const std::uint64_t hi = buf_[static_cast<std::size_t>(buf_pos_ + 1)];
  buf_pos_ += 2;
  return (hi << 32) | lo;
}

double Philox::uniform() {
  // 53-bit mantissa draw in (0, 1]; never returns 0 so log() is safe.
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
}

double Philox::exponential(double rate) { return -std::log(uniform()) / rate; }

TrialOutcome simulate_ligand(const ModelParams& params, std::uint64_t seed,
                             std::uint64_t trial) {
  params.validate();
  const double mu = params.mu();
  if (!(mu > 0.0))
    throw parameter_error("simulate_ligand: degradation rate must be positive");

  const int N = params.N;
  const double alpha = params.alpha;
  const double detach = std::exp(params.sigma);
  const double phos = alpha * std::exp(params.delta);
  const double dephos = alpha * std::exp(params.energy_E);
  std::vector<double> attach(static_cast<std::size_t>(N) + 1);
  double attach_total = 0.0;
  for (int k = 0; k <= N; ++k) {
    attach[static_cast<std::size_t>(k)] = std::exp(-k * params.energy_E);
    attach_total += attach[static_cast<std::size_t>(k)];
  }

  Philox rng(seed, trial);
  TrialOutcome out;
  int state = -1;  // -1 = free ligand, otherwise rung index
  double t = 0.0;

  while (true) {
    if (out.path_length >= kMaxEvents)
      throw step_error("simulate_ligand: trial exceeded 1e9 events");
    double total;
    if (state < 0) {
      total = attach_total + mu;
    } else {
      total = detach + mu;
      if (state < N) total += phos;
      if (state > 0) total += dephos;
      if (state == N) total += phos;  // output channel shares the phos rate
    }
    t += rng.exponential(total);
    double u = rng.uniform() * total;
    ++out.path_length;

    if (state < 0) {
      if (u < mu) {
        out.outcome = TrialResult::degraded;
        break;
      }
      u -= mu;
      int k = 0;
      while (k < N && u >= attach[static_cast<std::size_t>(k)]) {
        u -= attach[static_cast<std::size_t>(k)];
        ++k;
      }
      state = k;
      continue;
    }
    if (u < mu) {
      out.outcome = TrialResult::degraded;
      break;
    }
    u -= mu;
    if (u < detach) {
      state = -1;
      continue;
    }
    u -= detach;
    if (state == N) {
      if (u < phos) {
        out.outcome = TrialResult::response;
        break;
      }
      u -= phos;
      state = N - 1;  // dephosphorylation
      continue;
    }
    if (u < phos) {
      ++state;
      continue;
    }
    u -= phos;
    --state;  // only remaining channel (state > 0 here)
  }
  out.absorption_time = t;
  return out;
}

PresEstimate estimate_pres(const ModelParams& params, std::uint64_t trials,
                           std::uint64_t seed, int workers) {
  if (trials < 1) throw parameter_error("estimate_pres: trials must be >= 1");
  params.validate();
  if (workers <= 0)
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), trials));

  // Fixed chunking by trial index: the response count is a sum of
  // per-trial indicators, so the split cannot affect the result.
  std::vector<std::future<std::uint64_t>> parts;
  const std::uint64_t chunk = (trials + static_cast<std::uint64_t>(workers) - 1) /
                              static_cast<std::uint64_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
    const std::uint64_t hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    parts.push_back(std::async(std::launch::async, [&, lo, hi]() {
      std::uint64_t hits = 0;
      for (std::uint64_t i = lo; i < hi; ++i)
        if (simulate_ligand(params, seed, i).outcome == TrialResult::response)
          ++hits;
      return hits;
    }));
  }
  std::uint64_t responses = 0;
  for (auto& p : parts) responses += p.get();

  PresEstimate est;
  est.trials = trials;
  est.responses = responses;
  est.p_hat = static_cast<double>(responses) / static_cast<double>(trials);
  est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                          static_cast<double>(trials));
  return est;
}

}  // namespace kpr
