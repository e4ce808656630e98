#include "spinpair/monte_carlo.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace spinpair {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox_round(
    const std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c[2];
  return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
          static_cast<std::uint32_t>(p0)};
}

constexpr std::uint64_t kChunkTrials = 1u << 16;
constexpr double kEnvelopeSlack = 1e-12;

struct ChunkStat {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t proposals = 0;
};

void check_sampling_seed(const CovariantSeed& seed) {
  if (!is_admissible(seed, MeasurementClass::CollectiveParallel) &&
      !is_admissible(seed, MeasurementClass::CollectiveAntiparallel))
    throw std::invalid_argument(
        "sampling seed must be admissible for the parallel or antiparallel class");
}

BlochVector sample_outcome_impl(const CovariantSeed& seed, const BlochVector& m,
                                PhiloxRng& rng, double envelope,
                                std::uint64_t& proposals) {
  for (;;) {
    ++proposals;
    const BlochVector n = sample_uniform_direction(rng);
    const double ratio = outcome_density(seed, n, m) / envelope;
    if (ratio > 1.0 + kEnvelopeSlack)
      throw std::logic_error("sample_outcome: rejection envelope violated");
    if (rng.next_double() < ratio) return n;
  }
}

// Runs one chunk statistic per substream and combines them in chunk order, so
// the report depends only on (seed arguments, trials, rng_seed).
template <typename PerTrial>
SimulationReport run_chunks(std::uint64_t trials, std::uint64_t rng_seed,
                            int workers, const PerTrial& per_trial) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");

  const std::uint64_t chunk_count = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<ChunkStat> stats(chunk_count);

  const auto run_range = [&](std::uint64_t begin, std::uint64_t stride) {
    for (std::uint64_t ci = begin; ci < chunk_count; ci += stride) {
      PhiloxRng rng(rng_seed, ci);
      const std::uint64_t first = ci * kChunkTrials;
      const std::uint64_t count = std::min(kChunkTrials, trials - first);
      ChunkStat stat;
      for (std::uint64_t t = 0; t < count; ++t) {
        const double x = per_trial(rng, stat.proposals);
        stat.sum += x;
        stat.sum_sq += x * x;
      }
      stats[ci] = stat;
    }
  };

  if (workers <= 0)
    workers = static_cast<int>(
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8));
  if (workers == 1 || chunk_count == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::future<void>> futures;
    for (int w = 0; w < workers; ++w)
      futures.push_back(std::async(std::launch::async, run_range,
                                   static_cast<std::uint64_t>(w),
                                   static_cast<std::uint64_t>(workers)));
    for (auto& f : futures) f.get();
  }

  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t proposals = 0;
  for (const ChunkStat& stat : stats) {
    sum += stat.sum;
    sum_sq += stat.sum_sq;
    proposals += stat.proposals;
  }

  SimulationReport report;
  report.trials = trials;
  report.rng_seed = rng_seed;
  report.mean_fidelity = sum / static_cast<double>(trials);
  if (trials >= 2) {
    const double n = static_cast<double>(trials);
    const double variance =
        std::max(0.0, (sum_sq - n * report.mean_fidelity * report.mean_fidelity) /
                          (n - 1.0));
    report.standard_error = std::sqrt(variance / n);
  }
  report.acceptance_rate =
      proposals == 0 ? 1.0
                     : static_cast<double>(trials) / static_cast<double>(proposals);
  return report;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = philox_round(counter, key);
  }
  return counter;
}

PhiloxRng::PhiloxRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

std::uint32_t PhiloxRng::next_u32() {
  if (buffer_pos_ == 4) {
    buffer_ = philox4x32_10({static_cast<std::uint32_t>(block_),
                             static_cast<std::uint32_t>(block_ >> 32),
                             static_cast<std::uint32_t>(stream_),
                             static_cast<std::uint32_t>(stream_ >> 32)},
                            key_);
    ++block_;
    buffer_pos_ = 0;
  }
  return buffer_[buffer_pos_++];
}

std::uint64_t PhiloxRng::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double PhiloxRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

BlochVector sample_uniform_direction(PhiloxRng& rng) {
  const double z = 2.0 * rng.next_double() - 1.0;
  const double phi = 2.0 * M_PI * rng.next_double();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return BlochVector(s * std::cos(phi), s * std::sin(phi), z);
}

double density_envelope(const CovariantSeed& seed) {
  const double alpha = seed.alpha, gamma = seed.gamma;
  if (!std::isfinite(alpha) || !std::isfinite(gamma))
    throw std::invalid_argument("density_envelope: non-finite seed");
  double envelope =
      std::max(1.0 + alpha + 0.5 * gamma, 1.0 - alpha + 0.5 * gamma);
  if (gamma < 0.0) {
    const double stationary = -2.0 * alpha / (3.0 * gamma);
    if (std::abs(stationary) <= 1.0)
      envelope = std::max(envelope,
                          1.0 - 0.25 * gamma - alpha * alpha / (3.0 * gamma));
  }
  return envelope;
}

BlochVector sample_outcome(const CovariantSeed& seed, const BlochVector& m,
                           PhiloxRng& rng) {
  check_sampling_seed(seed);
  std::uint64_t proposals = 0;
  return sample_outcome_impl(seed, m, rng, density_envelope(seed), proposals);
}

SimulationReport estimate_fidelity(const CovariantSeed& seed,
                                   const std::function<double(double)>& f,
                                   std::uint64_t trials, std::uint64_t rng_seed,
                                   int workers) {
  check_sampling_seed(seed);
  const double envelope = density_envelope(seed);
  return run_chunks(trials, rng_seed, workers,
                    [&](PhiloxRng& rng, std::uint64_t& proposals) {
                      const BlochVector m = sample_uniform_direction(rng);
                      const BlochVector n =
                          sample_outcome_impl(seed, m, rng, envelope, proposals);
                      return f(n.dot(m));
                    });
}

SimulationReport estimate_fidelity(const CovariantSeed& seed,
                                   const FidelitySpec& spec,
                                   std::uint64_t trials, std::uint64_t rng_seed,
                                   int workers) {
  return estimate_fidelity(
      seed, [&spec](double u) { return spec.evaluate(u); }, trials, rng_seed,
      workers);
}

BlochVector locc_bisectrix_trial(const BlochVector& m, const BlochVector& a,
                                 const BlochVector& b, PhiloxRng& rng,
                                 SpinArrangement arrangement) {
  if (std::abs(a.dot(b)) > 1e-12)
    throw std::invalid_argument("locc_bisectrix_trial: axes must be orthogonal");

  const double first_sign = rng.next_double() < 0.5 * (1.0 + m.dot(a)) ? 1.0 : -1.0;
  double along = m.dot(b);
  if (arrangement == SpinArrangement::Antiparallel) along = -along;
  double second_sign = rng.next_double() < 0.5 * (1.0 + along) ? 1.0 : -1.0;
  if (arrangement == SpinArrangement::Antiparallel) second_sign = -second_sign;

  const Eigen::Vector3d guess = first_sign * a.vec() + second_sign * b.vec();
  return BlochVector(guess / guess.norm());
}

SimulationReport estimate_locc_strategy(std::uint64_t trials,
                                        std::uint64_t rng_seed,
                                        SpinArrangement arrangement,
                                        int workers) {
  const BlochVector a = BlochVector::x_axis();
  const BlochVector b = BlochVector::y_axis();
  return run_chunks(trials, rng_seed, workers,
                    [&](PhiloxRng& rng, std::uint64_t&) {
                      const BlochVector m = sample_uniform_direction(rng);
                      const BlochVector guess =
                          locc_bisectrix_trial(m, a, b, rng, arrangement);
                      return 0.5 * (1.0 + m.dot(guess));
                    });
}

}  // namespace spinpair
