#pragma once

#include "spinpair/covariant_measurement.hpp"
#include "spinpair/fidelity.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace spinpair {

// One 10-round Philox4x32 block.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Counter-based generator: the 64-bit seed is the key, the stream index sits
// in the upper counter words and the block counter in the lower ones, so
// substreams never overlap and any (seed, stream) pair is reproducible
// independent of how work is scheduled.
class PhiloxRng {
 public:
  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double next_double();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;
};

struct SimulationReport {
  std::uint64_t trials = 0;
  double mean_fidelity = 0.0;
  double standard_error = 0.0;
  std::uint64_t rng_seed = 0;
  // Accepted proposals over total proposals; 1 when no rejection is involved.
  double acceptance_rate = 1.0;
};

BlochVector sample_uniform_direction(PhiloxRng& rng);

// Exact maximum of the outcome density over n.m in [-1, 1], used as the
// rejection envelope.
double density_envelope(const CovariantSeed& seed);

// One outcome direction distributed as outcome_density(seed, ., m), by
// rejection from the uniform sphere.  The seed must be admissible for the
// parallel or the antiparallel class (nonnegative density).
BlochVector sample_outcome(const CovariantSeed& seed, const BlochVector& m,
                           PhiloxRng& rng);

// Mean of f(n.m) over trials simulated measurements with m uniform; unbiased
// for average_fidelity of the projected spec.
SimulationReport estimate_fidelity(const CovariantSeed& seed,
                                   const std::function<double(double)>& f,
                                   std::uint64_t trials, std::uint64_t rng_seed,
                                   int workers = 0);
SimulationReport estimate_fidelity(const CovariantSeed& seed,
                                   const FidelitySpec& spec,
                                   std::uint64_t trials, std::uint64_t rng_seed,
                                   int workers = 0);

enum class SpinArrangement { Parallel, Antiparallel };

// Local strategy: measure spin 1 along a and spin 2 along b (orthogonal to a),
// guess the bisectrix of the signed axes.  With antiparallel spins the second
// outcome is negated before forming the guess, which restores the parallel
// statistics.
BlochVector locc_bisectrix_trial(const BlochVector& m, const BlochVector& a,
                                 const BlochVector& b, PhiloxRng& rng,
                                 SpinArrangement arrangement = SpinArrangement::Parallel);

// Overlap fidelity of the bisectrix strategy with a = x, b = y, m uniform.
SimulationReport estimate_locc_strategy(
    std::uint64_t trials, std::uint64_t rng_seed,
    SpinArrangement arrangement = SpinArrangement::Parallel, int workers = 0);

}  // namespace spinpair
