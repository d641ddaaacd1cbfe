#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace mixing {

/// Random stream used by all chains.
///
/// Every sampling primitive consumes a fixed number of calls on this type:
/// uniform_index() and uniform_unit() are one call each. A single-site step
/// costs exactly two calls (site, then update), so trajectories are
/// reproducible from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}

  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t uniform_index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  /// Uniform on [0, 1).
  double uniform_unit() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Stream for replica `replica` at annealing level / sub-stream `stream`.
/// Derivation: std::seed_seq over the 32-bit words
/// (master_lo, master_hi, stream, replica_lo, replica_hi).
Rng derive_rng(std::uint64_t master_seed, std::uint64_t replica,
               std::uint64_t stream = 0);

}  // namespace mixing
