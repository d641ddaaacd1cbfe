#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mixing/coupling.hpp"
#include "mixing/exact.hpp"
#include "mixing/graph.hpp"
#include "mixing/hardcore.hpp"
#include "mixing/rational.hpp"
#include "mixing/rng.hpp"

namespace mixing {

enum class StepMode { Paper, Practical };

/// Fugacity ladder 0 = lambda_0 < lambda_1 < ... < lambda_k = lambda with
/// geometric rungs (1 + 1/3n)^j / 3n, j = 0..rungs-1, below the target.
struct AnnealingSchedule {
  std::size_t n = 0;
  Rational lambda;
  std::size_t rungs = 0;
  std::vector<double> levels;        ///< lambda_0..lambda_k
  std::vector<std::uint64_t> steps;  ///< T_1..T_k (steps[i-1] is level i)
  std::size_t formula_levels = 0;    ///< ceil(log(3 n lambda) / log(1 + 1/3n))
  bool extra_level = false;          ///< level count exceeds formula_levels
  StepMode mode = StepMode::Practical;

  std::size_t level_count() const { return levels.size() - 1; }
  Rational exact_level(std::size_t i) const;
  Rational ratio() const;  ///< 1 + 1/3n
};

/// Builds the ladder; every ratio lambda_i / lambda_{i-1} (i >= 2) is at most
/// 1 + 1/3n and lambda_1 <= 1/3n. Paper mode sets every T_i from
/// lemma41_params(n, zeta, delta / k); practical mode sets T_i =
/// practical_steps. Throws InvalidArgument if lambda < 1/3n.
AnnealingSchedule build_schedule(std::size_t n, const Rational& lambda,
                                 double delta, double zeta, StepMode mode,
                                 std::uint64_t practical_steps = 0);

/// Per-level exact mixing time to delta / k from the worst start, computed
/// on the enumerated chain at each fugacity.
std::vector<std::uint64_t> calibrate_steps(const Graph& g,
                                           const AnnealingSchedule& schedule,
                                           double delta);

struct LevelLog {
  std::size_t level = 0;
  double lambda = 0;
  std::uint64_t steps = 0;
  std::size_t set_size = 0;
};

struct AnnealResult {
  IndependentSet sample;
  std::vector<LevelLog> levels;
};

/// Starts from the empty set and runs T_i Glauber steps at each lambda_i.
AnnealResult annealed_sample(const Graph& g, const AnnealingSchedule& schedule,
                             Rng& rng);
/// Paper-mode schedule for (lambda, delta, zeta), then annealed_sample.
AnnealResult annealed_sample(const Graph& g, const Rational& lambda,
                             double delta, double zeta, Rng& rng);

struct LadderLevel {
  std::size_t level = 0;
  Rational lambda;
  Rational partition;  ///< Z_i
  double ratio = 0;    ///< Z_i / Z_{i-1} (level >= 1)
  double limit = 0;    ///< 2 for level 1, e^{1/3} afterwards
  bool ok = true;
};

struct LadderReport {
  std::vector<LadderLevel> levels;
  bool all_ok = true;
};

/// Exact Z_i per level: Z_1 < 2 Z_0 = 2 and Z_i < e^{1/3} Z_{i-1}.
LadderReport verify_warm_ladder(const Graph& g,
                                const AnnealingSchedule& schedule);

/// Max ratio of Gibbs(lambda_prev) to Gibbs(lambda_next), exactly.
ExactWarmStartReport verify_gibbs_warm_start(const Graph& g,
                                             const Rational& lambda_prev,
                                             const Rational& lambda_next);

/// Exact law of the annealer's output on an enumerable graph.
Distribution exact_annealing_output(const Graph& g,
                                    const AnnealingSchedule& schedule);

}  // namespace mixing
