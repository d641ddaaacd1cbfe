#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mixing/errors.hpp"
#include "mixing/rational.hpp"
#include "mixing/rng.hpp"

namespace mixing {

/// rho(X_t, Y_t) for t = 0..T. Identical states evolve identically, so every
/// entry from met_at onward is zero.
struct CoupledTrajectory {
  std::vector<std::size_t> distances;
  std::optional<std::size_t> met_at;
};

/// Runs T coupled steps from (x, y). `step(x, y, rng)` returns the next pair,
/// `distance(x, y)` the metric. Once the chains meet they are held together
/// and no further randomness is drawn. `distance` is expected to reject
/// states from different instances.
template <class State, class Step, class Distance>
CoupledTrajectory run_coupled(State x, State y, Step step, std::size_t steps,
                              Rng& rng, Distance distance) {
  CoupledTrajectory out;
  out.distances.reserve(steps + 1);
  std::size_t d = distance(x, y);
  out.distances.push_back(d);
  if (d == 0) out.met_at = 0;
  for (std::size_t t = 1; t <= steps; ++t) {
    if (!out.met_at) {
      auto next = step(std::move(x), std::move(y), rng);
      x = std::move(next.first);
      y = std::move(next.second);
      d = distance(x, y);
      if (d == 0) out.met_at = t;
    }
    out.distances.push_back(out.met_at ? 0 : d);
  }
  return out;
}

struct Bound {
  double raw = 0;
  double clamped = 0;  ///< raw clamped to [0, 1]
};

/// ((1 - eps)^T + delta_bad / eps) diam.
Bound theorem31_bound(double eps, double delta_bad, std::size_t steps,
                      double diam);

/// ceil(ln(diam / delta) / eps); delta in (0, diam].
std::uint64_t mixing_time_theorem11(double diam, double delta, double eps);

struct StationarityRequirement {
  std::uint64_t steps = 0;
  double pi_threshold = 0;  ///< required lower bound on pi(S)
};

/// T = ceil(ln 32 diam) ceil(ln 1/delta) / eps, pi(S) >= 1 - eps / (16 diam).
StationarityRequirement mixing_time_theorem12(double diam, double delta,
                                              double eps);
/// T = ceil(ln(2 diam / delta) / eps), pi(S) > 1 - eps delta / (6 diam).
StationarityRequirement mixing_time_theorem13(double diam, double delta,
                                              double eps);

struct WarmStartReport {
  double max_ratio = 0;  ///< +inf if dist charges a state pi does not
  bool warm = false;     ///< max_ratio <= 2
};

WarmStartReport is_warm_start(std::span<const double> dist,
                              std::span<const double> pi);

struct ExactWarmStartReport {
  std::optional<Rational> max_ratio;  ///< nullopt means infinite
  bool warm = false;
};

ExactWarmStartReport is_warm_start(std::span<const Rational> dist,
                                   std::span<const Rational> pi);

/// ceil(x), forgiving binary64 noise of relative size 1e-12 just above an
/// integer (e.g. 18 / 0.1).
std::uint64_t ceil_count(double x);

}  // namespace mixing
