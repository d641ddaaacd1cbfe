#include "mixing/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixing {

std::uint64_t ceil_count(double x) {
  if (!(x > 0)) return 0;
  const double nearest = std::round(x);
  if (std::fabs(x - nearest) <= 1e-12 * std::max(1.0, nearest)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(x));
}

Bound theorem31_bound(double eps, double delta_bad, std::size_t steps, double diam) {
  if (!(eps > 0 && eps <= 1)) throw InvalidArgument("theorem31_bound: eps must lie in (0, 1]");
  if (!(delta_bad >= 0)) throw InvalidArgument("theorem31_bound: delta must be >= 0");
  if (!(diam >= 1)) throw InvalidArgument("theorem31_bound: diam must be >= 1");
  Bound b;
  b.raw = (std::pow(1.0 - eps, static_cast<double>(steps)) + delta_bad / eps) * diam;
  b.clamped = std::clamp(b.raw, 0.0, 1.0);
  return b;
}

std::uint64_t mixing_time_theorem11(double diam, double delta, double eps) {
  if (!(diam >= 1)) throw InvalidArgument("mixing_time_theorem11: diam must be >= 1");
  if (!(eps > 0)) throw InvalidArgument("mixing_time_theorem11: eps must be positive");
  if (!(delta > 0 && delta <= diam)) {
    throw InvalidArgument("mixing_time_theorem11: delta must lie in (0, diam]");
  }
  return ceil_count(std::log(diam / delta) / eps);
}

StationarityRequirement mixing_time_theorem12(double diam, double delta, double eps) {
  if (!(diam >= 1)) throw InvalidArgument("mixing_time_theorem12: diam must be >= 1");
  if (!(eps > 0)) throw InvalidArgument("mixing_time_theorem12: eps must be positive");
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("mixing_time_theorem12: delta must lie in (0, 1)");
  StationarityRequirement r;
  const double rounds = std::ceil(std::log(32.0 * diam)) * std::ceil(std::log(1.0 / delta));
  r.steps = ceil_count(rounds / eps);
  r.pi_threshold = 1.0 - eps / (16.0 * diam);
  return r;
}

StationarityRequirement mixing_time_theorem13(double diam, double delta, double eps) {
  if (!(diam >= 1)) throw InvalidArgument("mixing_time_theorem13: diam must be >= 1");
  if (!(eps > 0)) throw InvalidArgument("mixing_time_theorem13: eps must be positive");
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("mixing_time_theorem13: delta must lie in (0, 1)");
  StationarityRequirement r;
  r.steps = ceil_count(std::log(2.0 * diam / delta) / eps);
  r.pi_threshold = 1.0 - eps * delta / (6.0 * diam);
  return r;
}

WarmStartReport is_warm_start(std::span<const double> dist, std::span<const double> pi) {
  if (dist.size() != pi.size()) throw InvalidArgument("is_warm_start: size mismatch");
  WarmStartReport r;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] == 0) continue;
    if (pi[i] == 0) {
      r.max_ratio = std::numeric_limits<double>::infinity();
      break;
    }
    r.max_ratio = std::max(r.max_ratio, dist[i] / pi[i]);
  }
  r.warm = r.max_ratio <= 2.0;
  return r;
}

ExactWarmStartReport is_warm_start(std::span<const Rational> dist,
                                   std::span<const Rational> pi) {
  if (dist.size() != pi.size()) throw InvalidArgument("is_warm_start: size mismatch");
  ExactWarmStartReport r;
  Rational best(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] == 0) continue;
    if (pi[i] == 0) {
      r.max_ratio.reset();
      r.warm = false;
      return r;
    }
    best = std::max<Rational>(best, dist[i] / pi[i]);
  }
  r.max_ratio = best;
  r.warm = best <= 2;
  return r;
}

}  // namespace mixing
