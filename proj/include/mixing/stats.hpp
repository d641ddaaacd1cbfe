#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace mixing {

/// sqrt(p (1 - p) / m) with p clamped to [0, 1].
inline double binomial_sigma(double p, std::size_t m) {
  const double q = std::fmin(1.0, std::fmax(0.0, p));
  return std::sqrt(q * (1.0 - q) / static_cast<double>(m));
}

/// One-sided pass rule for an empirical failure rate against a probability
/// bound: rate <= bound + 3 sigma(bound) + 3 / sqrt(m).
inline double one_sided_slack(double bound, std::size_t m) {
  return 3.0 * binomial_sigma(bound, m) +
         3.0 / std::sqrt(static_cast<double>(m));
}

inline bool within_bound(double rate, double bound, std::size_t m) {
  return rate <= std::fmin(1.0, std::fmax(0.0, bound)) + one_sided_slack(bound, m);
}

/// |empirical - p| <= 3 sigma(p); exact agreement required when p is 0 or 1.
inline bool within_three_sigma(double empirical, double p, std::size_t m) {
  return std::fabs(empirical - p) <= 3.0 * binomial_sigma(p, m) + 1e-12;
}

/// Slack for the TV distance between an m-sample empirical law and p:
/// 3 * (1/2) sum_x sigma(p(x), m).
inline double tv_slack(std::span<const double> p, std::size_t m) {
  double total = 0;
  for (double q : p) total += binomial_sigma(q, m);
  return 1.5 * total;
}

}  // namespace mixing
