#include "mixing/fixed_point.hpp"

#include <cmath>
#include <numbers>

#include "mixing/coupling.hpp"
#include "mixing/errors.hpp"

namespace mixing {

namespace {

constexpr double kTolerance = 1e-12;

/// Root of an increasing function on [lo, hi] by bisection.
template <class F>
double bisect(F f, double lo, double hi) {
  while (hi - lo > kTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void validate(const PerturbedMap& m) {
  if (!(m.C > 0 && m.C <= std::numbers::e)) {
    throw InvalidArgument("perturbed map: C must lie in (0, e]");
  }
  if (!(m.theta >= 0)) throw InvalidArgument("perturbed map: theta must be >= 0");
}

double solve_mu(double C) {
  if (!(C > 0)) throw InvalidArgument("solve_mu: C must be positive");
  return bisect([C](double x) { return x - std::exp(-C * x); }, 0.0, 1.0);
}

double solve_alpha() {
  return bisect([](double x) { return x - std::exp(1.0 / x); }, 1.5, 2.0);
}

Observation45 observation45_check(double zeta) {
  if (!(zeta > 0 && zeta < 1)) throw InvalidArgument("observation45_check: zeta must lie in (0, 1)");
  Observation45 r;
  r.C = (1 - zeta) * std::numbers::e;
  r.mu = solve_mu(r.C);
  r.bound = (1 - zeta / 2) / r.C;
  r.holds = r.mu < r.bound;
  return r;
}

Interval apply_h(const PerturbedMap& m, Interval interval) {
  if (interval.lo > interval.hi) throw InvalidArgument("apply_h: empty interval");
  return {std::exp(-m.C * interval.hi) - m.theta, std::exp(-m.C * interval.lo) + m.theta};
}

Interval iterate_h(const PerturbedMap& m, Interval interval, std::size_t times) {
  for (std::size_t i = 0; i < times; ++i) interval = apply_h(m, interval);
  return interval;
}

std::size_t lemma46_steps(double zeta, double xi) {
  if (!(zeta > 0) || !(xi > 0)) throw InvalidArgument("lemma46_steps: zeta and xi must be positive");
  return static_cast<std::size_t>(ceil_count(4.0 / zeta * std::log1p(1.0 / xi)));
}

ContainmentRun iterate_until_contained(double C, double zeta, double xi) {
  if (!(zeta > 0 && zeta < 1)) throw InvalidArgument("iterate_until_contained: zeta must lie in (0, 1)");
  if (!(xi > 0)) throw InvalidArgument("iterate_until_contained: xi must be positive");
  if (!(C > 0 && C <= std::numbers::e)) {
    throw InvalidArgument("iterate_until_contained: need 0 < C <= e");
  }
  ContainmentRun run;
  run.hypothesis = C >= 1 && C <= (1 - zeta) * std::numbers::e * (1 + 1e-15);
  run.mu = solve_mu(C);
  run.theta = xi * zeta / (8 * C);
  run.t_bound = lemma46_steps(zeta, xi);
  const PerturbedMap map{C, run.theta};
  const Interval target{run.mu - xi, run.mu + xi};
  Interval current{0.0, 1.0};
  run.trajectory.push_back(current);
  const std::size_t limit = 10 * run.t_bound;
  for (std::size_t t = 1; t <= limit; ++t) {
    current = apply_h(map, current);
    run.trajectory.push_back(current);
    if (target.contains(current)) {
      run.t_actual = t;
      run.within_bound = t <= run.t_bound;
      return run;
    }
  }
  throw VerificationFailure("interval iteration not contained after " +
                            std::to_string(limit) + " steps");
}

Interval tracking_interval(double C, double mu, double x) {
  return {mu - x / C, mu - std::log1p(-x) / C};
}

ContractionStepCheck contraction_step_check(double C, double zeta, double xi, double x) {
  if (!(x >= 0 && x < 1)) throw InvalidArgument("contraction_step_check: x must lie in [0, 1)");
  const double mu = solve_mu(C);
  const double theta = xi * zeta / (8 * C);
  const double shrink = 1 - zeta / 4;
  ContractionStepCheck r;
  r.lower_ok = mu * x + theta <= x * shrink / C;
  r.upper_ok = mu * std::expm1(x) + theta <= -std::log1p(-x * shrink) / C;
  const Interval image = apply_h({C, theta}, tracking_interval(C, mu, x));
  const Interval target = tracking_interval(C, mu, x * shrink);
  // Endpoint comparisons carry ~1e-15 rounding from exp/log.
  constexpr double slack = 1e-13;
  r.inclusion = target.lo <= image.lo + slack && image.hi <= target.hi + slack;
  return r;
}

bool envelope_check(std::span<const double> values, const PerturbedMap& m, std::size_t t) {
  validate(m);
  if (t < 1) throw InvalidArgument("envelope_check: t must be >= 1");
  const Interval envelope = iterate_h(m, {0.0, 1.0}, t);
  for (double v : values) {
    if (!(v >= 0 && v <= 1)) throw InvalidArgument("envelope_check: values must lie in [0, 1]");
    if (!envelope.contains(v)) return false;
  }
  return true;
}

std::vector<double> period2_demo(double C, double x0, std::size_t steps) {
  if (!(C > 0)) throw InvalidArgument("period2_demo: C must be positive");
  std::vector<double> out{x0};
  out.reserve(steps + 1);
  for (std::size_t i = 0; i < steps; ++i) out.push_back(std::exp(-C * out.back()));
  return out;
}

std::vector<SweepRow> lemma46_sweep(std::span<const double> zetas, std::span<const double> xis) {
  std::vector<SweepRow> rows;
  for (double zeta : zetas) {
    const double top = (1 - zeta) * std::numbers::e;
    for (double xi : xis) {
      for (double C : {1.0, (1.0 + top) / 2.0, top}) {
        const auto run = iterate_until_contained(C, zeta, xi);
        rows.push_back({C, zeta, xi, run.t_bound, run.t_actual, run.within_bound, run.hypothesis});
      }
    }
  }
  return rows;
}

}  // namespace mixing
