#include "mixing/annealing.hpp"

#include <cmath>
#include <string>

#include "mixing/errors.hpp"

namespace mixing {

namespace {

Rational base_level(std::size_t n) { return Rational(1, 3 * static_cast<long long>(n)); }

}  // namespace

Rational AnnealingSchedule::ratio() const {
  return 1 + Rational(1, 3 * static_cast<long long>(n));
}

Rational AnnealingSchedule::exact_level(std::size_t i) const {
  if (i > level_count()) throw InvalidArgument("exact_level: index past the target");
  if (i == 0) return Rational(0);
  if (i == level_count()) return lambda;
  Rational level = base_level(n);
  const Rational r = ratio();
  for (std::size_t j = 1; j < i; ++j) level *= r;
  return level;
}

AnnealingSchedule build_schedule(std::size_t n, const Rational& lambda, double delta,
                                 double zeta, StepMode mode, std::uint64_t practical_steps) {
  if (n == 0) throw InvalidArgument("build_schedule: empty graph");
  const Rational base = base_level(n);
  if (lambda < base) {
    throw InvalidArgument("build_schedule: lambda must be at least 1/(3n) = " + to_string(base));
  }
  AnnealingSchedule s;
  s.n = n;
  s.lambda = lambda;
  s.mode = mode;
  const Rational r = s.ratio();
  s.levels.push_back(0.0);
  for (Rational level = base; level < lambda; level *= r) {
    s.levels.push_back(to_double(level));
    ++s.rungs;
  }
  s.levels.push_back(to_double(lambda));

  const double three_n_lambda = 3.0 * static_cast<double>(n) * to_double(lambda);
  s.formula_levels = static_cast<std::size_t>(
      ceil_count(std::log(three_n_lambda) / std::log(to_double(r))));
  s.extra_level = s.level_count() > s.formula_levels;

  const std::size_t k = s.level_count();
  if (mode == StepMode::Paper) {
    if (!(delta > 0 && delta < 1)) throw InvalidArgument("build_schedule: delta must lie in (0, 1)");
    if (!(zeta > 0 && zeta < 1)) throw InvalidArgument("build_schedule: zeta must lie in (0, 1)");
    const std::uint64_t t = lemma41_params(n, zeta, delta / static_cast<double>(k)).steps;
    s.steps.assign(k, t);
  } else {
    if (practical_steps == 0) throw InvalidArgument("build_schedule: practical mode needs T_i > 0");
    s.steps.assign(k, practical_steps);
  }
  return s;
}

std::vector<std::uint64_t> calibrate_steps(const Graph& g, const AnnealingSchedule& schedule,
                                           double delta) {
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("calibrate_steps: delta must lie in (0, 1)");
  const StateSpace space = enumerate_independent_sets(g);
  const std::size_t k = schedule.level_count();
  std::vector<std::uint64_t> steps;
  for (std::size_t i = 1; i <= k; ++i) {
    const ExactChain chain = build_hardcore_chain(g, space, schedule.exact_level(i));
    steps.push_back(exact_mixing_time(chain, delta / static_cast<double>(k)));
  }
  return steps;
}

AnnealResult annealed_sample(const Graph& g, const AnnealingSchedule& schedule, Rng& rng) {
  if (schedule.n != g.vertex_count()) {
    throw InvalidArgument("annealed_sample: schedule built for n = " +
                          std::to_string(schedule.n) + ", graph has " +
                          std::to_string(g.vertex_count()));
  }
  AnnealResult result;
  IndependentSet x(g.vertex_count());
  for (std::size_t i = 1; i <= schedule.level_count(); ++i) {
    const double lambda = schedule.levels[i];
    const std::uint64_t steps = schedule.steps[i - 1];
    for (std::uint64_t t = 0; t < steps; ++t) x = glauber_step_hc(g, std::move(x), lambda, rng);
    result.levels.push_back({i, lambda, steps, x.size()});
  }
  result.sample = std::move(x);
  return result;
}

AnnealResult annealed_sample(const Graph& g, const Rational& lambda, double delta, double zeta,
                             Rng& rng) {
  return annealed_sample(g, build_schedule(g.vertex_count(), lambda, delta, zeta, StepMode::Paper),
                         rng);
}

LadderReport verify_warm_ladder(const Graph& g, const AnnealingSchedule& schedule) {
  LadderReport report;
  Rational previous;
  for (std::size_t i = 0; i <= schedule.level_count(); ++i) {
    LadderLevel level;
    level.level = i;
    level.lambda = schedule.exact_level(i);
    level.partition = partition_function(g, level.lambda);
    if (i >= 1) {
      level.ratio = to_double(level.partition / previous);
      level.limit = i == 1 ? 2.0 : std::exp(1.0 / 3.0);
      level.ok = level.ratio < level.limit;
    }
    report.all_ok = report.all_ok && level.ok;
    previous = level.partition;
    report.levels.push_back(std::move(level));
  }
  return report;
}

ExactWarmStartReport verify_gibbs_warm_start(const Graph& g, const Rational& lambda_prev,
                                             const Rational& lambda_next) {
  const StateSpace space = enumerate_independent_sets(g);
  const auto prev = gibbs_distribution(space, lambda_prev);
  const auto next = gibbs_distribution(space, lambda_next);
  return is_warm_start(prev, next);
}

Distribution exact_annealing_output(const Graph& g, const AnnealingSchedule& schedule) {
  const StateSpace space = enumerate_independent_sets(g);
  Distribution d = point_mass(space.size(), space.index_of(IndependentSet(g.vertex_count())));
  for (std::size_t i = 1; i <= schedule.level_count(); ++i) {
    const ExactChain chain = build_hardcore_chain(g, space, schedule.exact_level(i));
    d = distribution_after(chain, d, schedule.steps[i - 1]);
  }
  return d;
}

}  // namespace mixing
