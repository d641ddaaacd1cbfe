#include "mixing/hardcore_verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "mixing/errors.hpp"
#include "mixing/exact.hpp"
#include "mixing/fixed_point.hpp"
#include "mixing/parallel.hpp"
#include "mixing/stats.hpp"

namespace mixing {

IndependentSet sample_hardcore_mcmc(const Graph& g, double lambda, std::size_t burn_in,
                                    Rng& rng) {
  IndependentSet x(g.vertex_count());
  for (std::size_t t = 0; t < burn_in; ++t) x = glauber_step_hc(g, std::move(x), lambda, rng);
  return x;
}

std::pair<std::size_t, std::size_t> unblocked_range(const Graph& g, const IndependentSet& x) {
  if (g.vertex_count() == 0) return {0, 0};
  std::size_t lo = g.vertex_count(), hi = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::size_t u = unblocked(g, x, v).size();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  return {lo, hi};
}

Lemma42Report verify_lemma42(const Graph& g, double lambda, double zeta, double xi,
                             const Lemma42Options& options) {
  if (g.vertex_count() == 0 || !is_regular(g) || g.degree(0) < 1) {
    throw HypothesisError("verify_lemma42: graph must be Delta-regular with Delta >= 1");
  }
  if (auto gi = girth(g); gi && *gi < 6) {
    throw HypothesisError("verify_lemma42: girth " + std::to_string(*gi) + " < 6");
  }
  if (!(zeta > 0 && zeta < 1)) throw HypothesisError("verify_lemma42: zeta must lie in (0, 1)");
  if (!(xi > 0)) throw HypothesisError("verify_lemma42: xi must be positive");
  const std::size_t delta = g.degree(0);
  const double d = static_cast<double>(delta);
  constexpr double rel = 1e-12;
  if (lambda < (1.0 / d) * (1 - rel) || lambda > (1 - zeta) * std::numbers::e / d * (1 + rel)) {
    throw HypothesisError("verify_lemma42: need 1/Delta <= lambda <= (1 - zeta) e / Delta");
  }
  if (options.samples == 0) throw InvalidArgument("verify_lemma42: need at least one sample");

  Lemma42Report r;
  r.n = g.vertex_count();
  r.degree = delta;
  r.lambda = lambda;
  r.zeta = zeta;
  r.xi = xi;
  r.mu = solve_mu(lambda * d);
  r.u_lo = (r.mu - xi) * d;
  r.u_hi = (r.mu + xi) * d;
  const double e1 = std::numbers::e + 1;
  const double inner = xi * zeta / (8 * lambda * d) - e1 * e1 / d;
  r.bound_raw = 3.0 * static_cast<double>(r.n) * std::exp(-inner * inner * d / 8.0);
  r.vacuous = !(inner > 0);
  r.bound = r.vacuous ? 1.0 : std::min(1.0, r.bound_raw);
  r.sampler = options.sampler;
  r.samples = options.samples;
  r.min_u_counts.assign(delta + 1, 0);
  r.max_u_counts.assign(delta + 1, 0);

  auto violates = [&](std::pair<std::size_t, std::size_t> range) {
    return static_cast<double>(range.first) < r.u_lo || static_cast<double>(range.second) > r.u_hi;
  };

  std::optional<StateSpace> sets;
  try {
    sets = enumerate_independent_sets(g, options.enumeration_cap);
  } catch (const CapExceeded&) {
    if (options.sampler == SamplerKind::Exact) throw;
  }
  std::vector<std::pair<std::size_t, std::size_t>> range_of_state;
  std::vector<double> cdf;
  if (sets) {
    r.min_u_exact.assign(delta + 1, 0.0);
    r.max_u_exact.assign(delta + 1, 0.0);
    std::vector<double> w(sets->size());
    double z = 0;
    for (std::size_t i = 0; i < sets->size(); ++i) {
      w[i] = weight(sets->independent_set(i), lambda);
      z += w[i];
    }
    double violating = 0, running = 0;
    range_of_state.resize(sets->size());
    cdf.resize(sets->size());
    for (std::size_t i = 0; i < sets->size(); ++i) {
      const double p = w[i] / z;
      range_of_state[i] = unblocked_range(g, sets->independent_set(i));
      r.min_u_exact[range_of_state[i].first] += p;
      r.max_u_exact[range_of_state[i].second] += p;
      if (violates(range_of_state[i])) violating += p;
      running += p;
      cdf[i] = running;
    }
    r.exact_rate = violating;
  }

  if (options.sampler == SamplerKind::Mcmc) {
    r.burn_in = options.burn_in ? options.burn_in : 200 * r.n;
  }
  const auto draws = parallel_map<std::pair<std::size_t, std::size_t>>(
      options.samples,
      [&](std::size_t i) {
        Rng rng = derive_rng(options.seed, i);
        if (options.sampler == SamplerKind::Exact) {
          const double u = rng.uniform_unit() * cdf.back();
          const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
          const auto at = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                                                cdf.size() - 1);
          return range_of_state[at];
        }
        return unblocked_range(g, sample_hardcore_mcmc(g, lambda, r.burn_in, rng));
      },
      options.workers);
  for (const auto& range : draws) {
    ++r.min_u_counts[range.first];
    ++r.max_u_counts[range.second];
    if (violates(range)) ++r.violations;
  }
  r.empirical_rate = static_cast<double>(r.violations) / static_cast<double>(r.samples);
  r.tolerance = one_sided_slack(r.bound, r.samples);
  r.pass = within_bound(r.empirical_rate, r.bound, r.samples);
  return r;
}

ContractionCheck check_lemma48(const Graph& g, const Rational& lambda, const Rational& zeta,
                               std::uint64_t exhaustive_cap, std::size_t random_pairs,
                               std::uint64_t seed) {
  if (lambda <= 0) throw InvalidArgument("check_lemma48: fugacity must be positive");
  if (zeta <= 0 || zeta >= 1) throw InvalidArgument("check_lemma48: zeta must lie in (0, 1)");
  const Rational n(static_cast<long long>(g.vertex_count()));
  ContractionCheck r;
  auto visit = [&](const IndependentSet& x, const IndependentSet& y) {
    ++r.pairs_checked;
    if (!lemma48_hypothesis(g, x, y, lambda, zeta)) return;
    ++r.hypothesis_pairs;
    const Rational rho(static_cast<long long>(hamming(x, y)));
    if (expected_coupled_distance_hc(g, x, y, lambda) > (1 - zeta / n) * rho) ++r.violations;
  };
  std::optional<StateSpace> sets;
  try {
    sets = enumerate_independent_sets(g, exhaustive_cap);
  } catch (const CapExceeded&) {
  }
  r.exhaustive = sets.has_value();
  if (sets) {
    for (std::size_t i = 0; i < sets->size(); ++i) {
      for (std::size_t j = 0; j < sets->size(); ++j) {
        if (i != j) visit(sets->independent_set(i), sets->independent_set(j));
      }
    }
    return r;
  }
  const double lambda_d = to_double(lambda);
  const std::size_t burn_in = 50 * g.vertex_count();
  for (std::size_t i = 0; i < random_pairs; ++i) {
    Rng rng = derive_rng(seed, i);
    IndependentSet x = sample_hardcore_mcmc(g, lambda_d, burn_in, rng);
    IndependentSet y = sample_hardcore_mcmc(g, lambda_d, burn_in, rng);
    if (!(x == y)) visit(x, y);
  }
  return r;
}

}  // namespace mixing
