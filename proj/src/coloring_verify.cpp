#include "mixing/coloring_verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "mixing/errors.hpp"
#include "mixing/exact.hpp"
#include "mixing/parallel.hpp"
#include "mixing/stats.hpp"

namespace mixing {

Coloring sample_coloring_mcmc(const Graph& g, int k, std::size_t burn_in, Rng& rng) {
  Coloring x = Coloring::constant(g.vertex_count(), k, 1);
  require_heat_bath(g, x);
  for (std::size_t t = 0; t < burn_in; ++t) x = glauber_step(g, std::move(x), rng);
  return x;
}

Lemma21Report verify_lemma21(const Graph& g, int k, double beta,
                             const Lemma21Options& options) {
  if (!(beta > 0 && beta <= 1)) throw HypothesisError("verify_lemma21: beta must lie in (0, 1]");
  if (!is_triangle_free(g)) throw HypothesisError("verify_lemma21: graph contains a triangle");
  const std::size_t delta = max_degree(g);
  if (static_cast<double>(k) < static_cast<double>(delta) + 2.0 / beta - 1e-12) {
    throw HypothesisError("verify_lemma21: need k >= Delta + 2/beta (k = " + std::to_string(k) +
                          ", Delta + 2/beta = " +
                          std::to_string(static_cast<double>(delta) + 2.0 / beta) + ")");
  }
  if (options.samples == 0) throw InvalidArgument("verify_lemma21: need at least one sample");

  Lemma21Report r;
  r.n = g.vertex_count();
  r.max_degree = delta;
  r.k = k;
  r.beta = beta;
  r.threshold = lemma21_threshold(delta, k, beta);
  r.bound = static_cast<double>(r.n) * std::exp(-beta * beta * k / 8.0);
  r.sampler = options.sampler;
  r.samples = options.samples;
  r.min_available_counts.assign(static_cast<std::size_t>(k) + 1, 0);

  std::optional<StateSpace> proper;
  try {
    proper = enumerate_proper_colorings(g, k, options.enumeration_cap);
  } catch (const CapExceeded&) {
    if (options.sampler == SamplerKind::Exact) throw;
  }
  std::vector<std::size_t> min_avail_of_state;
  if (proper) {
    if (proper->size() == 0) throw HypothesisError("verify_lemma21: no proper colorings");
    r.min_available_exact.assign(static_cast<std::size_t>(k) + 1, 0.0);
    const double mass = 1.0 / static_cast<double>(proper->size());
    double violating = 0;
    min_avail_of_state.resize(proper->size());
    for (std::size_t i = 0; i < proper->size(); ++i) {
      const std::size_t m = min_available(g, proper->coloring(i));
      min_avail_of_state[i] = m;
      r.min_available_exact[m] += mass;
      if (static_cast<double>(m) < r.threshold) violating += mass;
    }
    r.exact_rate = violating;
  }

  if (options.sampler == SamplerKind::Mcmc) {
    r.burn_in = options.burn_in ? options.burn_in : 200 * r.n;
  }
  const auto draws = parallel_map<std::size_t>(
      options.samples,
      [&](std::size_t i) {
        Rng rng = derive_rng(options.seed, i);
        if (options.sampler == SamplerKind::Exact) {
          return min_avail_of_state[rng.uniform_index(proper->size())];
        }
        return min_available(g, sample_coloring_mcmc(g, k, r.burn_in, rng));
      },
      options.workers);
  for (std::size_t m : draws) {
    ++r.min_available_counts[m];
    if (static_cast<double>(m) < r.threshold) ++r.violations;
  }
  r.empirical_rate = static_cast<double>(r.violations) / static_cast<double>(r.samples);
  r.tolerance = one_sided_slack(r.bound, r.samples);
  r.pass = within_bound(r.empirical_rate, r.bound, r.samples);
  return r;
}

namespace {

template <class Visit>
void for_each_pair(const Graph& g, int k, std::uint64_t exhaustive_cap,
                   std::size_t random_pairs, std::uint64_t seed, bool& exhaustive,
                   Visit visit) {
  std::optional<StateSpace> all;
  try {
    all = enumerate_all_colorings(g, k, exhaustive_cap);
  } catch (const CapExceeded&) {
  }
  exhaustive = all.has_value();
  if (all) {
    std::vector<Coloring> states;
    states.reserve(all->size());
    for (std::size_t i = 0; i < all->size(); ++i) states.push_back(all->coloring(i));
    for (const auto& x : states) {
      for (const auto& y : states) {
        if (!(x == y)) visit(x, y);
      }
    }
    return;
  }
  Rng rng = derive_rng(seed, 0);
  const std::size_t n = g.vertex_count();
  auto random_coloring = [&] {
    std::vector<Color> c(n);
    for (auto& v : c) v = static_cast<Color>(rng.uniform_index(static_cast<std::size_t>(k))) + 1;
    return Coloring(std::move(c), k);
  };
  for (std::size_t i = 0; i < random_pairs; ++i) {
    Coloring x = random_coloring();
    Coloring y = random_coloring();
    if (!(x == y)) visit(x, y);
  }
}

}  // namespace

ContractionCheck check_lemma23(const Graph& g, int k, const Rational& beta,
                               std::uint64_t exhaustive_cap, std::size_t random_pairs,
                               std::uint64_t seed) {
  if (beta <= 0 || beta >= 1) throw InvalidArgument("check_lemma23: beta must lie in (0, 1)");
  require_heat_bath(g, Coloring::constant(g.vertex_count(), k));
  const Rational n(static_cast<long long>(g.vertex_count()));
  ContractionCheck r;
  std::optional<Coloring> last_x;
  bool x_ok = false;
  for_each_pair(g, k, exhaustive_cap, random_pairs, seed, r.exhaustive,
                [&](const Coloring& x, const Coloring& y) {
                  ++r.pairs_checked;
                  if (!last_x || !(*last_x == x)) {
                    last_x = x;
                    x_ok = lemma23_hypothesis(g, x, beta);
                  }
                  if (!x_ok) return;
                  ++r.hypothesis_pairs;
                  const Rational rho(static_cast<long long>(hamming(x, y)));
                  if (expected_coupled_distance(g, x, y) > (1 - beta / n) * rho) ++r.violations;
                });
  return r;
}

Rational coloring_contraction_rate(const Graph& g, int k, std::uint64_t cap) {
  require_heat_bath(g, Coloring::constant(g.vertex_count(), k));
  bool exhaustive = false;
  std::optional<Rational> best;
  for_each_pair(g, k, cap, 0, 0, exhaustive, [&](const Coloring& x, const Coloring& y) {
    const Rational rho(static_cast<long long>(hamming(x, y)));
    Rational rate = 1 - expected_coupled_distance(g, x, y) / rho;
    if (!best || rate < *best) best = rate;
  });
  if (!exhaustive) throw CapExceeded("coloring_contraction_rate: k^n exceeds the cap");
  if (!best) throw InvalidArgument("coloring_contraction_rate: fewer than two states");
  return *best;
}

}  // namespace mixing
