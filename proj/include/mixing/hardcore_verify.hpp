#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mixing/coloring_verify.hpp"
#include "mixing/graph.hpp"
#include "mixing/hardcore.hpp"
#include "mixing/rational.hpp"
#include "mixing/rng.hpp"

namespace mixing {

/// Glauber run of `burn_in` steps from the empty set.
IndependentSet sample_hardcore_mcmc(const Graph& g, double lambda,
                                    std::size_t burn_in, Rng& rng);

/// (min_v |U(X, v)|, max_v |U(X, v)|).
std::pair<std::size_t, std::size_t> unblocked_range(const Graph& g,
                                                    const IndependentSet& x);

struct Lemma42Options {
  std::size_t samples = 10'000;
  SamplerKind sampler = SamplerKind::Exact;
  std::size_t burn_in = 0;  ///< 0 selects 200 n
  std::uint64_t seed = 1;
  std::uint64_t enumeration_cap = 1u << 20;
  unsigned workers = 0;
};

struct Lemma42Report {
  std::size_t n = 0;
  std::size_t degree = 0;
  double lambda = 0;
  double zeta = 0;
  double xi = 0;
  double mu = 0;
  double u_lo = 0;  ///< (mu - xi) Delta
  double u_hi = 0;  ///< (mu + xi) Delta
  /// 3n exp(-(xi zeta / (8 lambda Delta) - (e+1)^2 / Delta)^2 Delta / 8).
  double bound_raw = 0;
  double bound = 1;      ///< clamped to [0, 1]; 1 when vacuous
  bool vacuous = false;  ///< the inner term is not positive
  SamplerKind sampler = SamplerKind::Exact;
  std::size_t samples = 0;
  std::size_t burn_in = 0;
  std::size_t violations = 0;
  double empirical_rate = 0;
  double tolerance = 0;
  bool pass = false;
  std::optional<double> exact_rate;
  std::vector<std::size_t> min_u_counts;  ///< index = min_v |U(X, v)|
  std::vector<std::size_t> max_u_counts;
  std::vector<double> min_u_exact;
  std::vector<double> max_u_exact;
};

/// Unblocked-neighbor uniformity for Gibbs-random independent sets. Hypothesis
/// failures (not Delta-regular with Delta >= 1, girth < 6, lambda outside
/// [1/Delta, (1 - zeta) e / Delta], zeta or xi out of range) each raise
/// HypothesisError.
Lemma42Report verify_lemma42(const Graph& g, double lambda, double zeta,
                             double xi, const Lemma42Options& options = {});

/// For pairs with lemma48_hypothesis: E rho(X', Y') <= (1 - zeta/n) rho(X, Y)
/// exactly. Exhaustive when the graph has at most `exhaustive_cap`
/// independent sets, otherwise `random_pairs` pairs of Glauber samples.
ContractionCheck check_lemma48(const Graph& g, const Rational& lambda,
                               const Rational& zeta,
                               std::uint64_t exhaustive_cap = 200,
                               std::size_t random_pairs = 10'000,
                               std::uint64_t seed = 1);

}  // namespace mixing
