#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mixing/coloring.hpp"
#include "mixing/graph.hpp"
#include "mixing/rational.hpp"
#include "mixing/rng.hpp"

namespace mixing {

enum class SamplerKind { Exact, Mcmc };

/// Heat-bath run of `burn_in` steps from the all-ones coloring.
Coloring sample_coloring_mcmc(const Graph& g, int k, std::size_t burn_in,
                              Rng& rng);

struct Lemma21Options {
  std::size_t samples = 10'000;
  SamplerKind sampler = SamplerKind::Exact;
  std::size_t burn_in = 0;  ///< 0 selects 200 n
  std::uint64_t seed = 1;
  std::uint64_t enumeration_cap = 1'000'000;
  unsigned workers = 0;
};

struct Lemma21Report {
  std::size_t n = 0;
  std::size_t max_degree = 0;
  int k = 0;
  double beta = 0;
  double threshold = 0;  ///< k (e^{-Delta/k} - beta)
  double bound = 0;      ///< n e^{-beta^2 k / 8}, unclamped
  SamplerKind sampler = SamplerKind::Exact;
  std::size_t samples = 0;
  std::size_t burn_in = 0;  ///< 0 for the exact sampler
  std::size_t violations = 0;
  double empirical_rate = 0;
  double tolerance = 0;
  bool pass = false;
  /// Ground truth from enumeration, when the proper colorings fit the cap.
  std::optional<double> exact_rate;
  std::vector<std::size_t> min_available_counts;  ///< index = min_v |A(X, v)|
  std::vector<double> min_available_exact;        ///< empty without enumeration
};

/// Local-uniformity check for uniformly random proper colorings.
/// Hypotheses (triangle-free, beta in (0, 1], k >= Delta + 2/beta) raise
/// HypothesisError individually.
Lemma21Report verify_lemma21(const Graph& g, int k, double beta,
                             const Lemma21Options& options = {});

struct ContractionCheck {
  std::size_t pairs_checked = 0;
  std::size_t hypothesis_pairs = 0;
  std::size_t violations = 0;
  bool exhaustive = false;
};

/// For pairs (X, Y), X != Y, with lemma23_hypothesis(X, beta): checks
/// E rho(X1, Y1) <= (1 - beta/n) rho(X, Y) exactly. Exhaustive over
/// [k]^V when k^n <= exhaustive_cap, otherwise `random_pairs` uniform pairs.
ContractionCheck check_lemma23(const Graph& g, int k, const Rational& beta,
                               std::uint64_t exhaustive_cap = 10'000,
                               std::size_t random_pairs = 100'000,
                               std::uint64_t seed = 1);

/// min over distinct pairs of [k]^V of 1 - E rho(X1, Y1) / rho(X, Y): every
/// pair satisfies E rho(X1, Y1) <= (1 - eps) rho(X, Y) at this eps.
Rational coloring_contraction_rate(const Graph& g, int k,
                                   std::uint64_t cap = 10'000);

}  // namespace mixing
