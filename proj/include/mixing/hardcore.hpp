#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "mixing/graph.hpp"
#include "mixing/rational.hpp"
#include "mixing/rng.hpp"

namespace mixing {

/// Vertex subset stored as an occupancy vector. Independence is a property
/// relative to a graph; see is_independent / make_independent_set.
class IndependentSet {
 public:
  IndependentSet() = default;
  explicit IndependentSet(std::size_t n) : occupied_(n, 0) {}

  /// Bit v of `mask` marks vertex v; requires n <= 64.
  static IndependentSet from_mask(std::size_t n, std::uint64_t mask);
  std::uint64_t mask() const;

  std::size_t vertex_count() const { return occupied_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(Vertex v) const { return occupied_[v] != 0; }
  void insert(Vertex v);
  void erase(Vertex v);
  std::vector<Vertex> members() const;

  friend bool operator==(const IndependentSet&, const IndependentSet&) = default;

 private:
  std::vector<char> occupied_;
  std::size_t count_ = 0;
};

bool is_independent(const Graph& g, const IndependentSet& x);
/// Throws InvalidArgument on out-of-range members or an occupied edge.
IndependentSet make_independent_set(const Graph& g,
                                    std::span<const Vertex> members);
std::size_t hamming(const IndependentSet& x, const IndependentSet& y);

double weight(const IndependentSet& x, double lambda);
Rational weight(const IndependentSet& x, const Rational& lambda);

/// True iff no neighbor of v is occupied.
bool is_free(const Graph& g, const IndependentSet& x, Vertex v);

/// Uniform vertex v (one rng call), then one coin (one rng call): propose
/// X + v with probability lambda / (1 + lambda), otherwise X - v. A blocked
/// addition leaves X unchanged.
IndependentSet glauber_step_hc(const Graph& g, IndependentSet x, double lambda,
                               Rng& rng);

/// U(X, v): neighbors w of v with X disjoint from N(w) \ {v}.
std::vector<Vertex> unblocked(const Graph& g, const IndependentSet& x,
                              Vertex v);

/// Shares the vertex and the add/remove coin; each chain then applies its own
/// blocking rule.
std::pair<IndependentSet, IndependentSet> maximal_coupled_step_hc(
    const Graph& g, IndependentSet x, IndependentSet y, double lambda,
    Rng& rng);

struct SetPairOutcome {
  IndependentSet x;
  IndependentSet y;
  Rational probability;
};

/// Exact one-step law of the coupling: 2n entries, one per (vertex, coin).
std::vector<SetPairOutcome> coupled_step_distribution_hc(
    const Graph& g, const IndependentSet& x, const IndependentSet& y,
    const Rational& lambda);

Rational expected_coupled_distance_hc(const Graph& g, const IndependentSet& x,
                                      const IndependentSet& y,
                                      const Rational& lambda);

/// |U(X, v)|, |U(Y, v)| <= (1 - zeta)(1 + lambda) / lambda for every v.
bool lemma48_hypothesis(const Graph& g, const IndependentSet& x,
                        const IndependentSet& y, const Rational& lambda,
                        const Rational& zeta);

struct HardcoreMixingParams {
  double min_degree_real = 0;  ///< 320000 ln(144 n^3 / (zeta delta)) / zeta^4
  std::uint64_t min_degree = 0;
  std::uint64_t steps = 0;  ///< ceil((8n / zeta) ln(2n / delta))
};

/// Degree requirement and warm-start step count for the hard-core chain.
HardcoreMixingParams lemma41_params(std::size_t n, double zeta, double delta);

/// Sorted member indices on one line, "-" for the empty set.
void write_independent_set(std::ostream& out, const IndependentSet& x);
IndependentSet read_independent_set(std::istream& in, const Graph& g);

}  // namespace mixing
