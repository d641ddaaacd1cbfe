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

using Color = int;

/// Assignment of a color in 1..k to every vertex. Need not be proper: the
/// chain is defined on all of [k]^V.
class Coloring {
 public:
  Coloring() = default;
  /// Throws InvalidArgument if any entry lies outside 1..k.
  Coloring(std::vector<Color> colors, int palette);
  /// Every vertex colored `color`.
  static Coloring constant(std::size_t n, int palette, Color color = 1);

  int palette() const { return palette_; }
  std::size_t size() const { return colors_.size(); }
  Color operator[](Vertex v) const { return colors_[v]; }
  void set(Vertex v, Color c);
  std::span<const Color> colors() const { return colors_; }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<Color> colors_;
  int palette_ = 0;
};

bool is_proper(const Graph& g, const Coloring& x);
std::size_t hamming(const Coloring& x, const Coloring& y);

/// A(X, v): colors in 1..k absent from v's neighborhood, ascending.
std::vector<Color> available_colors(const Graph& g, const Coloring& x,
                                    Vertex v);

/// Throws InvalidArgument unless k >= Delta + 1 and x is sized for g.
void require_heat_bath(const Graph& g, const Coloring& x);

/// One heat-bath step: uniform vertex v (one rng call), then X'(v) uniform on
/// A(X, v) (one rng call).
Coloring glauber_step(const Graph& g, Coloring x, Rng& rng);

/// One entry of the joint distribution of the coupled new colors at a vertex.
struct ColorPair {
  Color x;
  Color y;
  Rational probability;
};

/// Jerrum's maximal coupling of the uniform distributions on two available
/// sets (both ascending). Shared colors are matched with probability
/// 1/max(|A_X|, |A_Y|); the residual masses, listed in color order, are
/// paired greedily by cumulative mass. Entries with zero mass are omitted.
std::vector<ColorPair> jerrum_coupling_table(std::span<const Color> avail_x,
                                             std::span<const Color> avail_y);

/// Both chains update the same uniform vertex (one rng call); the joint new
/// color is drawn from jerrum_coupling_table (one rng call).
std::pair<Coloring, Coloring> jerrum_coupled_step(const Graph& g, Coloring x,
                                                  Coloring y, Rng& rng);

struct ColoringPairOutcome {
  Coloring x;
  Coloring y;
  Rational probability;
};

/// Exact one-step law of jerrum_coupled_step, one entry per
/// (vertex, table entry); outcomes are not merged.
std::vector<ColoringPairOutcome> coupled_step_distribution(const Graph& g,
                                                           const Coloring& x,
                                                           const Coloring& y);

/// Exact E[rho(X1, Y1)] under the coupling, from the per-vertex
/// disagreement probability 1 - |A_X cap A_Y| / max(|A_X|, |A_Y|).
Rational expected_coupled_distance(const Graph& g, const Coloring& x,
                                   const Coloring& y);

/// E[rho(X1, Y1)] < (1 - eps) rho(X, Y), exactly. Throws if X == Y.
bool is_distance_decreasing_pair(const Graph& g, const Coloring& x,
                                 const Coloring& y, const Rational& eps);

/// |A(X, v)| (1 - beta) >= Delta at every vertex; beta in (0, 1).
bool lemma23_hypothesis(const Graph& g, const Coloring& x,
                        const Rational& beta);

std::size_t min_available(const Graph& g, const Coloring& x);

/// min_v |A(X, v)| / (k e^{-Delta/k}).
double uniformity_statistic(const Graph& g, const Coloring& x);

/// k (e^{-Delta/k} - beta): X is a local-uniformity violation iff some vertex
/// has strictly fewer available colors than this.
double lemma21_threshold(std::size_t max_deg, int k, double beta);

/// Smallest admissible palette and step count for the triangle-free coloring
/// mixing theorem.
struct ColoringMixingParams {
  double alpha = 0;
  std::uint64_t k_degree_term = 0;         ///< ceil((1 + zeta) alpha Delta)
  std::uint64_t k_concentration_term = 0;  ///< ceil(288 ln(96 n^3 / zeta) / zeta^2)
  std::uint64_t k_min = 0;
  std::uint64_t steps = 0;  ///< ceil(6 n ceil(ln 32n) ceil(ln 1/delta) / zeta)
};

ColoringMixingParams theorem14_params(std::size_t n, std::size_t max_deg,
                                      double zeta, double delta);

/// One line of space-separated colors.
void write_coloring(std::ostream& out, const Coloring& x);
Coloring read_coloring(std::istream& in, int palette);

}  // namespace mixing
