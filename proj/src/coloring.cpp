#include "mixing/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mixing/coupling.hpp"
#include "mixing/errors.hpp"
#include "mixing/fixed_point.hpp"

namespace mixing {

Coloring::Coloring(std::vector<Color> colors, int palette)
    : colors_(std::move(colors)), palette_(palette) {
  if (palette_ < 1) throw InvalidArgument("coloring: palette size must be >= 1");
  for (Color c : colors_) {
    if (c < 1 || c > palette_) {
      throw InvalidArgument("coloring: color " + std::to_string(c) +
                            " outside 1.." + std::to_string(palette_));
    }
  }
}

Coloring Coloring::constant(std::size_t n, int palette, Color color) {
  return Coloring(std::vector<Color>(n, color), palette);
}

void Coloring::set(Vertex v, Color c) {
  if (c < 1 || c > palette_) throw InvalidArgument("coloring: color out of range");
  colors_[v] = c;
}

bool is_proper(const Graph& g, const Coloring& x) {
  for (const auto& [u, v] : g.edges()) {
    if (x[u] == x[v]) return false;
  }
  return true;
}

std::size_t hamming(const Coloring& x, const Coloring& y) {
  if (x.size() != y.size()) throw InvalidArgument("hamming: size mismatch");
  std::size_t d = 0;
  for (Vertex v = 0; v < x.size(); ++v) d += x[v] != y[v];
  return d;
}

std::vector<Color> available_colors(const Graph& g, const Coloring& x,
                                    Vertex v) {
  std::vector<char> blocked(static_cast<std::size_t>(x.palette()) + 1, 0);
  for (Vertex w : g.neighbors(v)) blocked[static_cast<std::size_t>(x[w])] = 1;
  std::vector<Color> out;
  out.reserve(static_cast<std::size_t>(x.palette()));
  for (Color c = 1; c <= x.palette(); ++c) {
    if (!blocked[static_cast<std::size_t>(c)]) out.push_back(c);
  }
  return out;
}

void require_heat_bath(const Graph& g, const Coloring& x) {
  if (x.size() != g.vertex_count()) {
    throw InvalidArgument("coloring has " + std::to_string(x.size()) +
                          " entries for a graph on " +
                          std::to_string(g.vertex_count()) + " vertices");
  }
  if (static_cast<std::size_t>(x.palette()) < max_degree(g) + 1) {
    throw InvalidArgument("heat-bath dynamics needs k >= Delta + 1 (k = " +
                          std::to_string(x.palette()) + ", Delta = " +
                          std::to_string(max_degree(g)) + ")");
  }
}

Coloring glauber_step(const Graph& g, Coloring x, Rng& rng) {
  const Vertex v = rng.uniform_index(g.vertex_count());
  const auto avail = available_colors(g, x, v);
  // k >= Delta + 1 guarantees a free color.
  const std::size_t pick = rng.uniform_index(avail.size());
  x.set(v, avail[pick]);
  return x;
}

namespace {

template <class Num>
struct Entry {
  Color x;
  Color y;
  Num p;
};

/// Diagonal entries in color order, then the residual quantile pairing.
template <class Num>
std::vector<Entry<Num>> coupling_entries(std::span<const Color> ax,
                                         std::span<const Color> ay) {
  const Num one(1);
  const std::size_t m = std::max(ax.size(), ay.size());
  const Num px = one / Num(static_cast<long long>(ax.size()));
  const Num py = one / Num(static_cast<long long>(ay.size()));
  const Num shared = one / Num(static_cast<long long>(m));

  std::vector<Entry<Num>> out;
  std::vector<std::pair<Color, Num>> rx, ry;
  std::size_t j = 0;
  for (Color c : ax) {
    while (j < ay.size() && ay[j] < c) ++j;
    const bool both = j < ay.size() && ay[j] == c;
    if (both) out.push_back({c, c, shared});
    Num rest = both ? Num(px - shared) : px;
    if (rest > 0) rx.emplace_back(c, rest);
  }
  std::size_t i = 0;
  for (Color c : ay) {
    while (i < ax.size() && ax[i] < c) ++i;
    const bool both = i < ax.size() && ax[i] == c;
    Num rest = both ? Num(py - shared) : py;
    if (rest > 0) ry.emplace_back(c, rest);
  }
  std::size_t a = 0, b = 0;
  while (a < rx.size() && b < ry.size()) {
    Num take = std::min(rx[a].second, ry[b].second);
    out.push_back({rx[a].first, ry[b].first, take});
    rx[a].second -= take;
    ry[b].second -= take;
    if (rx[a].second <= 0) ++a;
    if (ry[b].second <= 0) ++b;
  }
  return out;
}

}  // namespace

std::vector<ColorPair> jerrum_coupling_table(std::span<const Color> avail_x,
                                             std::span<const Color> avail_y) {
  if (avail_x.empty() || avail_y.empty()) {
    throw InvalidArgument("jerrum_coupling_table: empty available set");
  }
  std::vector<ColorPair> out;
  for (auto& e : coupling_entries<Rational>(avail_x, avail_y)) {
    out.push_back({e.x, e.y, std::move(e.p)});
  }
  return out;
}

namespace {

void require_same_instance(const Graph& g, const Coloring& x, const Coloring& y) {
  if (x.palette() != y.palette() || x.size() != y.size()) {
    throw InvalidArgument("coupled colorings differ in size or palette");
  }
  require_heat_bath(g, x);
}

}  // namespace

std::pair<Coloring, Coloring> jerrum_coupled_step(const Graph& g, Coloring x,
                                                  Coloring y, Rng& rng) {
  const Vertex v = rng.uniform_index(g.vertex_count());
  const double u = rng.uniform_unit();
  const auto ax = available_colors(g, x, v);
  const auto ay = available_colors(g, y, v);
  const auto table = coupling_entries<double>(ax, ay);
  double cumulative = 0;
  const Entry<double>* chosen = &table.back();
  for (const auto& e : table) {
    cumulative += e.p;
    if (u < cumulative) {
      chosen = &e;
      break;
    }
  }
  x.set(v, chosen->x);
  y.set(v, chosen->y);
  return {std::move(x), std::move(y)};
}

std::vector<ColoringPairOutcome> coupled_step_distribution(const Graph& g,
                                                           const Coloring& x,
                                                           const Coloring& y) {
  require_same_instance(g, x, y);
  const std::size_t n = g.vertex_count();
  const Rational per_vertex(1, static_cast<long long>(n));
  std::vector<ColoringPairOutcome> out;
  for (Vertex v = 0; v < n; ++v) {
    const auto ax = available_colors(g, x, v);
    const auto ay = available_colors(g, y, v);
    for (const auto& e : jerrum_coupling_table(ax, ay)) {
      Coloring nx = x, ny = y;
      nx.set(v, e.x);
      ny.set(v, e.y);
      out.push_back({std::move(nx), std::move(ny), per_vertex * e.probability});
    }
  }
  return out;
}

namespace {

std::size_t intersection_size(const std::vector<Color>& a, const std::vector<Color>& b) {
  std::size_t count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) { ++count; ++i; ++j; }
    else if (a[i] < b[j]) ++i;
    else ++j;
  }
  return count;
}

}  // namespace

Rational expected_coupled_distance(const Graph& g, const Coloring& x,
                                   const Coloring& y) {
  require_same_instance(g, x, y);
  const std::size_t n = g.vertex_count();
  if (n == 0) return Rational(0);
  Rational sum(static_cast<long long>((n - 1) * hamming(x, y)));
  for (Vertex w = 0; w < n; ++w) {
    const auto ax = available_colors(g, x, w);
    const auto ay = available_colors(g, y, w);
    const auto m = static_cast<long long>(std::max(ax.size(), ay.size()));
    const auto shared = static_cast<long long>(intersection_size(ax, ay));
    sum += Rational(m - shared, m);
  }
  return sum / static_cast<long long>(n);
}

bool is_distance_decreasing_pair(const Graph& g, const Coloring& x,
                                 const Coloring& y, const Rational& eps) {
  if (x == y) {
    throw InvalidArgument("distance-decreasing check needs distinct states");
  }
  const Rational rho(static_cast<long long>(hamming(x, y)));
  return expected_coupled_distance(g, x, y) < (1 - eps) * rho;
}

bool lemma23_hypothesis(const Graph& g, const Coloring& x,
                        const Rational& beta) {
  if (beta <= 0 || beta >= 1) throw InvalidArgument("lemma23_hypothesis: beta must lie in (0, 1)");
  const Rational delta(static_cast<long long>(max_degree(g)));
  const Rational keep = 1 - beta;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const Rational a(static_cast<long long>(available_colors(g, x, v).size()));
    if (a * keep < delta) return false;
  }
  return true;
}

std::size_t min_available(const Graph& g, const Coloring& x) {
  std::size_t best = static_cast<std::size_t>(x.palette());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    best = std::min(best, available_colors(g, x, v).size());
  }
  return best;
}

double uniformity_statistic(const Graph& g, const Coloring& x) {
  const double k = x.palette();
  const double expected = k * std::exp(-static_cast<double>(max_degree(g)) / k);
  return static_cast<double>(min_available(g, x)) / expected;
}

double lemma21_threshold(std::size_t max_deg, int k, double beta) {
  const double kk = k;
  return kk * (std::exp(-static_cast<double>(max_deg) / kk) - beta);
}

ColoringMixingParams theorem14_params(std::size_t n, std::size_t max_deg,
                                      double zeta, double delta) {
  if (n == 0) throw InvalidArgument("theorem14_params: n must be positive");
  if (!(zeta > 0 && zeta < 1)) throw InvalidArgument("theorem14_params: zeta must lie in (0, 1)");
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("theorem14_params: delta must lie in (0, 1)");
  const double nn = static_cast<double>(n);
  ColoringMixingParams p;
  p.alpha = solve_alpha();
  p.k_degree_term = ceil_count((1 + zeta) * p.alpha * static_cast<double>(max_deg));
  p.k_concentration_term =
      ceil_count(288.0 * std::log(96.0 * nn * nn * nn / zeta) / (zeta * zeta));
  p.k_min = std::max(p.k_degree_term, p.k_concentration_term);
  const double rounds = static_cast<double>(ceil_count(std::log(32.0 * nn)) *
                                            ceil_count(std::log(1.0 / delta)));
  p.steps = ceil_count(6.0 * nn * rounds / zeta);
  return p;
}

void write_coloring(std::ostream& out, const Coloring& x) {
  for (Vertex v = 0; v < x.size(); ++v) {
    if (v) out << ' ';
    out << x[v];
  }
  out << '\n';
}

Coloring read_coloring(std::istream& in, int palette) {
  std::string line;
  std::getline(in, line);
  std::istringstream ss(line);
  std::vector<Color> colors;
  long long c = 0;
  while (ss >> c) colors.push_back(static_cast<Color>(c));
  if (!ss.eof()) throw InvalidArgument("coloring: non-integer token");
  return Coloring(std::move(colors), palette);
}

}  // namespace mixing
