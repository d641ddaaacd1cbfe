#include "mixing/hardcore.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mixing/errors.hpp"

namespace mixing {

IndependentSet IndependentSet::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw InvalidArgument("IndependentSet::from_mask: n > 64");
  IndependentSet s(n);
  for (Vertex v = 0; v < n; ++v) {
    if ((mask >> v) & 1u) s.insert(v);
  }
  return s;
}

std::uint64_t IndependentSet::mask() const {
  if (occupied_.size() > 64) throw InvalidArgument("IndependentSet::mask: n > 64");
  std::uint64_t m = 0;
  for (Vertex v = 0; v < occupied_.size(); ++v) {
    if (occupied_[v]) m |= std::uint64_t{1} << v;
  }
  return m;
}

void IndependentSet::insert(Vertex v) {
  if (!occupied_[v]) {
    occupied_[v] = 1;
    ++count_;
  }
}

void IndependentSet::erase(Vertex v) {
  if (occupied_[v]) {
    occupied_[v] = 0;
    --count_;
  }
}

std::vector<Vertex> IndependentSet::members() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for (Vertex v = 0; v < occupied_.size(); ++v) {
    if (occupied_[v]) out.push_back(v);
  }
  return out;
}

bool is_independent(const Graph& g, const IndependentSet& x) {
  if (x.vertex_count() != g.vertex_count()) return false;
  for (const auto& [u, v] : g.edges()) {
    if (x.contains(u) && x.contains(v)) return false;
  }
  return true;
}

IndependentSet make_independent_set(const Graph& g,
                                    std::span<const Vertex> members) {
  IndependentSet s(g.vertex_count());
  for (Vertex v : members) {
    if (v >= g.vertex_count()) {
      throw InvalidArgument("independent set: vertex " + std::to_string(v) + " out of range");
    }
    s.insert(v);
  }
  if (!is_independent(g, s)) throw InvalidArgument("independent set: members share an edge");
  return s;
}

std::size_t hamming(const IndependentSet& x, const IndependentSet& y) {
  if (x.vertex_count() != y.vertex_count()) throw InvalidArgument("hamming: size mismatch");
  std::size_t d = 0;
  for (Vertex v = 0; v < x.vertex_count(); ++v) d += x.contains(v) != y.contains(v);
  return d;
}

double weight(const IndependentSet& x, double lambda) {
  return std::pow(lambda, static_cast<double>(x.size()));
}

Rational weight(const IndependentSet& x, const Rational& lambda) {
  Rational w(1);
  for (std::size_t i = 0; i < x.size(); ++i) w *= lambda;
  return w;
}

bool is_free(const Graph& g, const IndependentSet& x, Vertex v) {
  for (Vertex w : g.neighbors(v)) {
    if (x.contains(w)) return false;
  }
  return true;
}

namespace {

/// One chain's response to the shared (vertex, coin) proposal.
void apply_update(const Graph& g, IndependentSet& x, Vertex v, bool add) {
  if (!add) {
    x.erase(v);
  } else if (is_free(g, x, v)) {
    x.insert(v);
  }
}

void require_step_args(const Graph& g, const IndependentSet& x, double lambda) {
  if (x.vertex_count() != g.vertex_count()) throw InvalidArgument("set does not match the graph");
  if (!(lambda >= 0) || !std::isfinite(lambda)) {
    throw InvalidArgument("fugacity must be finite and nonnegative");
  }
}

void require_positive(const Rational& lambda) {
  if (lambda <= 0) throw InvalidArgument("fugacity must be positive");
}

}  // namespace

IndependentSet glauber_step_hc(const Graph& g, IndependentSet x, double lambda,
                               Rng& rng) {
  require_step_args(g, x, lambda);
  const Vertex v = rng.uniform_index(g.vertex_count());
  const bool add = rng.uniform_unit() < lambda / (1.0 + lambda);
  apply_update(g, x, v, add);
  return x;
}

std::vector<Vertex> unblocked(const Graph& g, const IndependentSet& x,
                              Vertex v) {
  std::vector<Vertex> out;
  for (Vertex w : g.neighbors(v)) {
    bool open = true;
    for (Vertex z : g.neighbors(w)) {
      if (z != v && x.contains(z)) {
        open = false;
        break;
      }
    }
    if (open) out.push_back(w);
  }
  return out;
}

std::pair<IndependentSet, IndependentSet> maximal_coupled_step_hc(
    const Graph& g, IndependentSet x, IndependentSet y, double lambda,
    Rng& rng) {
  require_step_args(g, x, lambda);
  require_step_args(g, y, lambda);
  const Vertex v = rng.uniform_index(g.vertex_count());
  const bool add = rng.uniform_unit() < lambda / (1.0 + lambda);
  apply_update(g, x, v, add);
  apply_update(g, y, v, add);
  return {std::move(x), std::move(y)};
}

std::vector<SetPairOutcome> coupled_step_distribution_hc(
    const Graph& g, const IndependentSet& x, const IndependentSet& y,
    const Rational& lambda) {
  require_positive(lambda);
  if (x.vertex_count() != g.vertex_count() || y.vertex_count() != g.vertex_count()) {
    throw InvalidArgument("coupled sets do not match the graph");
  }
  const Rational per_vertex(1, static_cast<long long>(g.vertex_count()));
  const Rational p_add = per_vertex * lambda / (1 + lambda);
  const Rational p_remove = per_vertex / (1 + lambda);
  std::vector<SetPairOutcome> out;
  out.reserve(2 * g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (bool add : {true, false}) {
      IndependentSet nx = x, ny = y;
      apply_update(g, nx, v, add);
      apply_update(g, ny, v, add);
      out.push_back({std::move(nx), std::move(ny), add ? p_add : p_remove});
    }
  }
  return out;
}

Rational expected_coupled_distance_hc(const Graph& g, const IndependentSet& x,
                                      const IndependentSet& y,
                                      const Rational& lambda) {
  require_positive(lambda);
  const std::size_t n = g.vertex_count();
  if (n == 0) return Rational(0);
  // Only the updated vertex can change state. After an accepted addition a
  // vertex is occupied iff it is free (or already occupied, which implies
  // free); after a removal both chains agree.
  const std::size_t rho = hamming(x, y);
  const Rational p_add = lambda / (1 + lambda);
  Rational sum(0);
  for (Vertex v = 0; v < n; ++v) {
    const bool before = x.contains(v) != y.contains(v);
    const bool in_x = x.contains(v) || is_free(g, x, v);
    const bool in_y = y.contains(v) || is_free(g, y, v);
    const long long others = static_cast<long long>(rho) - (before ? 1 : 0);
    Rational after(others);
    if (in_x != in_y) after += p_add;
    sum += after;
  }
  return sum / static_cast<long long>(n);
}

bool lemma48_hypothesis(const Graph& g, const IndependentSet& x,
                        const IndependentSet& y, const Rational& lambda,
                        const Rational& zeta) {
  require_positive(lambda);
  if (zeta <= 0 || zeta >= 1) throw InvalidArgument("lemma48_hypothesis: zeta must lie in (0, 1)");
  const Rational cap = (1 - zeta) * (1 + lambda);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (const IndependentSet* s : {&x, &y}) {
      const Rational u(static_cast<long long>(unblocked(g, *s, v).size()));
      if (u * lambda > cap) return false;
    }
  }
  return true;
}

HardcoreMixingParams lemma41_params(std::size_t n, double zeta, double delta) {
  if (n == 0) throw InvalidArgument("lemma41_params: n must be positive");
  if (!(zeta > 0 && zeta < 1)) throw InvalidArgument("lemma41_params: zeta must lie in (0, 1)");
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("lemma41_params: delta must lie in (0, 1)");
  const double nn = static_cast<double>(n);
  HardcoreMixingParams p;
  p.min_degree_real = 320000.0 * std::log(144.0 * nn * nn * nn / (zeta * delta)) /
                      std::pow(zeta, 4);
  p.min_degree = static_cast<std::uint64_t>(std::ceil(p.min_degree_real));
  p.steps = static_cast<std::uint64_t>(std::ceil(8.0 * nn / zeta * std::log(2.0 * nn / delta)));
  return p;
}

void write_independent_set(std::ostream& out, const IndependentSet& x) {
  const auto members = x.members();
  if (members.empty()) {
    out << "-\n";
    return;
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out << ' ';
    out << members[i];
  }
  out << '\n';
}

IndependentSet read_independent_set(std::istream& in, const Graph& g) {
  std::string line;
  std::getline(in, line);
  std::istringstream ss(line);
  std::string token;
  std::vector<Vertex> members;
  bool dash = false;
  while (ss >> token) {
    if (token == "-") {
      dash = true;
      continue;
    }
    try {
      std::size_t used = 0;
      const auto v = std::stoull(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      members.push_back(static_cast<Vertex>(v));
    } catch (const std::exception&) {
      throw InvalidArgument("independent set: bad token '" + token + "'");
    }
  }
  if (dash && !members.empty()) throw InvalidArgument("independent set: '-' mixed with members");
  return make_independent_set(g, members);
}

}  // namespace mixing
