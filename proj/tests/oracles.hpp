#pragma once

// Brute-force reference computations. They see a graph only as a vertex
// count and an edge list and share no code with the library beyond the
// rational type.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "mixing/graph.hpp"
#include "mixing/rational.hpp"

namespace oracle {

using mixing::Rational;
using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

inline EdgeList edges_of(const mixing::Graph& g) {
  EdgeList out;
  for (auto [u, v] : g.edges()) out.emplace_back(u, v);
  return out;
}

inline std::vector<std::vector<bool>> adjacency(std::size_t n, const EdgeList& edges) {
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (auto [u, v] : edges) a[u][v] = a[v][u] = true;
  return a;
}

inline bool independent_mask(const EdgeList& edges, std::uint64_t mask) {
  for (auto [u, v] : edges) {
    if ((mask >> u & 1) && (mask >> v & 1)) return false;
  }
  return true;
}

inline std::size_t popcount(std::uint64_t m) {
  std::size_t c = 0;
  for (; m; m &= m - 1) ++c;
  return c;
}

inline std::size_t count_independent_sets(std::size_t n, const EdgeList& edges) {
  std::size_t c = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) c += independent_mask(edges, m);
  return c;
}

inline Rational partition(std::size_t n, const EdgeList& edges, const Rational& lambda) {
  Rational z = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (!independent_mask(edges, m)) continue;
    Rational w = 1;
    for (std::size_t i = 0; i < popcount(m); ++i) w *= lambda;
    z += w;
  }
  return z;
}

/// Z(C_n, lambda) = trace of [[1, 1], [lambda, 0]]^n.
inline Rational cycle_partition(std::size_t n, const Rational& lambda) {
  Rational a = 1, b = 0, c = 0, d = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Rational na = a + b * lambda, nb = a, nc = c + d * lambda, nd = c;
    a = na, b = nb, c = nc, d = nd;
  }
  return a + d;
}

/// All of [k]^n in base-k order, vertex 0 most significant, colors 1..k.
inline std::vector<std::vector<int>> all_colorings(std::size_t n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(n, 1);
  while (true) {
    out.push_back(c);
    std::size_t i = n;
    while (i > 0 && c[i - 1] == k) c[--i] = 1;
    if (i == 0) break;
    ++c[i - 1];
  }
  return out;
}

inline bool proper(const EdgeList& edges, const std::vector<int>& c) {
  for (auto [u, v] : edges) {
    if (c[u] == c[v]) return false;
  }
  return true;
}

inline std::size_t count_proper(std::size_t n, const EdgeList& edges, int k) {
  std::size_t count = 0;
  for (const auto& c : all_colorings(n, k)) count += proper(edges, c);
  return count;
}

/// Heat-bath kernel straight from the definition, over the given states.
inline std::vector<std::vector<Rational>> coloring_kernel(
    std::size_t n, const EdgeList& edges, int k, const std::vector<std::vector<int>>& states) {
  const auto adj = adjacency(n, edges);
  const std::size_t s = states.size();
  std::vector<std::vector<Rational>> p(s, std::vector<Rational>(s, Rational(0)));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      for (std::size_t v = 0; v < n; ++v) {
        bool others_same = true;
        for (std::size_t w = 0; w < n; ++w) {
          if (w != v && states[i][w] != states[j][w]) others_same = false;
        }
        if (!others_same) continue;
        int avail = 0;
        bool target_ok = true;
        for (int col = 1; col <= k; ++col) {
          bool free = true;
          for (std::size_t w = 0; w < n; ++w) {
            if (adj[v][w] && states[i][w] == col) free = false;
          }
          avail += free;
          if (col == states[j][v]) target_ok = free;
        }
        if (target_ok) p[i][j] += Rational(1, static_cast<long long>(n) * avail);
      }
    }
  }
  return p;
}

/// Hard-core Glauber kernel from the definition over masks.
inline std::vector<std::vector<Rational>> hardcore_kernel(std::size_t n, const EdgeList& edges,
                                                          const std::vector<std::uint64_t>& masks,
                                                          const Rational& lambda) {
  const auto adj = adjacency(n, edges);
  const std::size_t s = masks.size();
  const Rational add = lambda / (1 + lambda);
  const Rational nn(static_cast<long long>(n));
  std::vector<std::vector<Rational>> p(s, std::vector<Rational>(s, Rational(0)));
  auto index = [&](std::uint64_t m) {
    for (std::size_t i = 0; i < s; ++i) {
      if (masks[i] == m) return i;
    }
    return s;
  };
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      bool blocked = false;
      for (std::size_t w = 0; w < n; ++w) {
        if (adj[v][w] && (masks[i] >> w & 1)) blocked = true;
      }
      const std::uint64_t with = blocked ? masks[i] : masks[i] | (std::uint64_t{1} << v);
      const std::uint64_t without = masks[i] & ~(std::uint64_t{1} << v);
      p[i][index(with)] += add / nn;
      p[i][index(without)] += (1 - add) / nn;
    }
  }
  return p;
}

inline std::vector<double> step(const std::vector<std::vector<Rational>>& p,
                                const std::vector<double>& d) {
  std::vector<double> out(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      out[j] += d[i] * static_cast<double>(p[i][j]);
    }
  }
  return out;
}

inline double tv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return s / 2;
}

/// max over starts in `starts` of tv(delta_x P^t, pi) for t = 0..steps.
inline std::vector<double> worst_decay(const std::vector<std::vector<Rational>>& p,
                                       const std::vector<double>& pi,
                                       const std::vector<std::size_t>& starts, std::size_t steps) {
  std::vector<double> worst(steps + 1, 0.0);
  for (std::size_t x : starts) {
    std::vector<double> d(pi.size(), 0.0);
    d[x] = 1;
    for (std::size_t t = 0; t <= steps; ++t) {
      worst[t] = std::max(worst[t], tv(d, pi));
      d = step(p, d);
    }
  }
  return worst;
}

/// Girth by deleting each edge in turn and measuring the detour.
inline std::optional<std::size_t> girth(std::size_t n, const EdgeList& edges) {
  const auto adj = adjacency(n, edges);
  std::optional<std::size_t> best;
  for (auto [s, t] : edges) {
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::deque<std::size_t> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t w = 0; w < n; ++w) {
        if (!adj[u][w] || dist[w] != SIZE_MAX) continue;
        if ((u == s && w == t) || (u == t && w == s)) continue;
        dist[w] = dist[u] + 1;
        q.push_back(w);
      }
    }
    if (dist[t] != SIZE_MAX && (!best || dist[t] + 1 < *best)) best = dist[t] + 1;
  }
  return best;
}

/// Random simple graph, each pair present with probability num/den.
template <class Engine>
EdgeList random_edges(std::size_t n, unsigned num, unsigned den, Engine& eng) {
  EdgeList e;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (eng() % den < num) e.emplace_back(u, v);
    }
  }
  return e;
}

}  // namespace oracle
