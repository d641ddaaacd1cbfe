#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mixing/errors.hpp"

namespace mixing {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Why build_graph rejected an edge list.
class GraphError : public InvalidArgument {
 public:
  enum class Kind { VertexOutOfRange, DuplicateEdge, SelfLoop, Parse };
  GraphError(Kind kind, const std::string& what)
      : InvalidArgument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built, so a
/// single instance can be shared by any number of chain replicas.
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Sorted neighbor list of v.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(std::size_t n, std::span<const Edge> edges);
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Validates and builds a graph; throws GraphError on a self-loop, an
/// out-of-range endpoint, or an edge listed twice (in either order).
Graph build_graph(std::size_t n, std::span<const Edge> edges);
inline Graph build_graph(std::size_t n, const std::vector<Edge>& edges) {
  return build_graph(n, std::span<const Edge>(edges));
}

std::size_t max_degree(const Graph& g);
bool is_regular(const Graph& g);

/// Shortest cycle length, or nullopt for a forest.
std::optional<std::size_t> girth(const Graph& g);
bool is_triangle_free(const Graph& g);
bool is_bipartite(const Graph& g);

namespace generate {

Graph cycle(std::size_t n);
Graph path(std::size_t n);
Graph complete(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
/// Center 0, leaves 1..leaves.
Graph star(std::size_t leaves);
Graph edgeless(std::size_t n);
Graph hypercube(std::size_t dimension);

/// Delta-regular bipartite graph with sides {0..n/2-1} and {n/2..n-1}, built
/// by superimposing Delta uniformly random perfect matchings and rejecting
/// multigraphs. Throws InvalidArgument if parameters are infeasible and
/// std::runtime_error once `max_attempts` are exhausted.
Graph random_bipartite_regular(std::size_t n, std::size_t degree,
                               std::uint64_t seed,
                               std::size_t max_attempts = 1000);

/// Parses a family spec such as "cycle:6", "complete_bipartite:3,3" or
/// "random_bipartite_regular:10,3,1".
Graph from_spec(const std::string& spec);

}  // namespace generate

/// Text format: "n m" then m lines "u v" with u < v, 0-indexed.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

}  // namespace mixing
