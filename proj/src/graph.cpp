#include "mixing/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mixing {

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nu = adjacency_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  g.adjacency_.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw GraphError(GraphError::Kind::VertexOutOfRange,
                       "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                           ") has an endpoint outside 0.." + std::to_string(n) + "-1");
    }
    if (u == v) {
      throw GraphError(GraphError::Kind::SelfLoop,
                       "self-loop at vertex " + std::to_string(u));
    }
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& list = g.adjacency_[v];
    std::sort(list.begin(), list.end());
    if (auto dup = std::adjacent_find(list.begin(), list.end()); dup != list.end()) {
      throw GraphError(GraphError::Kind::DuplicateEdge,
                       "edge {" + std::to_string(std::min(v, *dup)) + ", " +
                           std::to_string(std::max(v, *dup)) + "} listed twice");
    }
  }
  g.edge_count_ = edges.size();
  return g;
}

std::size_t max_degree(const Graph& g) {
  std::size_t d = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
  return d;
}

bool is_regular(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  const std::size_t d = g.degree(0);
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    if (g.degree(v) != d) return false;
  }
  return true;
}

std::optional<std::size_t> girth(const Graph& g) {
  // BFS from every root; a non-tree edge (u, w) closes a closed walk of
  // length dist[u] + dist[w] + 1 containing a cycle at most that long, and
  // the minimum over all roots is attained by a root on a shortest cycle.
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::size_t best = kUnseen;
  std::vector<std::size_t> dist(n), parent(n);
  std::queue<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[root] = 0;
    parent[root] = kUnseen;
    queue.push(root);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop();
      if (2 * dist[u] >= best) continue;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

bool is_triangle_free(const Graph& g) {
  auto girth_value = girth(g);
  return !girth_value || *girth_value > 3;
}

bool is_bipartite(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> side(n, -1);
  std::queue<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop();
      for (Vertex w : g.neighbors(u)) {
        if (side[w] == -1) {
          side[w] = 1 - side[u];
          queue.push(w);
        } else if (side[w] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace generate {

Graph cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle: need n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return build_graph(n, edges);
}

Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return build_graph(n, edges);
}

Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return build_graph(n, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  }
  return build_graph(a + b, edges);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return build_graph(leaves + 1, edges);
}

Graph edgeless(std::size_t n) { return build_graph(n, std::vector<Edge>{}); }

Graph hypercube(std::size_t dimension) {
  if (dimension > 20) throw InvalidArgument("hypercube: dimension above 20");
  const std::size_t n = std::size_t{1} << dimension;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (std::size_t bit = 0; bit < dimension; ++bit) {
      Vertex v = u ^ (std::size_t{1} << bit);
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return build_graph(n, edges);
}

Graph random_bipartite_regular(std::size_t n, std::size_t degree,
                               std::uint64_t seed, std::size_t max_attempts) {
  if (n == 0 || n % 2 != 0) {
    throw InvalidArgument("random_bipartite_regular: n must be positive and even");
  }
  const std::size_t half = n / 2;
  if (degree > half) {
    throw InvalidArgument("random_bipartite_regular: degree exceeds n/2");
  }
  std::mt19937_64 engine(seed);
  std::vector<Vertex> perm(half);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::vector<char>> used(half, std::vector<char>(half, 0));
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t m = 0; m < degree && simple; ++m) {
      std::iota(perm.begin(), perm.end(), Vertex{0});
      std::shuffle(perm.begin(), perm.end(), engine);
      for (Vertex u = 0; u < half; ++u) {
        if (used[u][perm[u]]) {
          simple = false;
          break;
        }
        used[u][perm[u]] = 1;
        edges.emplace_back(u, half + perm[u]);
      }
    }
    if (simple) return build_graph(n, edges);
  }
  throw std::runtime_error("random_bipartite_regular: no simple graph after " +
                           std::to_string(max_attempts) + " attempts");
}

namespace {

std::vector<std::uint64_t> parse_args(const std::string& spec, const std::string& args) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("bad graph family spec '" + spec + "'");
    }
  }
  return out;
}

}  // namespace

Graph from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const auto args = colon == std::string::npos
                        ? std::vector<std::uint64_t>{}
                        : parse_args(spec, spec.substr(colon + 1));
  auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw InvalidArgument("graph family '" + name + "' takes " +
                            std::to_string(count) + " argument(s)");
    }
  };
  if (name == "cycle") { expect(1); return cycle(args[0]); }
  if (name == "path") { expect(1); return path(args[0]); }
  if (name == "complete") { expect(1); return complete(args[0]); }
  if (name == "edgeless") { expect(1); return edgeless(args[0]); }
  if (name == "star") { expect(1); return star(args[0]); }
  if (name == "hypercube") { expect(1); return hypercube(args[0]); }
  if (name == "complete_bipartite") { expect(2); return complete_bipartite(args[0], args[1]); }
  if (name == "random_bipartite_regular") {
    expect(3);
    return random_bipartite_regular(args[0], args[1], args[2]);
  }
  throw InvalidArgument("unknown graph family '" + name + "'");
}

}  // namespace generate

Graph read_graph(std::istream& in) {
  auto parse_error = [](const std::string& what) {
    return GraphError(GraphError::Kind::Parse, "graph file: " + what);
  };
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw parse_error("expected header 'n m'");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(in >> u >> v)) throw parse_error("expected " + std::to_string(m) + " edges");
    if (u < 0 || v < 0) throw parse_error("negative vertex index");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::string extra;
  if (in >> extra) throw parse_error("trailing content after edge list");
  return build_graph(static_cast<std::size_t>(n), edges);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file '" + path + "'");
  write_graph(out, g);
}

}  // namespace mixing
