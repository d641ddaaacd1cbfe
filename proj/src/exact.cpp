#include "mixing/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

#include "mixing/errors.hpp"

namespace mixing {

StateSpace::StateSpace(Kind kind, std::size_t n, int palette,
                       std::vector<std::uint64_t> codes)
    : kind_(kind), n_(n), palette_(palette), codes_(std::move(codes)) {
  for (std::size_t i = 1; i < codes_.size(); ++i) {
    if (codes_[i - 1] >= codes_[i]) {
      throw InvalidArgument("StateSpace: codes must be strictly increasing");
    }
  }
}

std::optional<std::size_t> StateSpace::find(std::uint64_t code) const {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

std::size_t StateSpace::index_of(std::uint64_t code) const {
  if (auto i = find(code)) return *i;
  throw std::out_of_range("state code " + std::to_string(code) + " not in space");
}

std::size_t StateSpace::index_of(const Coloring& x) const {
  return index_of(encode(x));
}

std::size_t StateSpace::index_of(const IndependentSet& x) const {
  return index_of(x.mask());
}

Coloring StateSpace::coloring(std::size_t i) const {
  return decode_coloring(codes_.at(i), n_, palette_);
}

IndependentSet StateSpace::independent_set(std::size_t i) const {
  return IndependentSet::from_mask(n_, codes_.at(i));
}

std::uint64_t encode(const Coloring& x) {
  std::uint64_t code = 0;
  for (Vertex v = 0; v < x.size(); ++v) {
    code = code * static_cast<std::uint64_t>(x.palette()) +
           static_cast<std::uint64_t>(x[v] - 1);
  }
  return code;
}

Coloring decode_coloring(std::uint64_t code, std::size_t n, int palette) {
  std::vector<Color> colors(n);
  const auto k = static_cast<std::uint64_t>(palette);
  for (std::size_t i = n; i-- > 0;) {
    colors[i] = static_cast<Color>(code % k) + 1;
    code /= k;
  }
  return Coloring(std::move(colors), palette);
}

namespace {

/// k^n, or nullopt if it exceeds `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t k, std::size_t n,
                                           std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (k != 0 && r > limit / k) return std::nullopt;
    r *= k;
  }
  if (r > limit) return std::nullopt;
  return r;
}

std::vector<std::uint64_t> place_values(std::size_t n, int palette) {
  std::vector<std::uint64_t> place(n, 1);
  for (std::size_t i = n; i-- > 1;) {
    place[i - 1] = place[i] * static_cast<std::uint64_t>(palette);
  }
  return place;
}

}  // namespace

StateSpace enumerate_all_colorings(const Graph& g, int k, std::uint64_t cap) {
  if (k < 1) throw InvalidArgument("enumerate_all_colorings: k must be >= 1");
  const auto total = bounded_power(static_cast<std::uint64_t>(k), g.vertex_count(), cap);
  if (!total) {
    throw CapExceeded("k^n exceeds the coloring enumeration cap of " + std::to_string(cap));
  }
  std::vector<std::uint64_t> codes(*total);
  for (std::uint64_t i = 0; i < *total; ++i) codes[i] = i;
  return StateSpace(StateSpace::Kind::Colorings, g.vertex_count(), k, std::move(codes));
}

StateSpace enumerate_proper_colorings(const Graph& g, int k, std::uint64_t cap) {
  if (k < 1) throw InvalidArgument("enumerate_proper_colorings: k must be >= 1");
  const std::size_t n = g.vertex_count();
  if (!bounded_power(static_cast<std::uint64_t>(k), n,
                     std::numeric_limits<std::uint64_t>::max())) {
    throw CapExceeded("k^n does not fit the 64-bit state code");
  }
  const auto place = place_values(n, k);
  std::vector<std::uint64_t> codes;
  std::vector<Color> colors(n, 0);
  // Depth-first in vertex order with ascending colors emits codes in order.
  std::vector<Color> next(n + 1, 1);
  std::size_t depth = 0;
  if (n == 0) {
    codes.push_back(0);
  }
  while (n > 0) {
    if (next[depth] > k) {
      if (depth == 0) break;
      next[depth] = 1;
      colors[depth] = 0;
      --depth;
      continue;
    }
    const Color c = next[depth]++;
    bool ok = true;
    for (Vertex w : g.neighbors(depth)) {
      if (w < depth && colors[w] == c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    colors[depth] = c;
    if (depth + 1 == n) {
      if (codes.size() >= cap) {
        throw CapExceeded("proper colorings exceed the enumeration cap of " +
                          std::to_string(cap));
      }
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < n; ++i) {
        code += static_cast<std::uint64_t>(colors[i] - 1) * place[i];
      }
      codes.push_back(code);
    } else {
      ++depth;
    }
  }
  return StateSpace(StateSpace::Kind::Colorings, n, k, std::move(codes));
}

StateSpace enumerate_independent_sets(const Graph& g, std::uint64_t cap) {
  const std::size_t n = g.vertex_count();
  if (n > 64) throw CapExceeded("independent-set enumeration supports n <= 64");
  std::vector<std::uint64_t> neighbor_mask(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) neighbor_mask[v] |= std::uint64_t{1} << w;
  }
  std::vector<std::uint64_t> codes;
  // Explicit stack of (next vertex, set so far).
  std::vector<std::pair<std::size_t, std::uint64_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [v, set] = stack.back();
    stack.pop_back();
    if (v == n) {
      if (codes.size() >= cap) {
        throw CapExceeded("independent sets exceed the enumeration cap of " +
                          std::to_string(cap));
      }
      codes.push_back(set);
      continue;
    }
    stack.emplace_back(v + 1, set);
    if ((neighbor_mask[v] & set) == 0) stack.emplace_back(v + 1, set | (std::uint64_t{1} << v));
  }
  std::sort(codes.begin(), codes.end());
  return StateSpace(StateSpace::Kind::IndependentSets, n, 0, std::move(codes));
}

namespace {

using RowAccumulator = std::map<std::size_t, Rational>;

std::vector<KernelEntry> finish_row(RowAccumulator& acc) {
  std::vector<KernelEntry> row;
  row.reserve(acc.size());
  for (auto& [to, p] : acc) row.push_back({to, p, to_double(p)});
  return row;
}

void verify_chain(const ExactChain& chain) {
  const std::size_t size = chain.space.size();
  double pi_total = 0;
  for (double p : chain.pi) {
    if (p < 0) throw VerificationFailure("stationary distribution has a negative entry");
    pi_total += p;
  }
  if (std::fabs(pi_total - 1.0) > 1e-12) {
    throw VerificationFailure("stationary distribution does not sum to 1");
  }
  for (std::size_t i = 0; i < size; ++i) {
    double s = 0;
    for (const auto& e : chain.rows[i]) s += e.value;
    if (std::fabs(s - 1.0) > 1e-12) {
      throw VerificationFailure("kernel row " + std::to_string(i) + " sums to " +
                                std::to_string(s));
    }
  }
  const auto moved = apply_kernel(chain, chain.pi);
  for (std::size_t i = 0; i < size; ++i) {
    if (std::fabs(moved[i] - chain.pi[i]) > 1e-12) {
      throw VerificationFailure("pi is not invariant at state " + std::to_string(i));
    }
  }
}

void require_kernel_cap(const StateSpace& space, std::size_t cap) {
  if (space.size() > cap) {
    throw CapExceeded("state space of " + std::to_string(space.size()) +
                      " states exceeds the kernel cap of " + std::to_string(cap));
  }
}

}  // namespace

ExactChain build_coloring_chain(const Graph& g, StateSpace space, std::size_t cap) {
  if (space.kind() != StateSpace::Kind::Colorings || space.vertex_count() != g.vertex_count()) {
    throw InvalidArgument("build_coloring_chain: space does not match the graph");
  }
  require_kernel_cap(space, cap);
  const std::size_t n = g.vertex_count();
  const int k = space.palette();
  if (n == 0) throw InvalidArgument("build_coloring_chain: empty graph");
  if (static_cast<std::size_t>(k) < max_degree(g) + 1) {
    throw InvalidArgument("build_coloring_chain: need k >= Delta + 1");
  }
  const auto place = place_values(n, k);
  ExactChain chain{std::move(space), {}, {}, {}};
  const std::size_t size = chain.space.size();
  chain.rows.resize(size);
  std::size_t proper = 0;
  std::vector<char> is_prop(size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    const Coloring x = chain.space.coloring(i);
    is_prop[i] = is_proper(g, x);
    proper += is_prop[i];
    RowAccumulator acc;
    for (Vertex v = 0; v < n; ++v) {
      const auto avail = available_colors(g, x, v);
      const Rational p(1, static_cast<long long>(n * avail.size()));
      const std::uint64_t base = chain.space.code(i) -
                                 static_cast<std::uint64_t>(x[v] - 1) * place[v];
      for (Color c : avail) {
        const auto to = chain.space.index_of(base + static_cast<std::uint64_t>(c - 1) * place[v]);
        acc[to] += p;
      }
    }
    chain.rows[i] = finish_row(acc);
  }
  if (proper == 0) throw InvalidArgument("build_coloring_chain: no proper colorings");
  const Rational mass(1, static_cast<long long>(proper));
  chain.pi_exact.assign(size, Rational(0));
  for (std::size_t i = 0; i < size; ++i) {
    if (is_prop[i]) chain.pi_exact[i] = mass;
  }
  chain.pi = to_doubles(chain.pi_exact);
  verify_chain(chain);
  return chain;
}

std::vector<Rational> gibbs_distribution(const StateSpace& space, const Rational& lambda) {
  if (space.kind() != StateSpace::Kind::IndependentSets) {
    throw InvalidArgument("gibbs_distribution: not an independent-set space");
  }
  if (lambda < 0) throw InvalidArgument("gibbs_distribution: negative fugacity");
  std::vector<Rational> powers(space.vertex_count() + 1, Rational(1));
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * lambda;
  std::vector<Rational> w(space.size());
  Rational z(0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    w[i] = powers[static_cast<std::size_t>(std::popcount(space.code(i)))];
    z += w[i];
  }
  for (auto& x : w) x /= z;
  return w;
}

ExactChain build_hardcore_chain(const Graph& g, StateSpace space,
                                const Rational& lambda, std::size_t cap) {
  if (space.kind() != StateSpace::Kind::IndependentSets ||
      space.vertex_count() != g.vertex_count()) {
    throw InvalidArgument("build_hardcore_chain: space does not match the graph");
  }
  if (lambda <= 0) throw InvalidArgument("build_hardcore_chain: fugacity must be positive");
  require_kernel_cap(space, cap);
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InvalidArgument("build_hardcore_chain: empty graph");
  std::vector<std::uint64_t> neighbor_mask(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) neighbor_mask[v] |= std::uint64_t{1} << w;
  }
  const Rational p_add = lambda / (1 + lambda) / static_cast<long long>(n);
  const Rational p_remove = Rational(1) / (1 + lambda) / static_cast<long long>(n);
  ExactChain chain{std::move(space), {}, {}, {}};
  const std::size_t size = chain.space.size();
  chain.rows.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    const std::uint64_t set = chain.space.code(i);
    RowAccumulator acc;
    for (Vertex v = 0; v < n; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      const bool addable = (set & bit) != 0 || (neighbor_mask[v] & set) == 0;
      acc[chain.space.index_of(addable ? (set | bit) : set)] += p_add;
      acc[chain.space.index_of(set & ~bit)] += p_remove;
    }
    chain.rows[i] = finish_row(acc);
  }
  chain.pi_exact = gibbs_distribution(chain.space, lambda);
  chain.pi = to_doubles(chain.pi_exact);
  verify_chain(chain);
  return chain;
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("tv_distance: size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return 0.5 * s;
}

Rational tv_distance(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw InvalidArgument("tv_distance: size mismatch");
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += abs(a[i] - b[i]);
  return s / 2;
}

Distribution point_mass(std::size_t size, std::size_t at) {
  Distribution d(size, 0.0);
  d.at(at) = 1.0;
  return d;
}

Distribution to_doubles(std::span<const Rational> d) {
  Distribution out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = to_double(d[i]);
  return out;
}

Distribution apply_kernel(const ExactChain& chain, std::span<const double> d) {
  if (d.size() != chain.rows.size()) throw InvalidArgument("apply_kernel: size mismatch");
  Distribution out(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0.0) continue;
    for (const auto& e : chain.rows[i]) out[e.to] += d[i] * e.value;
  }
  return out;
}

std::vector<Rational> apply_kernel(const ExactChain& chain, std::span<const Rational> d) {
  if (d.size() != chain.rows.size()) throw InvalidArgument("apply_kernel: size mismatch");
  std::vector<Rational> out(d.size(), Rational(0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    for (const auto& e : chain.rows[i]) out[e.to] += d[i] * e.probability;
  }
  return out;
}

Distribution distribution_after(const ExactChain& chain, std::span<const double> start,
                                std::size_t steps) {
  Distribution d(start.begin(), start.end());
  for (std::size_t t = 0; t < steps; ++t) d = apply_kernel(chain, d);
  return d;
}

std::vector<double> decay_curve(const ExactChain& chain, std::span<const double> start,
                                std::size_t steps) {
  std::vector<double> curve;
  curve.reserve(steps + 1);
  Distribution d(start.begin(), start.end());
  curve.push_back(tv_distance(d, chain.pi));
  for (std::size_t t = 0; t < steps; ++t) {
    d = apply_kernel(chain, d);
    curve.push_back(tv_distance(d, chain.pi));
  }
  return curve;
}

void require_ergodic_support(const ExactChain& chain) {
  const std::size_t size = chain.rows.size();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < size; ++i) {
    if (chain.pi_exact[i] > 0) support.push_back(i);
  }
  if (support.empty()) throw NonErgodic("stationary distribution has empty support");
  std::vector<std::vector<std::size_t>> reverse(size);
  for (std::size_t i : support) {
    for (const auto& e : chain.rows[i]) {
      if (chain.pi_exact[e.to] == 0) {
        throw NonErgodic("support of pi is not closed (state " + std::to_string(i) +
                         " leaks to " + std::to_string(e.to) + ")");
      }
      reverse[e.to].push_back(i);
    }
  }
  auto reach = [&](bool backward) {
    std::vector<char> seen(size, 0);
    std::queue<std::size_t> queue;
    seen[support.front()] = 1;
    queue.push(support.front());
    std::size_t count = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      auto visit = [&](std::size_t w) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          queue.push(w);
        }
      };
      if (backward) {
        for (std::size_t w : reverse[u]) visit(w);
      } else {
        for (const auto& e : chain.rows[u]) visit(e.to);
      }
    }
    return count;
  };
  if (reach(false) != support.size() || reach(true) != support.size()) {
    throw NonErgodic("chain restricted to the support of pi is reducible");
  }
}

namespace {

/// Worst-start TV at t = 0, 1, ... until `stop(t, tv)` returns true or
/// max_steps is passed.
template <class Stop>
void scan_worst_case(const ExactChain& chain, std::size_t max_steps, Stop stop) {
  require_ergodic_support(chain);
  std::vector<Distribution> rows;
  for (std::size_t i = 0; i < chain.rows.size(); ++i) {
    if (chain.pi_exact[i] > 0) rows.push_back(point_mass(chain.rows.size(), i));
  }
  for (std::size_t t = 0; t <= max_steps; ++t) {
    double worst = 0;
    for (const auto& d : rows) worst = std::max(worst, tv_distance(d, chain.pi));
    if (stop(t, worst)) return;
    for (auto& d : rows) d = apply_kernel(chain, d);
  }
}

}  // namespace

std::size_t exact_mixing_time(const ExactChain& chain, double delta, std::size_t max_steps) {
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("exact_mixing_time: delta must lie in (0, 1)");
  std::optional<std::size_t> found;
  scan_worst_case(chain, max_steps, [&](std::size_t t, double tv) {
    if (tv <= delta) found = t;
    return found.has_value();
  });
  if (!found) {
    throw VerificationFailure("no mixing within " + std::to_string(max_steps) + " steps");
  }
  return *found;
}

std::vector<double> worst_case_decay(const ExactChain& chain, std::size_t steps) {
  std::vector<double> curve;
  scan_worst_case(chain, steps, [&](std::size_t, double tv) {
    curve.push_back(tv);
    return false;
  });
  return curve;
}

Rational partition_function(const Graph& g, const Rational& lambda, std::uint64_t cap) {
  const auto space = enumerate_independent_sets(g, cap);
  std::vector<Rational> powers(g.vertex_count() + 1, Rational(1));
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * lambda;
  Rational z(0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    z += powers[static_cast<std::size_t>(std::popcount(space.code(i)))];
  }
  return z;
}

bool verify_stationary_exact(const ExactChain& chain) {
  for (const auto& row : chain.rows) {
    Rational s(0);
    for (const auto& e : row) s += e.probability;
    if (s != 1) return false;
  }
  Rational total(0);
  for (const auto& p : chain.pi_exact) total += p;
  if (total != 1) return false;
  return apply_kernel(chain, std::span<const Rational>(chain.pi_exact)) == chain.pi_exact;
}

bool verify_detailed_balance_exact(const ExactChain& chain) {
  auto entry = [&](std::size_t from, std::size_t to) -> Rational {
    const auto& row = chain.rows[from];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const KernelEntry& e, std::size_t t) { return e.to < t; });
    if (it == row.end() || it->to != to) return Rational(0);
    return it->probability;
  };
  for (std::size_t i = 0; i < chain.rows.size(); ++i) {
    for (const auto& e : chain.rows[i]) {
      if (chain.pi_exact[i] * e.probability != chain.pi_exact[e.to] * entry(e.to, i)) {
        return false;
      }
    }
  }
  return true;
}

void write_kernel_triples(std::ostream& out, const ExactChain& chain) {
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < chain.rows.size(); ++i) {
    for (const auto& e : chain.rows[i]) out << i << ' ' << e.to << ' ' << e.value << '\n';
  }
  out.precision(old_precision);
}

}  // namespace mixing
