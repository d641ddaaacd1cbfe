#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mixing/errors.hpp"
#include "mixing/exact.hpp"
#include "oracles.hpp"

using namespace mixing;

namespace {

std::vector<std::vector<Rational>> dense(const ExactChain& chain) {
  const std::size_t s = chain.space.size();
  std::vector<std::vector<Rational>> p(s, std::vector<Rational>(s, Rational(0)));
  for (std::size_t i = 0; i < s; ++i) {
    for (const auto& e : chain.rows[i]) p[i][e.to] = e.probability;
  }
  return p;
}

std::vector<std::size_t> all_indices(std::size_t s) {
  std::vector<std::size_t> v(s);
  for (std::size_t i = 0; i < s; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("coloring codes are base-k with vertex 0 most significant") {
  const Coloring x(std::vector<Color>{2, 1, 3}, 3);
  CHECK(encode(x) == 1 * 9 + 0 * 3 + 2);
  CHECK(decode_coloring(encode(x), 3, 3) == x);
  const StateSpace all = enumerate_all_colorings(generate::path(3), 3);
  CHECK(all.size() == 27);
  const auto reference = oracle::all_colorings(3, 3);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Coloring c = all.coloring(i);
    CHECK(std::vector<int>(c.colors().begin(), c.colors().end()) == reference[i]);
    CHECK(all.index_of(c) == i);
  }
  CHECK_THROWS_AS(all.index_of(std::uint64_t{27}), std::out_of_range);
  CHECK_FALSE(all.find(99).has_value());
}

TEST_CASE("proper coloring counts") {
  for (std::size_t n = 3; n <= 7; ++n) {
    for (int k = 2; k <= 4; ++k) {
      // Chromatic polynomial of the cycle.
      const double expected = std::pow(k - 1, n) + ((n % 2) ? -1.0 : 1.0) * (k - 1);
      CHECK(enumerate_proper_colorings(generate::cycle(n), k).size() ==
            static_cast<std::size_t>(expected));
    }
  }
  std::mt19937_64 eng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + eng() % 6;
    const int k = 1 + static_cast<int>(eng() % 4);
    const auto edges = oracle::random_edges(n, 1, 2, eng);
    const Graph g = build_graph(n, std::vector<Edge>(edges.begin(), edges.end()));
    const StateSpace s = enumerate_proper_colorings(g, k);
    CHECK(s.size() == oracle::count_proper(n, edges, k));
    for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s.code(i) < s.code(i + 1));
  }
}

TEST_CASE("enumeration caps") {
  CHECK_THROWS_AS(enumerate_all_colorings(generate::cycle(10), 4, 1000), CapExceeded);
  CHECK_THROWS_AS(enumerate_proper_colorings(generate::cycle(10), 4, 1000), CapExceeded);
  CHECK_THROWS_AS(enumerate_independent_sets(generate::edgeless(12), 1000), CapExceeded);
  CHECK_NOTHROW(enumerate_independent_sets(generate::edgeless(10), 1024));
}

TEST_CASE("independent set counts and partition functions") {
  CHECK(enumerate_independent_sets(generate::cycle(4)).size() == 7);
  CHECK(partition_function(generate::complete(2), Rational(1)) == 3);
  CHECK(partition_function(generate::cycle(5), Rational(1)) == 11);
  for (std::size_t n = 3; n <= 12; ++n) {
    for (const Rational lambda : {Rational(1, 2), Rational(1), Rational(7, 3)}) {
      CHECK(partition_function(generate::cycle(n), lambda) == oracle::cycle_partition(n, lambda));
    }
  }
  std::mt19937_64 eng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + eng() % 10;
    const auto edges = oracle::random_edges(n, 1, 3, eng);
    const Graph g = build_graph(n, std::vector<Edge>(edges.begin(), edges.end()));
    CHECK(enumerate_independent_sets(g).size() == oracle::count_independent_sets(n, edges));
    CHECK(partition_function(g, Rational(3, 4)) == oracle::partition(n, edges, Rational(3, 4)));
  }
}

TEST_CASE("coloring kernels match the definition") {
  for (const auto& [g, k] : {std::pair{generate::complete(2), 3}, std::pair{generate::path(3), 3},
                             std::pair{generate::path(3), 4}, std::pair{generate::cycle(4), 3},
                             std::pair{generate::cycle(5), 4}}) {
    const auto edges = oracle::edges_of(g);
    const std::size_t n = g.vertex_count();
    SUBCASE("over all of [k]^V") {
      const ExactChain chain = build_coloring_chain(g, enumerate_all_colorings(g, k));
      CHECK(dense(chain) == oracle::coloring_kernel(n, edges, k, oracle::all_colorings(n, k)));
      CHECK(verify_stationary_exact(chain));
    }
    SUBCASE("over proper colorings") {
      const ExactChain chain = build_coloring_chain(g, enumerate_proper_colorings(g, k));
      std::vector<std::vector<int>> states;
      for (const auto& c : oracle::all_colorings(n, k)) {
        if (oracle::proper(edges, c)) states.push_back(c);
      }
      CHECK(dense(chain) == oracle::coloring_kernel(n, edges, k, states));
      for (const auto& p : chain.pi_exact) CHECK(p == Rational(1, static_cast<long long>(states.size())));
      CHECK(verify_stationary_exact(chain));
      CHECK(verify_detailed_balance_exact(chain));
    }
  }
}

TEST_CASE("hard-core kernels match the definition and are reversible") {
  for (const auto& [g, lambda] :
       {std::pair{generate::complete(2), Rational(1)}, std::pair{generate::path(4), Rational(1, 2)},
        std::pair{generate::cycle(6), Rational(2)}, std::pair{generate::star(4), Rational(5, 3)}}) {
    const std::size_t n = g.vertex_count();
    const auto edges = oracle::edges_of(g);
    const ExactChain chain = build_hardcore_chain(g, enumerate_independent_sets(g), lambda);
    std::vector<std::uint64_t> masks;
    for (std::size_t i = 0; i < chain.space.size(); ++i) masks.push_back(chain.space.code(i));
    CHECK(dense(chain) == oracle::hardcore_kernel(n, edges, masks, lambda));
    const Rational z = oracle::partition(n, edges, lambda);
    for (std::size_t i = 0; i < masks.size(); ++i) {
      Rational w = 1;
      for (std::size_t j = 0; j < oracle::popcount(masks[i]); ++j) w *= lambda;
      CHECK(chain.pi_exact[i] == w / z);
    }
    CHECK(verify_stationary_exact(chain));
    CHECK(verify_detailed_balance_exact(chain));
    double row_error = 0;
    for (const auto& row : chain.rows) {
      double s = 0;
      for (const auto& e : row) s += e.value;
      row_error = std::max(row_error, std::fabs(s - 1));
    }
    CHECK(row_error <= 1e-12);
  }
}

TEST_CASE("gibbs law at zero fugacity is the empty set") {
  const StateSpace s = enumerate_independent_sets(generate::cycle(4));
  const auto g = gibbs_distribution(s, Rational(0));
  CHECK(g[s.index_of(IndependentSet(4))] == 1);
  Rational total = 0;
  for (const auto& p : g) total += p;
  CHECK(total == 1);
}

TEST_CASE("total variation") {
  const std::vector<double> a{0.5, 0.5, 0}, b{0.25, 0.25, 0.5};
  CHECK(tv_distance(a, b) == doctest::Approx(0.5));
  CHECK(tv_distance(a, a) == 0);
  const std::vector<Rational> ra{Rational(1, 3), Rational(2, 3)}, rb{Rational(1, 2), Rational(1, 2)};
  CHECK(tv_distance(ra, rb) == Rational(1, 6));
  CHECK_THROWS_AS(tv_distance(a, std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("exact mixing times on a single edge") {
  SUBCASE("proper 3-colorings: d(t) = (1/2)(3/4)^(t-1) for t >= 1") {
    const Graph k2 = generate::complete(2);
    const ExactChain chain = build_coloring_chain(k2, enumerate_proper_colorings(k2, 3));
    const auto curve = worst_case_decay(chain, 30);
    CHECK(curve[0] == doctest::Approx(5.0 / 6));
    for (std::size_t t = 1; t <= 30; ++t) {
      CHECK(curve[t] == doctest::Approx(0.5 * std::pow(0.75, t - 1)).epsilon(1e-9));
    }
    CHECK(exact_mixing_time(chain, 0.25) == 4);
    CHECK(exact_mixing_time(chain, 0.01) == 15);
  }
  SUBCASE("hard-core, lambda = 1, against repeated dense multiplication") {
    const Graph k2 = generate::complete(2);
    const ExactChain chain = build_hardcore_chain(k2, enumerate_independent_sets(k2), Rational(1));
    const auto p = oracle::hardcore_kernel(2, oracle::edges_of(k2), {0, 1, 2}, Rational(1));
    const auto expected = oracle::worst_decay(p, chain.pi, all_indices(3), 40);
    const auto curve = worst_case_decay(chain, 40);
    for (std::size_t t = 0; t <= 40; ++t) CHECK(curve[t] == doctest::Approx(expected[t]).epsilon(1e-12));
    std::size_t first = 0;
    while (expected[first] > 0.25) ++first;
    CHECK(exact_mixing_time(chain, 0.25) == first);
    CHECK(exact_mixing_time(chain, 0.25) == 3);
    CHECK(exact_mixing_time(chain, 0.01) == 14);
  }
}

TEST_CASE("worst-start decay is non-increasing") {
  for (const auto& g : {generate::cycle(5), generate::path(4), generate::star(3)}) {
    const ExactChain hc = build_hardcore_chain(g, enumerate_independent_sets(g), Rational(3, 2));
    const auto a = worst_case_decay(hc, 200);
    for (std::size_t t = 1; t < a.size(); ++t) CHECK(a[t] <= a[t - 1] + 1e-15);
    const ExactChain col = build_coloring_chain(g, enumerate_proper_colorings(g, 4));
    const auto b = worst_case_decay(col, 200);
    for (std::size_t t = 1; t < b.size(); ++t) CHECK(b[t] <= b[t - 1] + 1e-15);
  }
}

TEST_CASE("distribution_after matches step-by-step application") {
  const Graph g = generate::cycle(5);
  const ExactChain chain = build_hardcore_chain(g, enumerate_independent_sets(g), Rational(1, 2));
  Distribution d = point_mass(chain.space.size(), 3);
  for (int t = 0; t < 7; ++t) d = apply_kernel(chain, d);
  const Distribution e = distribution_after(chain, point_mass(chain.space.size(), 3), 7);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == e[i]);
  const auto curve = decay_curve(chain, point_mass(chain.space.size(), 3), 7);
  CHECK(curve.back() == doctest::Approx(tv_distance(e, chain.pi)));
  const auto exact = apply_kernel(chain, std::span<const Rational>(chain.pi_exact));
  CHECK(exact == chain.pi_exact);
}

TEST_CASE("frozen chains are rejected") {
  // Every proper 3-coloring of a triangle has a single available color per
  // vertex, so the heat-bath chain never moves.
  const Graph k3 = generate::complete(3);
  const ExactChain chain = build_coloring_chain(k3, enumerate_proper_colorings(k3, 3));
  CHECK_THROWS_AS(require_ergodic_support(chain), NonErgodic);
  CHECK_THROWS_AS(exact_mixing_time(chain, 0.25), NonErgodic);
  const ExactChain ok = build_coloring_chain(k3, enumerate_proper_colorings(k3, 4));
  CHECK_NOTHROW(require_ergodic_support(ok));
}

TEST_CASE("kernel size cap") {
  const Graph g = generate::cycle(8);
  CHECK_THROWS_AS(build_coloring_chain(g, enumerate_all_colorings(g, 4), 1000), CapExceeded);
}

TEST_CASE("kernel triples") {
  const Graph k2 = generate::complete(2);
  const ExactChain chain = build_hardcore_chain(k2, enumerate_independent_sets(k2), Rational(1));
  std::ostringstream out;
  write_kernel_triples(out, chain);
  CHECK(out.str() == "0 0 0.5\n0 1 0.25\n0 2 0.25\n1 0 0.25\n1 1 0.75\n2 0 0.25\n2 2 0.75\n");
}
