// Runs every acceptance check once and prints one PASS/FAIL line per check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mixing/annealing.hpp"
#include "mixing/coloring.hpp"
#include "mixing/coloring_verify.hpp"
#include "mixing/coupling.hpp"
#include "mixing/exact.hpp"
#include "mixing/fixed_point.hpp"
#include "mixing/graph.hpp"
#include "mixing/hardcore.hpp"
#include "mixing/hardcore_verify.hpp"
#include "mixing/parallel.hpp"
#include "mixing/rng.hpp"
#include "mixing/stats.hpp"

using namespace mixing;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using RS = std::span<const Rational>;

// Exhaustive Jerrum contraction on small graphs, plus the K2 spot value.
void coloring_contraction(Verdict& v) {
  const Graph k2 = generate::complete(2);
  const Rational spot = expected_coupled_distance(k2, Coloring({1, 2}, 3), Coloring({1, 3}, 3));
  v.detail << "K2 spot " << to_string(spot);
  v.require(spot == Rational(3, 4), "spot value 3/4");
  struct Case {
    Graph g;
    const char* name;
    int k;
  };
  for (const auto& c : {Case{k2, "K2", 3}, Case{generate::path(3), "P3", 3},
                        Case{generate::path(3), "P3", 4}}) {
    for (const Rational& beta : {Rational(1, 10), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(9, 10)}) {
      const auto r = check_lemma23(c.g, c.k, beta);
      v.require(r.exhaustive, std::string(c.name) + " exhaustive");
      v.require(r.violations == 0, std::string(c.name) + " violations");
      v.detail << "; " << c.name << " k=" << c.k << " beta=" << to_string(beta) << ": "
               << r.hypothesis_pairs << "/" << r.pairs_checked << " pairs, " << r.violations
               << " violations";
    }
  }
}

void hardcore_contraction(Verdict& v) {
  struct Case {
    Graph g;
    const char* name;
  };
  std::size_t hyp = 0, total = 0, bad = 0;
  for (const auto& c : {Case{generate::complete(2), "K2"}, Case{generate::path(4), "P4"},
                        Case{generate::cycle(6), "C6"}}) {
    for (const Rational& lambda : {Rational(1, 2), Rational(1), Rational(2)}) {
      for (const Rational& zeta : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
        const auto r = check_lemma48(c.g, lambda, zeta);
        v.require(r.exhaustive, std::string(c.name) + " exhaustive");
        hyp += r.hypothesis_pairs;
        total += r.pairs_checked;
        bad += r.violations;
      }
    }
  }
  v.detail << hyp << " hypothesis pairs of " << total << " checked, " << bad << " violations";
  v.require(hyp > 0, "some pair satisfies the hypothesis");
  v.require(bad == 0, "zero violations");
}

template <class Outcomes, class Project>
std::vector<Rational> marginal(const StateSpace& space, const Outcomes& outcomes, Project proj) {
  std::vector<Rational> m(space.size());
  for (const auto& o : outcomes) m[space.index_of(proj(o))] += o.probability;
  return m;
}

std::vector<Rational> exact_row(const ExactChain& chain, std::size_t i) {
  std::vector<Rational> row(chain.space.size());
  for (const auto& e : chain.rows[i]) row[e.to] = e.probability;
  return row;
}

double float_row_error(const ExactChain& chain, std::size_t i, const std::vector<Rational>& m) {
  double err = 0;
  for (const auto& e : chain.rows[i]) err = std::max(err, std::fabs(e.value - to_double(m[e.to])));
  return err;
}

void coupled_marginals(Verdict& v) {
  std::size_t pairs = 0, mismatches = 0;
  double float_err = 0;
  {
    const Graph g = generate::complete(2);
    const ExactChain chain = build_coloring_chain(g, enumerate_all_colorings(g, 3));
    for (std::size_t i = 0; i < chain.space.size(); ++i) {
      for (std::size_t j = 0; j < chain.space.size(); ++j) {
        const auto out = coupled_step_distribution(g, chain.space.coloring(i), chain.space.coloring(j));
        const auto mx = marginal(chain.space, out, [](const auto& o) { return o.x; });
        const auto my = marginal(chain.space, out, [](const auto& o) { return o.y; });
        mismatches += (mx != exact_row(chain, i)) + (my != exact_row(chain, j));
        float_err = std::max({float_err, float_row_error(chain, i, mx), float_row_error(chain, j, my)});
        ++pairs;
      }
    }
  }
  {
    const Graph g = generate::cycle(6);
    const Rational lambda(1, 2);
    const ExactChain chain = build_hardcore_chain(g, enumerate_independent_sets(g), lambda);
    for (std::size_t i = 0; i < chain.space.size(); ++i) {
      for (std::size_t j = 0; j < chain.space.size(); ++j) {
        const auto out = coupled_step_distribution_hc(g, chain.space.independent_set(i),
                                                      chain.space.independent_set(j), lambda);
        const auto mx = marginal(chain.space, out, [](const auto& o) { return o.x; });
        const auto my = marginal(chain.space, out, [](const auto& o) { return o.y; });
        mismatches += (mx != exact_row(chain, i)) + (my != exact_row(chain, j));
        float_err = std::max({float_err, float_row_error(chain, i, mx), float_row_error(chain, j, my)});
        ++pairs;
      }
    }
  }
  v.detail << pairs << " pairs (K2 k=3, C6 lambda=1/2), " << mismatches
           << " exact mismatches, float error " << float_err;
  v.require(mismatches == 0, "exact marginals");
  v.require(float_err <= 1e-12, "float marginals");
}

void oracle_stationarity(Verdict& v) {
  std::vector<ExactChain> chains;
  std::vector<bool> hardcore;
  auto add_coloring = [&](const Graph& g, int k, bool proper) {
    chains.push_back(build_coloring_chain(
        g, proper ? enumerate_proper_colorings(g, k) : enumerate_all_colorings(g, k)));
    hardcore.push_back(false);
  };
  auto add_hardcore = [&](const Graph& g, const Rational& lambda) {
    chains.push_back(build_hardcore_chain(g, enumerate_independent_sets(g), lambda));
    hardcore.push_back(true);
  };
  add_coloring(generate::complete(2), 3, true);
  add_coloring(generate::complete(2), 3, false);
  add_coloring(generate::path(3), 4, true);
  add_coloring(generate::path(3), 4, false);
  add_coloring(generate::cycle(5), 4, true);
  add_coloring(generate::cycle(6), 6, true);
  for (const Rational& lambda : {Rational(1, 2), Rational(1), Rational(2)}) {
    add_hardcore(generate::complete(2), lambda);
    add_hardcore(generate::path(4), lambda);
    add_hardcore(generate::cycle(6), lambda);
  }
  add_hardcore(generate::complete_bipartite(3, 3), Rational(3, 7));

  double row_err = 0, inv_err = 0;
  bool balance = true, exact_stationary = true;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& chain = chains[c];
    for (const auto& row : chain.rows) {
      double s = 0;
      for (const auto& e : row) s += e.value;
      row_err = std::max(row_err, std::fabs(s - 1));
    }
    const auto next = apply_kernel(chain, std::span<const double>(chain.pi));
    for (std::size_t i = 0; i < next.size(); ++i) inv_err = std::max(inv_err, std::fabs(next[i] - chain.pi[i]));
    exact_stationary = exact_stationary && verify_stationary_exact(chain);
    if (hardcore[c]) balance = balance && verify_detailed_balance_exact(chain);
  }
  const Rational z_k2 = partition_function(generate::complete(2), Rational(1));
  const Rational z_c5 = partition_function(generate::cycle(5), Rational(1));
  const std::size_t c4 = enumerate_independent_sets(generate::cycle(4)).size();
  v.detail << chains.size() << " kernels, row-sum error " << row_err << ", invariance error "
           << inv_err << "; Z(K2,1)=" << to_string(z_k2) << " Z(C5,1)=" << to_string(z_c5)
           << " #IS(C4)=" << c4;
  v.require(row_err <= 1e-12, "row sums");
  v.require(inv_err <= 1e-12, "invariance");
  v.require(exact_stationary, "exact invariance");
  v.require(balance, "exact detailed balance");
  v.require(z_k2 == 3, "Z(K2,1)");
  v.require(z_c5 == 11, "Z(C5,1)");
  v.require(c4 == 7, "C4 count");
}

void available_colors_statistic(Verdict& v) {
  struct Case {
    Graph g;
    const char* name;
    int k;
  };
  const double beta = 0.5;
  bool first = true;
  for (const auto& c : {Case{generate::cycle(6), "C6", 6},
                        Case{generate::complete_bipartite(3, 3), "K33", 7}}) {
    Lemma21Options opt;
    opt.samples = 10'000;
    opt.sampler = SamplerKind::Mcmc;
    opt.seed = 21;
    const auto r = verify_lemma21(c.g, c.k, beta, opt);
    const double exact = r.exact_rate.value_or(-1);
    const bool bound_ok = r.exact_rate && exact <= r.bound;
    const bool match = r.exact_rate && within_three_sigma(r.empirical_rate, exact, r.samples);
    v.detail << (first ? "" : "; ") << c.name << " k=" << c.k << ": exact rate " << exact
             << " <= bound " << r.bound << ", mcmc rate " << r.empirical_rate << " (3 sigma "
             << 3 * binomial_sigma(exact, r.samples) << ")";
    first = false;
    v.require(bound_ok, std::string(c.name) + " exact rate within bound");
    v.require(match, std::string(c.name) + " mcmc rate matches enumeration");
    // Whole min-available law, bin by bin.
    std::size_t bins_off = 0;
    for (std::size_t b = 0; b < r.min_available_exact.size(); ++b) {
      const double emp = b < r.min_available_counts.size()
                             ? static_cast<double>(r.min_available_counts[b]) / static_cast<double>(r.samples)
                             : 0.0;
      bins_off += !within_three_sigma(emp, r.min_available_exact[b], r.samples);
    }
    v.detail << ", " << bins_off << " bins outside 3 sigma";
    v.require(bins_off == 0, std::string(c.name) + " min-available law");
  }
}

void unblocked_statistic(Verdict& v) {
  Lemma42Options opt;
  opt.samples = 10'000;
  opt.sampler = SamplerKind::Mcmc;
  opt.seed = 42;
  const auto r = verify_lemma42(generate::cycle(6), 0.5, 0.5, 0.1, opt);
  const double exact = r.exact_rate.value_or(-1);
  v.detail << "C6 lambda=0.5: bound " << r.bound << (r.vacuous ? " (window term not positive, vacuous)" : "")
           << ", |U| window [" << r.u_lo << ", " << r.u_hi << "]"
           << ", exact rate " << exact << ", mcmc rate " << r.empirical_rate;
  v.require(r.exact_rate.has_value(), "enumeration");
  v.require(exact <= r.bound, "exact rate within bound");
  v.require(within_three_sigma(r.empirical_rate, exact, r.samples), "mcmc rate matches");
  std::size_t bins_off = 0;
  auto compare = [&](const std::vector<std::size_t>& counts, const std::vector<double>& law) {
    for (std::size_t b = 0; b < law.size(); ++b) {
      const double emp = b < counts.size() ? static_cast<double>(counts[b]) / static_cast<double>(r.samples) : 0.0;
      bins_off += !within_three_sigma(emp, law[b], r.samples);
    }
  };
  compare(r.min_u_counts, r.min_u_exact);
  compare(r.max_u_counts, r.max_u_exact);
  v.detail << ", " << bins_off << " min/max |U| bins outside 3 sigma";
  v.require(bins_off == 0, "min/max |U| laws");
}

void fixed_points(Verdict& v) {
  const double mu_e = solve_mu(std::numbers::e);
  const double alpha = solve_alpha();
  std::size_t failing = 0;
  for (int i = 1; i <= 99; ++i) failing += !observation45_check(i / 100.0).holds;
  v.detail << "solve_mu(e)=" << mu_e << " alpha=" << alpha << ", " << failing
           << " of 99 zeta values fail the fixed-point bound";
  v.require(std::fabs(mu_e - 1 / std::numbers::e) <= 1e-10, "mu(e) = 1/e");
  v.require(alpha >= 1.7632 && alpha <= 1.7633, "alpha");
  v.require(failing == 0, "fixed-point bound grid");
}

void interval_containment(Verdict& v) {
  std::vector<double> zetas, xis = {0.01, 0.05, 0.1, 0.5};
  for (int i = 1; i <= 9; ++i) zetas.push_back(i / 10.0);
  const auto rows = lemma46_sweep(zetas, xis);
  std::size_t late = 0, outside = 0;
  for (const auto& r : rows) {
    late += !r.contained;
    outside += !r.hypothesis;
  }
  std::size_t points = 0, misses = 0, misses_outside = 0;
  std::ostringstream where;
  for (double zeta : zetas) {
    const double top = (1 - zeta) * std::numbers::e;
    for (double c : {1.0, (1 + top) / 2, top}) {
      const bool in_range = c >= 1 && c <= top;
      for (double xi : xis) {
        std::size_t cell_misses = 0;
        for (double x = xi / 2; x < 1; x += 0.005) {
          ++points;
          cell_misses += !contraction_step_check(c, zeta, xi, x).inclusion;
        }
        misses += cell_misses;
        if (!in_range) misses_outside += cell_misses;
        if (cell_misses) where << " zeta=" << zeta << ",C=" << c << ",xi=" << xi << ":" << cell_misses;
      }
    }
  }
  v.detail << rows.size() << " cells, " << late << " miss the step bound (" << outside
           << " have C outside [1, (1-zeta)e]); inclusion " << points - misses << "/" << points
           << " grid points";
  if (misses) {
    v.detail << ", misses at" << where.str() << " (" << misses_outside << " of them with C outside [1, (1-zeta)e])";
  }
  v.require(late == 0, "containment within the step bound");
  v.require(misses == 0, "pointwise inclusion");
}

void coupling_tail(Verdict& v) {
  const Graph g = generate::complete(2);
  const Rational eps = coloring_contraction_rate(g, 3);
  const double e = to_double(eps);
  const Coloring x0({1, 2}, 3), y0({2, 1}, 3);
  const double diam = 2;  // Hamming diameter on two vertices
  constexpr std::size_t m = 100'000, horizon = 30;
  const auto met = parallel_map<std::size_t>(m, [&](std::size_t i) {
    Rng rng = derive_rng(9, i);
    const auto traj = run_coupled(
        x0, y0, [&](Coloring x, Coloring y, Rng& r) { return jerrum_coupled_step(g, std::move(x), std::move(y), r); },
        horizon, rng, [](const Coloring& a, const Coloring& b) { return hamming(a, b); });
    return traj.met_at.value_or(horizon + 1);
  });
  std::size_t worst_t = 0;
  double worst_gap = -2;
  bool ok = true;
  for (std::size_t t = 1; t <= horizon; ++t) {
    const double rate = static_cast<double>(std::count_if(met.begin(), met.end(), [&](std::size_t s) { return s > t; })) /
                        static_cast<double>(m);
    const double bound = std::pow(1 - e, static_cast<double>(t)) * diam;
    const double clamped = std::min(1.0, bound);
    const double limit = clamped + 3 * binomial_sigma(clamped, m);
    ok = ok && rate <= limit;
    if (bound < 1 && rate - limit > worst_gap) {
      worst_gap = rate - limit;
      worst_t = t;
    }
  }
  v.detail << "certified eps=" << to_string(eps) << ", M=" << m << ", T=1..30; tightest at T="
           << worst_t << " (rate - limit = " << worst_gap << ")";
  v.require(eps > 0, "positive contraction rate");
  v.require(ok, "tail within bound + 3 sigma");
}

void warm_starts(Verdict& v) {
  struct Case {
    Graph g;
    const char* name;
    Rational lambda;
  };
  std::size_t levels = 0, steps_checked = 0, grew = 0;
  bool ladder_ok = true;
  for (const auto& c : {Case{generate::complete(2), "K2", Rational(1)},
                        Case{generate::complete(2), "K2", Rational(3)},
                        Case{generate::cycle(6), "C6", Rational(1, 2)},
                        Case{generate::cycle(6), "C6", Rational(2)}}) {
    const auto s = build_schedule(c.g.vertex_count(), c.lambda, 0.05, 0.5, StepMode::Practical, 1);
    const auto report = verify_warm_ladder(c.g, s);
    ladder_ok = ladder_ok && report.all_ok;
    levels += s.level_count();
    const StateSpace space = enumerate_independent_sets(c.g);
    for (std::size_t i = 1; i <= s.level_count(); ++i) {
      const ExactChain chain = build_hardcore_chain(c.g, space, s.exact_level(i));
      // Start from the previous level's Gibbs law, and from it tilted toward the empty set.
      std::vector<Rational> start = gibbs_distribution(space, s.exact_level(i - 1));
      for (int variant = 0; variant < 2; ++variant) {
        if (variant == 1) {
          Rational total = 0;
          for (std::size_t j = 0; j < start.size(); ++j) {
            start[j] = chain.pi_exact[j] * (space.independent_set(j).empty() ? Rational(2) : Rational(1, 2));
            total += start[j];
          }
          for (auto& p : start) p /= total;
        }
        const auto before = is_warm_start(RS(start), RS(chain.pi_exact));
        if (!before.warm) continue;
        const auto after_dist = apply_kernel(chain, RS(start));
        const auto after = is_warm_start(RS(after_dist), RS(chain.pi_exact));
        ++steps_checked;
        grew += !(after.warm && *after.max_ratio <= *before.max_ratio);
      }
    }
  }
  v.detail << levels << " ladder levels on K2 and C6, Z_1 < 2 and Z_i/Z_{i-1} < e^{1/3} "
           << (ladder_ok ? "everywhere" : "NOT everywhere") << "; " << steps_checked
           << " warm starts stepped exactly, " << grew << " lost warmth or grew";
  v.require(ladder_ok, "ladder ratios");
  v.require(steps_checked > 0, "warm starts checked");
  v.require(grew == 0, "warmth preserved");
}

void annealing_end_to_end(Verdict& v) {
  const Graph g = generate::cycle(6);
  const Rational lambda(1, 2);
  const double delta = 0.05;
  auto s = build_schedule(6, lambda, delta, 0.5, StepMode::Practical, 1);
  s.steps = calibrate_steps(g, s, delta);
  const StateSpace space = enumerate_independent_sets(g);
  const auto pi = to_doubles(gibbs_distribution(space, lambda));
  const double exact_tv = tv_distance(exact_annealing_output(g, s), pi);
  constexpr std::size_t m = 100'000;
  const auto codes = parallel_map<std::uint64_t>(m, [&](std::size_t i) {
    Rng rng = derive_rng(11, i);
    return annealed_sample(g, s, rng).sample.mask();
  });
  std::vector<double> empirical(space.size());
  for (auto c : codes) empirical[space.index_of(c)] += 1.0 / static_cast<double>(m);
  const double tv = tv_distance(empirical, pi);
  const double slack = tv_slack(pi, m);
  v.detail << s.level_count() << " levels, calibrated T_i max " << *std::max_element(s.steps.begin(), s.steps.end())
           << "; exact output TV " << exact_tv << ", empirical TV " << tv << " <= " << delta << " + " << slack;
  v.require(exact_tv <= delta, "exact output TV");
  v.require(tv <= delta + slack, "empirical output TV");
}

void exact_decay(Verdict& v) {
  const Graph g = generate::complete(2);
  const ExactChain col = build_coloring_chain(g, enumerate_proper_colorings(g, 3));
  const ExactChain hc = build_hardcore_chain(g, enumerate_independent_sets(g), Rational(1));
  const std::size_t c25 = exact_mixing_time(col, 0.25), c01 = exact_mixing_time(col, 0.01);
  const std::size_t h25 = exact_mixing_time(hc, 0.25), h01 = exact_mixing_time(hc, 0.01);
  bool monotone = true;
  for (const auto* chain : {&col, &hc}) {
    const auto d = worst_case_decay(*chain, 60);
    for (std::size_t t = 1; t < d.size(); ++t) monotone = monotone && d[t] <= d[t - 1] + 1e-15;
  }
  v.detail << "K2 k=3 colorings: " << c25 << " (delta 0.25), " << c01 << " (delta 0.01); K2 hard-core lambda=1: "
           << h25 << ", " << h01 << "; decay " << (monotone ? "non-increasing" : "NOT monotone");
  v.require(c25 == 4 && c01 == 15, "coloring mixing times 4 / 15");
  v.require(h25 == 3 && h01 == 14, "hard-core mixing times 3 / 14");
  v.require(monotone, "non-increasing decay");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> checks = {
      {"exact coupling contraction, colorings", coloring_contraction},
      {"exact coupling contraction, hard-core", hardcore_contraction},
      {"coupled marginals equal kernel rows", coupled_marginals},
      {"oracle kernels stationary, partition values", oracle_stationarity},
      {"available-colors tail, exact vs mcmc", available_colors_statistic},
      {"unblocked-neighbor window, exact vs mcmc", unblocked_statistic},
      {"fixed points of x -> exp(-Cx)", fixed_points},
      {"interval iteration containment", interval_containment},
      {"coupling tail vs contraction bound", coupling_tail},
      {"annealing warm-start ladder", warm_starts},
      {"annealed sampler output TV", annealing_end_to_end},
      {"exact TV decay regression", exact_decay},
  };
  std::size_t failed = 0;
  for (const auto& [name, body] : checks) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("%s  %-46s %8.2fs  %s\n", v.pass ? "PASS" : "FAIL", name, secs, v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu passed\n", checks.size() - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
