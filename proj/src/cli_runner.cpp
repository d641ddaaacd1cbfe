#include "mixing/cli_runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "mixing/annealing.hpp"
#include "mixing/coloring.hpp"
#include "mixing/coloring_verify.hpp"
#include "mixing/coupling.hpp"
#include "mixing/errors.hpp"
#include "mixing/exact.hpp"
#include "mixing/fixed_point.hpp"
#include "mixing/graph.hpp"
#include "mixing/hardcore.hpp"
#include "mixing/hardcore_verify.hpp"
#include "mixing/parallel.hpp"
#include "mixing/rational.hpp"
#include "mixing/stats.hpp"

namespace mixing::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Config {
  std::string graph_file;
  std::string family;
  int k = 0;
  std::string beta = "1/2";
  std::string lambda;
  std::string zeta = "1/2";
  double xi = 0.1;
  double delta = 0.05;
  double eps = 0;
  double diam = 0;
  double delta_bad = 0;
  std::string theorem;
  std::uint64_t steps = 0;
  std::size_t replicas = 1;
  std::size_t samples = 10'000;
  std::size_t pairs = 10'000;
  std::size_t trace = 10;
  std::uint64_t seed = 1;
  std::uint64_t cap = 0;
  std::string sampler = "exact";
  std::string mode = "practical";
  std::string chain = "coloring";
  std::string space = "proper";
  std::size_t burn_in = 0;
  std::uint64_t ti = 0;
  bool calibrate = false;
  std::vector<double> zetas;
  std::vector<double> xis;
  std::string x;
  std::string y;
  std::size_t n = 0;
  std::size_t max_degree = 0;
  unsigned workers = 0;
  std::string out;
  std::string csv;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  json results = json::object();
  json config_extra = json::object();
  std::optional<Table> table;
  bool ok = true;
};

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class Int>
std::string num_int(Int v) {
  return std::to_string(v);
}

// ---- parameter parsing -------------------------------------------------

Rational rational_param(const std::string& text, const char* name) {
  if (text.empty()) throw InvalidArgument(std::string("--") + name + " is required");
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("--") + name + ": cannot parse '" + text +
                          "' as a number (forms: 3, 0.25, 1/2)");
  }
}

Rational nonneg_rational(const std::string& text, const char* name) {
  Rational q = rational_param(text, name);
  if (q < 0) throw InvalidArgument(std::string("--") + name + " must be nonnegative");
  return q;
}

void require_open_unit(double v, const char* name) {
  if (!(v > 0 && v < 1)) throw InvalidArgument(std::string("--") + name + " must lie in (0, 1)");
}

void require_positive(double v, const char* name) {
  if (!(v > 0)) throw InvalidArgument(std::string("--") + name + " must be positive");
}

void require_count(std::size_t v, const char* name) {
  if (v == 0) throw InvalidArgument(std::string("--") + name + " must be positive");
}

SamplerKind sampler_param(const std::string& s) {
  if (s == "exact") return SamplerKind::Exact;
  if (s == "mcmc") return SamplerKind::Mcmc;
  throw InvalidArgument("--sampler must be 'exact' or 'mcmc'");
}

const char* sampler_name(SamplerKind k) { return k == SamplerKind::Exact ? "exact" : "mcmc"; }

Graph input_graph(const Config& c, Outcome& o) {
  if (c.graph_file.empty() == c.family.empty()) {
    throw InvalidArgument("give exactly one of --graph FILE or --family SPEC");
  }
  Graph g = c.graph_file.empty() ? generate::from_spec(c.family) : load_graph(c.graph_file);
  o.config_extra["graph_summary"] = {
      {"n", g.vertex_count()}, {"m", g.edge_count()}, {"max_degree", max_degree(g)}};
  return g;
}

Graph nonempty_graph(const Config& c, Outcome& o) {
  Graph g = input_graph(c, o);
  if (g.vertex_count() == 0) throw InvalidArgument("the graph has no vertices");
  return g;
}

json rng_echo(std::uint64_t seed, json streams) {
  return {{"engine", "mt19937_64"},
          {"master_seed", seed},
          {"derivation", "seed_seq(seed_lo, seed_hi, stream, replica_lo, replica_hi)"},
          {"streams", std::move(streams)}};
}

json members_json(const IndependentSet& x) {
  json a = json::array();
  for (Vertex v : x.members()) a.push_back(v);
  return a;
}

Table histogram_table(const std::vector<std::size_t>& counts) {
  Table t{{"bin_lo", "bin_hi", "count"}, {}};
  for (std::size_t m = 0; m < counts.size(); ++m) {
    t.rows.push_back({num_int(m), num_int(m + 1), num_int(counts[m])});
  }
  return t;
}

// ---- subcommands -------------------------------------------------------

Outcome sample_colorings(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  if (c.k < 1) throw InvalidArgument("--k must be positive");
  require_heat_bath(g, Coloring::constant(g.vertex_count(), c.k));
  require_count(c.replicas, "replicas");
  o.config_extra["rng"] = rng_echo(c.seed, {{"0", "replica r: heat-bath moves"}});

  struct Run {
    std::vector<Color> colors;
    bool proper = false;
    std::size_t min_available = 0;
    std::vector<std::size_t> trace;
  };
  const auto runs = parallel_map<Run>(
      c.replicas,
      [&](std::size_t r) {
        Rng rng = derive_rng(c.seed, r);
        Coloring x = Coloring::constant(g.vertex_count(), c.k, 1);
        Run out;
        if (r == 0) out.trace.push_back(min_available(g, x));
        for (std::uint64_t t = 0; t < c.steps; ++t) {
          x = glauber_step(g, std::move(x), rng);
          if (r == 0) out.trace.push_back(min_available(g, x));
        }
        out.colors.assign(x.colors().begin(), x.colors().end());
        out.proper = is_proper(g, x);
        out.min_available = min_available(g, x);
        return out;
      },
      c.workers);

  json samples = json::array();
  std::vector<std::size_t> hist(static_cast<std::size_t>(c.k) + 1, 0);
  std::size_t proper = 0;
  for (const auto& run : runs) {
    samples.push_back(run.colors);
    proper += run.proper;
    ++hist[run.min_available];
  }
  o.results["samples"] = std::move(samples);
  o.results["proper_fraction"] = static_cast<double>(proper) / static_cast<double>(c.replicas);
  o.results["min_available_histogram"] = hist;
  Table t{{"step", "min_available"}, {}};
  for (std::size_t s = 0; s < runs[0].trace.size(); ++s) {
    t.rows.push_back({num_int(s), num_int(runs[0].trace[s])});
  }
  o.table = std::move(t);
  return o;
}

Outcome sample_hardcore(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  const double lambda = to_double(nonneg_rational(c.lambda, "lambda"));
  require_count(c.replicas, "replicas");
  o.config_extra["rng"] = rng_echo(c.seed, {{"0", "replica r: Glauber moves"}});

  struct Run {
    IndependentSet x;
    std::vector<std::array<std::size_t, 3>> trace;
  };
  const auto runs = parallel_map<Run>(
      c.replicas,
      [&](std::size_t r) {
        Rng rng = derive_rng(c.seed, r);
        Run out;
        IndependentSet x(g.vertex_count());
        auto record = [&] {
          const auto [lo, hi] = unblocked_range(g, x);
          out.trace.push_back({x.size(), lo, hi});
        };
        if (r == 0) record();
        for (std::uint64_t t = 0; t < c.steps; ++t) {
          x = glauber_step_hc(g, std::move(x), lambda, rng);
          if (r == 0) record();
        }
        out.x = std::move(x);
        return out;
      },
      c.workers);

  json samples = json::array();
  std::vector<std::size_t> hist(g.vertex_count() + 1, 0);
  double total = 0;
  for (const auto& run : runs) {
    samples.push_back(members_json(run.x));
    ++hist[run.x.size()];
    total += static_cast<double>(run.x.size());
  }
  o.results["samples"] = std::move(samples);
  o.results["mean_size"] = total / static_cast<double>(c.replicas);
  o.results["size_histogram"] = hist;
  Table t{{"step", "set_size", "min_U", "max_U"}, {}};
  for (std::size_t s = 0; s < runs[0].trace.size(); ++s) {
    const auto& row = runs[0].trace[s];
    t.rows.push_back({num_int(s), num_int(row[0]), num_int(row[1]), num_int(row[2])});
  }
  o.table = std::move(t);
  return o;
}

void summarize_coupling(const Config& c, const std::vector<CoupledTrajectory>& runs, double diam,
                        Outcome& o) {
  const std::size_t m = runs.size();
  json steps = json::array();
  bool all_within = true;
  for (std::size_t t = 0; t <= c.steps; ++t) {
    double dist = 0, apart = 0;
    for (const auto& run : runs) {
      dist += static_cast<double>(run.distances[t]);
      apart += run.distances[t] != 0;
    }
    json row = {{"T", t},
                {"mean_distance", dist / static_cast<double>(m)},
                {"disagreement_rate", apart / static_cast<double>(m)}};
    if (c.eps > 0) {
      const Bound b = theorem31_bound(c.eps, c.delta_bad, t, diam);
      const bool within = within_bound(apart / static_cast<double>(m), b.clamped, m);
      row["bound"] = b.clamped;
      row["bound_raw"] = b.raw;
      row["within_bound"] = within;
      all_within = all_within && within;
    }
    steps.push_back(std::move(row));
  }
  std::size_t met = 0;
  double meet_total = 0;
  for (const auto& run : runs) {
    if (run.met_at) {
      ++met;
      meet_total += static_cast<double>(*run.met_at);
    }
  }
  o.results["steps"] = std::move(steps);
  o.results["diameter"] = diam;
  o.results["met_fraction"] = static_cast<double>(met) / static_cast<double>(m);
  o.results["mean_meeting_time"] = met ? json(meet_total / static_cast<double>(met)) : json(nullptr);
  if (c.eps > 0) o.results["all_within_bound"] = all_within;
  o.ok = all_within;

  Table t{{"replica", "step", "distance"}, {}};
  for (std::size_t r = 0; r < std::min(c.trace, m); ++r) {
    for (std::size_t s = 0; s < runs[r].distances.size(); ++s) {
      t.rows.push_back({num_int(r), num_int(s), num_int(runs[r].distances[s])});
    }
  }
  o.table = std::move(t);
}

void check_coupling_controls(const Config& c) {
  require_count(c.replicas, "replicas");
  if (c.eps < 0 || c.eps > 1) throw InvalidArgument("--eps must lie in (0, 1] when given");
  if (c.delta_bad < 0) throw InvalidArgument("--delta-bad must be nonnegative");
}

Outcome couple_colorings(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  if (c.k < 1) throw InvalidArgument("--k must be positive");
  require_heat_bath(g, Coloring::constant(g.vertex_count(), c.k));
  check_coupling_controls(c);
  std::optional<Coloring> x0, y0;
  auto parse_start = [&](const std::string& text, const char* name) {
    std::istringstream in(text);
    Coloring s = read_coloring(in, c.k);
    if (s.size() != g.vertex_count()) {
      throw InvalidArgument(std::string("--") + name + " must color every vertex");
    }
    return s;
  };
  if (!c.x.empty()) x0 = parse_start(c.x, "x");
  if (!c.y.empty()) y0 = parse_start(c.y, "y");
  o.config_extra["rng"] = rng_echo(
      c.seed, {{"0", "replica r: coupled moves"}, {"1", "replica r: random start pair"}});

  const std::size_t n = g.vertex_count();
  const auto runs = parallel_map<CoupledTrajectory>(
      c.replicas,
      [&](std::size_t r) {
        Rng start = derive_rng(c.seed, r, 1);
        auto random_coloring = [&] {
          std::vector<Color> colors(n);
          for (auto& col : colors) {
            col = static_cast<Color>(start.uniform_index(static_cast<std::size_t>(c.k))) + 1;
          }
          return Coloring(std::move(colors), c.k);
        };
        Coloring x = x0 ? *x0 : random_coloring();
        Coloring y = y0 ? *y0 : random_coloring();
        Rng moves = derive_rng(c.seed, r, 0);
        return run_coupled(
            std::move(x), std::move(y),
            [&](Coloring a, Coloring b, Rng& rng) {
              return jerrum_coupled_step(g, std::move(a), std::move(b), rng);
            },
            c.steps, moves, [](const Coloring& a, const Coloring& b) { return hamming(a, b); });
      },
      c.workers);
  summarize_coupling(c, runs, static_cast<double>(n), o);
  return o;
}

Outcome couple_hardcore(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  const double lambda = to_double(nonneg_rational(c.lambda, "lambda"));
  check_coupling_controls(c);
  std::optional<IndependentSet> x0, y0;
  auto parse_start = [&](const std::string& text) {
    std::istringstream in(text);
    return read_independent_set(in, g);
  };
  if (!c.x.empty()) x0 = parse_start(c.x);
  if (!c.y.empty()) y0 = parse_start(c.y);
  o.config_extra["rng"] = rng_echo(
      c.seed, {{"0", "replica r: coupled moves"}, {"1", "replica r: random maximal start set"}});

  const std::size_t n = g.vertex_count();
  const auto runs = parallel_map<CoupledTrajectory>(
      c.replicas,
      [&](std::size_t r) {
        Rng start = derive_rng(c.seed, r, 1);
        auto random_maximal = [&] {
          std::vector<Vertex> order(n);
          for (Vertex v = 0; v < n; ++v) order[v] = v;
          for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[start.uniform_index(i)]);
          IndependentSet s(n);
          for (Vertex v : order) {
            if (is_free(g, s, v)) s.insert(v);
          }
          return s;
        };
        IndependentSet x = x0 ? *x0 : IndependentSet(n);
        IndependentSet y = y0 ? *y0 : random_maximal();
        Rng moves = derive_rng(c.seed, r, 0);
        return run_coupled(
            std::move(x), std::move(y),
            [&](IndependentSet a, IndependentSet b, Rng& rng) {
              return maximal_coupled_step_hc(g, std::move(a), std::move(b), lambda, rng);
            },
            c.steps, moves,
            [](const IndependentSet& a, const IndependentSet& b) { return hamming(a, b); });
      },
      c.workers);
  summarize_coupling(c, runs, static_cast<double>(n), o);
  return o;
}

Outcome verify21(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  Lemma21Options opt;
  opt.samples = c.samples;
  opt.sampler = sampler_param(c.sampler);
  opt.burn_in = c.burn_in;
  opt.seed = c.seed;
  opt.enumeration_cap = c.cap;
  opt.workers = c.workers;
  require_count(c.samples, "samples");
  const double beta = to_double(rational_param(c.beta, "beta"));
  o.config_extra["rng"] = rng_echo(c.seed, {{"0", "sample i: one draw (exact index or MCMC run)"}});
  const Lemma21Report r = verify_lemma21(g, c.k, beta, opt);

  o.results = {{"n", r.n},
               {"max_degree", r.max_degree},
               {"k", r.k},
               {"beta", r.beta},
               {"threshold", r.threshold},
               {"bound", r.bound},
               {"sampler", sampler_name(r.sampler)},
               {"samples", r.samples},
               {"burn_in", r.burn_in},
               {"violations", r.violations},
               {"empirical_rate", r.empirical_rate},
               {"tolerance", r.tolerance},
               {"pass", r.pass},
               {"min_available_counts", r.min_available_counts}};
  bool exact_ok = true;
  if (r.exact_rate) {
    exact_ok = *r.exact_rate <= r.bound;
    o.results["exact_rate"] = *r.exact_rate;
    o.results["exact_within_bound"] = exact_ok;
    o.results["min_available_exact"] = r.min_available_exact;
    o.results["empirical_matches_exact"] =
        within_three_sigma(r.empirical_rate, *r.exact_rate, r.samples);
  }
  o.ok = r.pass && exact_ok;
  o.table = histogram_table(r.min_available_counts);
  return o;
}

json contraction_json(const ContractionCheck& r) {
  return {{"pairs_checked", r.pairs_checked},
          {"hypothesis_pairs", r.hypothesis_pairs},
          {"violations", r.violations},
          {"exhaustive", r.exhaustive}};
}

Outcome verify23(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  if (c.k < 1) throw InvalidArgument("--k must be positive");
  const Rational beta = rational_param(c.beta, "beta");
  if (beta <= 0 || beta >= 1) throw InvalidArgument("--beta must lie in (0, 1)");
  o.config_extra["rng"] = rng_echo(c.seed, {{"0", "random pairs (only past the cap)"}});
  const ContractionCheck r = check_lemma23(g, c.k, beta, c.cap, c.pairs, c.seed);
  o.results = contraction_json(r);
  o.ok = r.violations == 0;
  return o;
}

Outcome verify42(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  Lemma42Options opt;
  opt.samples = c.samples;
  opt.sampler = sampler_param(c.sampler);
  opt.burn_in = c.burn_in;
  opt.seed = c.seed;
  opt.enumeration_cap = c.cap;
  opt.workers = c.workers;
  require_count(c.samples, "samples");
  const double lambda = to_double(rational_param(c.lambda, "lambda"));
  const double zeta = to_double(rational_param(c.zeta, "zeta"));
  o.config_extra["rng"] = rng_echo(c.seed, {{"0", "sample i: one draw (exact index or MCMC run)"}});
  const Lemma42Report r = verify_lemma42(g, lambda, zeta, c.xi, opt);

  o.results = {{"n", r.n},
               {"degree", r.degree},
               {"lambda", r.lambda},
               {"zeta", r.zeta},
               {"xi", r.xi},
               {"mu", r.mu},
               {"u_lo", r.u_lo},
               {"u_hi", r.u_hi},
               {"bound_raw", r.bound_raw},
               {"bound", r.bound},
               {"vacuous", r.vacuous},
               {"sampler", sampler_name(r.sampler)},
               {"samples", r.samples},
               {"burn_in", r.burn_in},
               {"violations", r.violations},
               {"empirical_rate", r.empirical_rate},
               {"tolerance", r.tolerance},
               {"pass", r.pass},
               {"min_u_counts", r.min_u_counts},
               {"max_u_counts", r.max_u_counts}};
  bool exact_ok = true;
  if (r.exact_rate) {
    exact_ok = *r.exact_rate <= r.bound;
    o.results["exact_rate"] = *r.exact_rate;
    o.results["exact_within_bound"] = exact_ok;
    o.results["min_u_exact"] = r.min_u_exact;
    o.results["max_u_exact"] = r.max_u_exact;
    o.results["empirical_matches_exact"] =
        within_three_sigma(r.empirical_rate, *r.exact_rate, r.samples);
  }
  o.ok = r.pass && exact_ok;
  o.table = histogram_table(r.min_u_counts);
  return o;
}

Outcome verify48(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  const Rational lambda = rational_param(c.lambda, "lambda");
  const Rational zeta = rational_param(c.zeta, "zeta");
  if (lambda <= 0) throw InvalidArgument("--lambda must be positive");
  if (zeta <= 0 || zeta >= 1) throw InvalidArgument("--zeta must lie in (0, 1)");
  o.config_extra["rng"] = rng_echo(c.seed, {{"0", "pair i: two Glauber samples (only past the cap)"}});
  const ContractionCheck r = check_lemma48(g, lambda, zeta, c.cap, c.pairs, c.seed);
  o.results = contraction_json(r);
  o.ok = r.violations == 0;
  return o;
}

Outcome fixed_point_sweep(const Config& c) {
  Outcome o;
  for (double z : c.zetas) require_open_unit(z, "zetas");
  for (double x : c.xis) require_positive(x, "xis");
  const auto rows = lemma46_sweep(c.zetas, c.xis);
  json cells = json::array();
  Table t{{"C", "zeta", "xi", "t_bound", "t_actual", "contained"}, {}};
  bool all = true;
  for (const auto& r : rows) {
    cells.push_back({{"C", r.C},
                     {"zeta", r.zeta},
                     {"xi", r.xi},
                     {"t_bound", r.t_bound},
                     {"t_actual", r.t_actual},
                     {"contained", r.contained},
                     {"in_hypothesis_range", r.hypothesis}});
    t.rows.push_back({num(r.C), num(r.zeta), num(r.xi), num_int(r.t_bound), num_int(r.t_actual),
                      r.contained ? "1" : "0"});
    all = all && r.contained;
  }
  json obs = json::array();
  for (double z : c.zetas) {
    const Observation45 ob = observation45_check(z);
    obs.push_back({{"zeta", z}, {"C", ob.C}, {"mu", ob.mu}, {"bound", ob.bound}, {"holds", ob.holds}});
    all = all && ob.holds;
  }
  o.results["cells"] = std::move(cells);
  o.results["fixed_point_bounds"] = std::move(obs);
  o.results["alpha"] = solve_alpha();
  o.results["all_contained"] = all;
  o.ok = all;
  o.table = std::move(t);
  return o;
}

Outcome anneal(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  const Rational lambda = rational_param(c.lambda, "lambda");
  require_count(c.replicas, "runs");
  StepMode mode;
  if (c.mode == "paper") {
    mode = StepMode::Paper;
    require_open_unit(c.delta, "delta");
    require_open_unit(to_double(rational_param(c.zeta, "zeta")), "zeta");
  } else if (c.mode == "practical") {
    mode = StepMode::Practical;
    require_open_unit(c.delta, "delta");
    if (c.ti == 0 && !c.calibrate) {
      throw InvalidArgument("practical mode needs --ti N or --calibrate");
    }
    if (c.ti != 0 && c.calibrate) throw InvalidArgument("--ti and --calibrate are exclusive");
  } else {
    throw InvalidArgument("--mode must be 'paper' or 'practical'");
  }
  const double zeta = to_double(rational_param(c.zeta, "zeta"));
  AnnealingSchedule schedule =
      build_schedule(g.vertex_count(), lambda, c.delta, zeta, mode, c.ti ? c.ti : 1);

  std::optional<StateSpace> space;
  try {
    space = enumerate_independent_sets(g, c.cap);
  } catch (const CapExceeded&) {
    if (c.calibrate) throw;
  }
  if (c.calibrate) schedule.steps = calibrate_steps(g, schedule, c.delta);
  o.config_extra["rng"] = rng_echo(c.seed, {{"0", "run r: Glauber moves at every level"}});

  const auto runs = parallel_map<AnnealResult>(
      c.replicas,
      [&](std::size_t r) {
        Rng rng = derive_rng(c.seed, r);
        return annealed_sample(g, schedule, rng);
      },
      c.workers);

  json levels = json::array();
  Table t{{"level", "lambda", "steps", "mean_set_size"}, {}};
  for (std::size_t i = 1; i <= schedule.level_count(); ++i) {
    double total = 0;
    for (const auto& run : runs) total += static_cast<double>(run.levels[i - 1].set_size);
    const double mean = total / static_cast<double>(runs.size());
    levels.push_back({{"level", i},
                      {"lambda", to_string(schedule.exact_level(i))},
                      {"lambda_value", schedule.levels[i]},
                      {"steps", schedule.steps[i - 1]},
                      {"mean_set_size", mean}});
    t.rows.push_back({num_int(i), num(schedule.levels[i]), num_int(schedule.steps[i - 1]), num(mean)});
  }
  o.results["schedule"] = {{"levels", std::move(levels)},
                           {"level_count", schedule.level_count()},
                           {"rungs", schedule.rungs},
                           {"formula_levels", schedule.formula_levels},
                           {"extra_level", schedule.extra_level},
                           {"ratio", to_string(schedule.ratio())},
                           {"mode", c.mode},
                           {"calibrated", c.calibrate}};

  std::vector<std::size_t> hist(g.vertex_count() + 1, 0);
  double total = 0;
  for (const auto& run : runs) {
    ++hist[run.sample.size()];
    total += static_cast<double>(run.sample.size());
  }
  o.results["runs"] = runs.size();
  o.results["size_histogram"] = hist;
  o.results["mean_size"] = total / static_cast<double>(runs.size());

  if (space) {
    const Distribution pi = to_doubles(gibbs_distribution(*space, lambda));
    Distribution empirical(space->size(), 0.0);
    for (const auto& run : runs) empirical[space->index_of(run.sample)] += 1.0;
    for (double& p : empirical) p /= static_cast<double>(runs.size());
    const double tv = tv_distance(empirical, pi);
    const double slack = tv_slack(pi, runs.size());
    const double exact_tv = tv_distance(exact_annealing_output(g, schedule), pi);
    const bool asserted = mode == StepMode::Paper || c.calibrate;
    const bool within = tv <= c.delta + slack && exact_tv <= c.delta;
    o.results["gibbs_check"] = {{"states", space->size()},
                                {"empirical_tv", tv},
                                {"slack", slack},
                                {"exact_output_tv", exact_tv},
                                {"target", c.delta},
                                {"asserted", asserted},
                                {"within_target", within}};
    o.ok = !asserted || within;
  }
  o.table = std::move(t);
  return o;
}

Outcome exact_tv(const Config& c) {
  Outcome o;
  const Graph g = nonempty_graph(c, o);
  const std::size_t cap = c.cap;
  std::optional<ExactChain> chain;
  if (c.chain == "coloring") {
    if (c.k < 1) throw InvalidArgument("--k must be positive");
    require_heat_bath(g, Coloring::constant(g.vertex_count(), c.k));
    StateSpace space = c.space == "proper" ? enumerate_proper_colorings(g, c.k)
                       : c.space == "all"  ? enumerate_all_colorings(g, c.k)
                                           : throw InvalidArgument("--space must be 'proper' or 'all'");
    chain = build_coloring_chain(g, std::move(space), cap);
  } else if (c.chain == "hardcore") {
    const Rational lambda = rational_param(c.lambda, "lambda");
    if (lambda <= 0) throw InvalidArgument("--lambda must be positive");
    chain = build_hardcore_chain(g, enumerate_independent_sets(g), lambda, cap);
  } else {
    throw InvalidArgument("--chain must be 'coloring' or 'hardcore'");
  }
  require_ergodic_support(*chain);
  const auto curve = worst_case_decay(*chain, c.steps);
  bool monotone = true;
  Table t{{"T", "tv"}, {}};
  for (std::size_t s = 0; s < curve.size(); ++s) {
    if (s > 0 && curve[s] > curve[s - 1] + 1e-12) monotone = false;
    t.rows.push_back({num_int(s), num(curve[s])});
  }
  o.results["states"] = chain->space.size();
  o.results["curve"] = curve;
  o.results["final_tv"] = curve.back();
  o.results["non_increasing"] = monotone;
  if (c.delta > 0) {
    o.results["mixing_time"] = exact_mixing_time(*chain, c.delta);
    o.results["mixing_delta"] = c.delta;
  }
  o.ok = monotone;
  o.table = std::move(t);
  return o;
}

Outcome bounds(const Config& c) {
  Outcome o;
  const std::string& th = c.theorem;
  if (th == "1.1") {
    o.results["T"] = mixing_time_theorem11(c.diam, c.delta, c.eps);
  } else if (th == "1.2" || th == "1.3") {
    const auto r = th == "1.2" ? mixing_time_theorem12(c.diam, c.delta, c.eps)
                               : mixing_time_theorem13(c.diam, c.delta, c.eps);
    o.results["T"] = r.steps;
    o.results["pi_S_threshold"] = r.pi_threshold;
  } else if (th == "3.1") {
    const Bound b = theorem31_bound(c.eps, c.delta_bad, c.steps, c.diam);
    o.results["bound_raw"] = b.raw;
    o.results["bound"] = b.clamped;
  } else if (th == "1.4") {
    const auto p = theorem14_params(c.n, c.max_degree, to_double(rational_param(c.zeta, "zeta")),
                                    c.delta);
    o.results["alpha"] = p.alpha;
    o.results["k_degree_term"] = p.k_degree_term;
    o.results["k_concentration_term"] = p.k_concentration_term;
    o.results["k_min"] = p.k_min;
    o.results["T"] = p.steps;
  } else if (th == "4.1") {
    const auto p = lemma41_params(c.n, to_double(rational_param(c.zeta, "zeta")), c.delta);
    o.results["min_degree_real"] = p.min_degree_real;
    o.results["min_degree"] = p.min_degree;
    o.results["T"] = p.steps;
  } else {
    throw InvalidArgument("--theorem must be one of 1.1, 1.2, 1.3, 1.4, 3.1, 4.1");
  }
  return o;
}

// ---- option wiring -----------------------------------------------------

using Handler = std::function<Outcome(const Config&)>;

struct Command {
  CLI::App* app = nullptr;
  std::shared_ptr<Config> config;
  Handler handler;
};

void add_graph(CLI::App* s, Config& c) {
  s->add_option("--graph", c.graph_file, "Edge-list file: 'n m' then one 'u v' per line");
  s->add_option("--family", c.family,
                "Generated graph, e.g. cycle:6, complete_bipartite:3,3, "
                "random_bipartite_regular:10,3,1");
}

void add_run(CLI::App* s, Config& c) {
  s->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  s->add_option("--workers", c.workers, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_out(CLI::App* s, Config& c) {
  s->add_option("--out", c.out, "JSON result path");
  s->add_option("--csv", c.csv, "CSV plot-data path (default: next to --out)");
}

std::map<std::string, Command> build_commands(CLI::App& app) {
  std::map<std::string, Command> cmds;
  auto make = [&](const std::string& name, const std::string& help, Handler h) -> Command& {
    Command& cmd = cmds[name];
    cmd.app = app.add_subcommand(name, help);
    cmd.config = std::make_shared<Config>();
    cmd.handler = std::move(h);
    add_out(cmd.app, *cmd.config);
    return cmd;
  };

  {
    auto& cmd = make("sample-colorings", "Heat-bath Glauber samples of k-colorings", sample_colorings);
    auto& c = *cmd.config;
    c.steps = 1000;
    add_graph(cmd.app, c);
    cmd.app->add_option("--k", c.k, "Number of colors")->required();
    cmd.app->add_option("--T,--steps", c.steps, "Steps per replica")->capture_default_str();
    cmd.app->add_option("--replicas", c.replicas, "Independent replicas")->capture_default_str();
    add_run(cmd.app, c);
  }
  {
    auto& cmd = make("sample-hardcore", "Glauber samples of the hard-core model", sample_hardcore);
    auto& c = *cmd.config;
    c.steps = 1000;
    add_graph(cmd.app, c);
    cmd.app->add_option("--lambda", c.lambda, "Fugacity (3, 0.5, 1/2)")->required();
    cmd.app->add_option("--T,--steps", c.steps, "Steps per replica")->capture_default_str();
    cmd.app->add_option("--replicas", c.replicas, "Independent replicas")->capture_default_str();
    add_run(cmd.app, c);
  }
  auto coupling_options = [](Command& cmd) {
    auto& c = *cmd.config;
    c.steps = 30;
    c.replicas = 1000;
    add_graph(cmd.app, c);
    cmd.app->add_option("--T,--steps", c.steps, "Coupled steps")->capture_default_str();
    cmd.app->add_option("--replicas", c.replicas, "Independent coupled runs")->capture_default_str();
    cmd.app->add_option("--x", c.x, "Start state X (default: random)");
    cmd.app->add_option("--y", c.y, "Start state Y (default: random)");
    cmd.app->add_option("--eps", c.eps, "Contraction rate; enables the bound check");
    cmd.app->add_option("--delta-bad", c.delta_bad, "Probability of leaving the good set")
        ->capture_default_str();
    cmd.app->add_option("--trace", c.trace, "Replicas written to the CSV")->capture_default_str();
    add_run(cmd.app, c);
  };
  {
    auto& cmd = make("couple-colorings", "Jerrum-coupled heat-bath runs", couple_colorings);
    cmd.app->add_option("--k", cmd.config->k, "Number of colors")->required();
    coupling_options(cmd);
  }
  {
    auto& cmd = make("couple-hardcore", "Maximally coupled hard-core runs", couple_hardcore);
    cmd.app->add_option("--lambda", cmd.config->lambda, "Fugacity")->required();
    coupling_options(cmd);
  }
  {
    auto& cmd = make("verify-lemma21", "Local uniformity of random proper colorings", verify21);
    auto& c = *cmd.config;
    c.cap = kDefaultColoringCap;
    add_graph(cmd.app, c);
    cmd.app->add_option("--k", c.k, "Number of colors")->required();
    cmd.app->add_option("--beta", c.beta, "Slack beta in (0, 1]")->capture_default_str();
    cmd.app->add_option("--samples", c.samples, "Sample count M")->capture_default_str();
    cmd.app->add_option("--sampler", c.sampler, "exact | mcmc")->capture_default_str();
    cmd.app->add_option("--burn-in", c.burn_in, "MCMC steps per sample (0 = 200 n)")
        ->capture_default_str();
    cmd.app->add_option("--cap", c.cap, "Enumeration cap")->capture_default_str();
    add_run(cmd.app, c);
  }
  {
    auto& cmd = make("verify-lemma23", "Exact one-step contraction of the coloring coupling", verify23);
    auto& c = *cmd.config;
    c.cap = 10'000;
    c.pairs = 100'000;
    add_graph(cmd.app, c);
    cmd.app->add_option("--k", c.k, "Number of colors")->required();
    cmd.app->add_option("--beta", c.beta, "Rational beta in (0, 1)")->capture_default_str();
    cmd.app->add_option("--cap", c.cap, "Exhaustive below k^n <= cap")->capture_default_str();
    cmd.app->add_option("--pairs", c.pairs, "Random pairs past the cap")->capture_default_str();
    add_run(cmd.app, c);
  }
  {
    auto& cmd = make("verify-lemma42", "Unblocked-neighbor counts of hard-core samples", verify42);
    auto& c = *cmd.config;
    c.cap = kDefaultSetCap;
    add_graph(cmd.app, c);
    cmd.app->add_option("--lambda", c.lambda, "Fugacity")->required();
    cmd.app->add_option("--zeta", c.zeta, "zeta in (0, 1)")->capture_default_str();
    cmd.app->add_option("--xi", c.xi, "Window half-width xi")->capture_default_str();
    cmd.app->add_option("--samples", c.samples, "Sample count M")->capture_default_str();
    cmd.app->add_option("--sampler", c.sampler, "exact | mcmc")->capture_default_str();
    cmd.app->add_option("--burn-in", c.burn_in, "MCMC steps per sample (0 = 200 n)")
        ->capture_default_str();
    cmd.app->add_option("--cap", c.cap, "Enumeration cap")->capture_default_str();
    add_run(cmd.app, c);
  }
  {
    auto& cmd = make("verify-lemma48", "Exact one-step contraction of the hard-core coupling", verify48);
    auto& c = *cmd.config;
    c.cap = 200;
    add_graph(cmd.app, c);
    cmd.app->add_option("--lambda", c.lambda, "Rational fugacity")->required();
    cmd.app->add_option("--zeta", c.zeta, "Rational zeta in (0, 1)")->capture_default_str();
    cmd.app->add_option("--cap", c.cap, "Exhaustive below this many sets")->capture_default_str();
    cmd.app->add_option("--pairs", c.pairs, "Random pairs past the cap")->capture_default_str();
    add_run(cmd.app, c);
  }
  {
    auto& cmd = make("fixed-point-sweep", "Interval iteration of x -> exp(-C x)", fixed_point_sweep);
    auto& c = *cmd.config;
    c.zetas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    c.xis = {0.01, 0.05, 0.1, 0.5};
    cmd.app->add_option("--zetas", c.zetas, "zeta grid")->capture_default_str();
    cmd.app->add_option("--xis", c.xis, "xi grid")->capture_default_str();
  }
  {
    auto& cmd = make("anneal", "Annealed hard-core sampler", anneal);
    auto& c = *cmd.config;
    c.replicas = 1000;
    c.cap = 1u << 16;
    add_graph(cmd.app, c);
    cmd.app->add_option("--lambda", c.lambda, "Target fugacity (>= 1/3n)")->required();
    cmd.app->add_option("--delta", c.delta, "Target TV distance")->capture_default_str();
    cmd.app->add_option("--zeta", c.zeta, "zeta for paper-mode step counts")->capture_default_str();
    cmd.app->add_option("--mode", c.mode, "paper | practical")->capture_default_str();
    cmd.app->add_option("--ti", c.ti, "Steps per level in practical mode");
    cmd.app->add_flag("--calibrate", c.calibrate,
                      "Practical mode: per-level steps from the exact chain");
    cmd.app->add_option("--runs", c.replicas, "Independent annealing runs")->capture_default_str();
    cmd.app->add_option("--cap", c.cap, "Enumeration cap for the Gibbs comparison")
        ->capture_default_str();
    add_run(cmd.app, c);
  }
  {
    auto& cmd = make("exact-tv", "Exact worst-start TV decay on an enumerated chain", exact_tv);
    auto& c = *cmd.config;
    c.steps = 100;
    c.delta = 0;
    c.cap = kDefaultKernelCap;
    add_graph(cmd.app, c);
    cmd.app->add_option("--chain", c.chain, "coloring | hardcore")->capture_default_str();
    cmd.app->add_option("--k", c.k, "Number of colors (coloring chain)");
    cmd.app->add_option("--lambda", c.lambda, "Fugacity (hard-core chain)");
    cmd.app->add_option("--space", c.space, "proper | all (coloring chain)")->capture_default_str();
    cmd.app->add_option("--T,--steps", c.steps, "Curve length")->capture_default_str();
    cmd.app->add_option("--delta", c.delta, "Also report the exact mixing time to delta");
    cmd.app->add_option("--cap", c.cap, "Largest state space")->capture_default_str();
  }
  {
    auto& cmd = make("bounds", "Mixing-time and coupling bound calculators", bounds);
    auto& c = *cmd.config;
    c.delta = 0;
    cmd.app->add_option("--theorem", c.theorem, "1.1 | 1.2 | 1.3 | 1.4 | 3.1 | 4.1")->required();
    cmd.app->add_option("--diam", c.diam, "Metric diameter");
    cmd.app->add_option("--delta", c.delta, "Target distance / failure probability");
    cmd.app->add_option("--eps", c.eps, "Contraction rate");
    cmd.app->add_option("--delta-bad", c.delta_bad, "Probability of leaving the good set");
    cmd.app->add_option("--T,--steps", c.steps, "Step count (3.1)");
    cmd.app->add_option("--n", c.n, "Vertex count (1.4, 4.1)");
    cmd.app->add_option("--max-degree", c.max_degree, "Maximum degree (1.4)");
    cmd.app->add_option("--zeta", c.zeta, "zeta (1.4, 4.1)")->capture_default_str();
  }
  return cmds;
}

// ---- config file, output -----------------------------------------------

json scalar_json(const std::string& text, bool textual) {
  if (!textual && json::accept(text)) {
    json v = json::parse(text);
    if (v.is_number() || v.is_boolean() || v.is_array()) return v;
  }
  return text;
}

json echo_config(const CLI::App* sub) {
  json config = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "out" || name == "csv") continue;
    if (opt->get_type_size() == 0) {
      config[name] = opt->count() > 0;
      continue;
    }
    const bool textual = opt->get_type_name() == "TEXT";
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1) {
        json a = json::array();
        for (const auto& r : res) a.push_back(scalar_json(r, textual));
        config[name] = std::move(a);
      } else {
        config[name] = scalar_json(res.back(), textual);
      }
    } else if (!opt->get_default_str().empty()) {
      config[name] = scalar_json(opt->get_default_str(), textual);
    } else {
      config[name] = nullptr;
    }
  }
  return config;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string json_token(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

/// Splices the entries of a --config JSON file in after the subcommand name;
/// keys given explicitly on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config requires a file path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw InvalidArgument("cannot open config file '" + *path + "'");
  json file;
  try {
    file = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("config file '" + *path + "': " + e.what());
  }
  if (!file.is_object()) throw InvalidArgument("config file must hold a JSON object");

  auto sub = std::find_if(args.begin(), args.end(),
                          [](const std::string& a) { return a.empty() || a[0] != '-'; });
  if (sub == args.end()) {
    if (!file.contains("subcommand")) throw InvalidArgument("no subcommand given");
    args.insert(args.begin(), file["subcommand"].get<std::string>());
    sub = args.begin();
  }
  std::vector<std::string> extra;
  for (const auto& [key, value] : file.items()) {
    if (key == "subcommand" || given_on_command_line(args, key)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back("--" + key);
    } else if (value.is_array()) {
      extra.push_back("--" + key);
      for (const auto& v : value) extra.push_back(json_token(v));
    } else if (!value.is_null()) {
      extra.push_back("--" + key);
      extra.push_back(json_token(value));
    }
  }
  args.insert(sub + 1, extra.begin(), extra.end());
  return args;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw InvalidArgument("write to '" + path.string() + "' failed");
}

std::string csv_text(const Table& t) {
  std::string s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    s += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return s;
}

void emit(const std::string& name, const Config& c, Outcome& o, const CLI::App* sub,
          std::ostream& out) {
  json config = echo_config(sub);
  for (auto& [k, v] : o.config_extra.items()) config[k] = v;
  json doc = o.results;
  doc["format_version"] = kFormatVersion;
  doc["subcommand"] = name;
  doc["config"] = std::move(config);
  doc["status"] = o.ok ? "ok" : "assertion_failed";
  const std::string text = doc.dump(2) + "\n";

  std::optional<fs::path> json_path;
  if (!c.out.empty()) {
    json_path = c.out;
  } else if (const char* dir = std::getenv(kOutDirVariable); dir && *dir) {
    json_path = fs::path(dir) / (name + ".json");
  }
  if (json_path) {
    write_text(*json_path, text);
  } else {
    out << text;
  }
  if (o.table) {
    std::optional<fs::path> csv_path;
    if (!c.csv.empty()) {
      csv_path = c.csv;
    } else if (json_path) {
      csv_path = fs::path(*json_path).replace_extension(".csv");
    }
    if (csv_path) write_text(*csv_path, csv_text(*o.table));
  }
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Glauber dynamics, couplings and exact mixing oracles for colorings and the "
               "hard-core model",
               "mixing"};
  app.require_subcommand(1);
  app.add_option("--config", "JSON file of option values; command-line flags override it");
  auto commands = build_commands(app);

  std::string active;
  try {
    std::vector<std::string> args = expand_config(raw_args);
    if (auto first = std::find_if(args.begin(), args.end(),
                                  [](const std::string& a) { return a.empty() || a[0] != '-'; });
        first != args.end() && !commands.count(*first)) {
      err << "error: unknown subcommand '" << *first << "'\n\n" << app.help();
      return kUsageError;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
    for (const auto& [name, cmd] : commands) {
      if (cmd.app->parsed()) active = name;
    }
    Command& cmd = commands.at(active);
    Outcome o = cmd.handler(*cmd.config);
    emit(active, *cmd.config, o, cmd.app, out);
    if (!o.ok) {
      err << active << ": a checked bound or invariant was violated (see status in the output)\n";
      return kAssertionFailed;
    }
    return kSuccess;
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto& [name, cmd] : commands) {
      if (cmd.app->parsed()) target = cmd.app;
    }
    out << target->help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const NonErgodic& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "error: " << (active.empty() ? "" : active + ": ") << e.what() << '\n';
    return kUsageError;
  } catch (const VerificationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kAssertionFailed;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace mixing::cli
