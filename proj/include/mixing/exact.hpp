#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mixing/coloring.hpp"
#include "mixing/graph.hpp"
#include "mixing/hardcore.hpp"
#include "mixing/rational.hpp"

namespace mixing {

/// Enumerated state space. Colorings are coded base k with vertex 0 most
/// significant (so ascending codes are lexicographic order on color
/// vectors); independent sets are coded as bitmasks. Codes are strictly
/// increasing.
class StateSpace {
 public:
  enum class Kind { Colorings, IndependentSets };

  StateSpace(Kind kind, std::size_t n, int palette,
             std::vector<std::uint64_t> codes);

  Kind kind() const { return kind_; }
  std::size_t vertex_count() const { return n_; }
  int palette() const { return palette_; }
  std::size_t size() const { return codes_.size(); }
  std::uint64_t code(std::size_t i) const { return codes_[i]; }

  std::optional<std::size_t> find(std::uint64_t code) const;
  /// Throws std::out_of_range for a code outside the space.
  std::size_t index_of(std::uint64_t code) const;
  std::size_t index_of(const Coloring& x) const;
  std::size_t index_of(const IndependentSet& x) const;

  Coloring coloring(std::size_t i) const;
  IndependentSet independent_set(std::size_t i) const;

 private:
  Kind kind_;
  std::size_t n_;
  int palette_;
  std::vector<std::uint64_t> codes_;
};

std::uint64_t encode(const Coloring& x);
Coloring decode_coloring(std::uint64_t code, std::size_t n, int palette);

inline constexpr std::uint64_t kDefaultColoringCap = 1'000'000;
inline constexpr std::uint64_t kDefaultSetCap = 1u << 20;
/// Largest space build_*_chain accepts (kernels are kept for oracle use only).
inline constexpr std::size_t kDefaultKernelCap = 20'000;

/// All of [k]^V. Throws CapExceeded if k^n > cap.
StateSpace enumerate_all_colorings(const Graph& g, int k,
                                   std::uint64_t cap = kDefaultColoringCap);
/// Proper colorings by backtracking; throws CapExceeded past `cap` states.
StateSpace enumerate_proper_colorings(const Graph& g, int k,
                                      std::uint64_t cap = kDefaultColoringCap);
/// All independent sets including the empty set; n <= 64.
StateSpace enumerate_independent_sets(const Graph& g,
                                      std::uint64_t cap = kDefaultSetCap);

struct KernelEntry {
  std::size_t to;
  Rational probability;
  double value;
};

using Distribution = std::vector<double>;

/// Enumerated chain: sparse rows (ascending `to`), exact and binary64.
/// pi is uniform over proper colorings, or the Gibbs law lambda^|X| / Z.
struct ExactChain {
  StateSpace space;
  std::vector<std::vector<KernelEntry>> rows;
  std::vector<Rational> pi_exact;
  Distribution pi;
};

/// Heat-bath kernel on a coloring space (all or proper). Throws
/// VerificationFailure if rows do not sum to 1 or pi is not invariant
/// (both to 1e-12).
ExactChain build_coloring_chain(const Graph& g, StateSpace space,
                                std::size_t cap = kDefaultKernelCap);
ExactChain build_hardcore_chain(const Graph& g, StateSpace space,
                                const Rational& lambda,
                                std::size_t cap = kDefaultKernelCap);

/// Gibbs law lambda^|X| / Z over an independent-set space; lambda = 0 gives
/// the point mass at the empty set.
std::vector<Rational> gibbs_distribution(const StateSpace& space,
                                         const Rational& lambda);

double tv_distance(std::span<const double> a, std::span<const double> b);
Rational tv_distance(std::span<const Rational> a, std::span<const Rational> b);

Distribution point_mass(std::size_t size, std::size_t at);
Distribution to_doubles(std::span<const Rational> d);

/// start * P (one application, fixed summation order).
Distribution apply_kernel(const ExactChain& chain, std::span<const double> d);
std::vector<Rational> apply_kernel(const ExactChain& chain,
                                   std::span<const Rational> d);
/// start * P^steps.
Distribution distribution_after(const ExactChain& chain,
                                std::span<const double> start,
                                std::size_t steps);

/// tv(start P^t, pi) for t = 0..steps.
std::vector<double> decay_curve(const ExactChain& chain,
                                std::span<const double> start,
                                std::size_t steps);

/// Throws NonErgodic unless the support of pi is a single closed
/// communicating class.
void require_ergodic_support(const ExactChain& chain);

/// Least T with max over point-mass starts in supp(pi) of
/// tv(delta_x P^T, pi) <= delta. Throws VerificationFailure if no such
/// T <= max_steps exists.
std::size_t exact_mixing_time(const ExactChain& chain, double delta,
                              std::size_t max_steps = 1'000'000);

/// Worst-start TV curve, t = 0..steps.
std::vector<double> worst_case_decay(const ExactChain& chain,
                                     std::size_t steps);

/// Z(G, lambda) = sum over independent sets of lambda^|X|.
Rational partition_function(const Graph& g, const Rational& lambda,
                            std::uint64_t cap = kDefaultSetCap);

/// Sum_i |(pi P)_i - pi_i| == 0 and row sums, checked exactly.
bool verify_stationary_exact(const ExactChain& chain);
/// pi(x) P(x, y) == pi(y) P(y, x) for every entry, exactly.
bool verify_detailed_balance_exact(const ExactChain& chain);

/// "i j p" per nonzero, p printed with 17 significant digits.
void write_kernel_triples(std::ostream& out, const ExactChain& chain);

}  // namespace mixing
