#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mixing {

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0;
  double hi = 0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  double width() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The interval map I -> g(I) +- theta with g(x) = exp(-C x).
struct PerturbedMap {
  double C = 1;
  double theta = 0;
};

/// Throws InvalidArgument unless 0 < C <= e and theta >= 0.
void validate(const PerturbedMap& m);

/// Unique fixed point of x -> exp(-C x), bisection on [0, 1] to 1e-12.
double solve_mu(double C);

/// Root of x = exp(1/x) in [1.5, 2], bisection to 1e-12 (= 1 / solve_mu(1)).
double solve_alpha();

struct Observation45 {
  double C = 0;      ///< (1 - zeta) e
  double mu = 0;
  double bound = 0;  ///< (1 - zeta/2) / C
  bool holds = false;
};

/// zeta in (0, 1).
Observation45 observation45_check(double zeta);

/// g is decreasing, so g([a, b]) = [exp(-C b), exp(-C a)]; both ends are then
/// widened by theta. No clamping.
Interval apply_h(const PerturbedMap& m, Interval interval);
Interval iterate_h(const PerturbedMap& m, Interval interval, std::size_t times);

/// ceil((4 / zeta) ln(1 + 1/xi)).
std::size_t lemma46_steps(double zeta, double xi);

struct ContainmentRun {
  double mu = 0;
  double theta = 0;                ///< xi zeta / (8 C)
  std::size_t t_bound = 0;
  std::size_t t_actual = 0;
  bool within_bound = false;
  bool hypothesis = false;  ///< 1 <= C <= (1 - zeta) e
  std::vector<Interval> trajectory;  ///< h^t([0, 1]) for t = 0..t_actual
};

/// Iterates h from [0, 1] until the image lies in [mu - xi, mu + xi].
/// Requires 0 < C <= e, zeta in (0, 1), xi > 0. Cells outside
/// 1 <= C <= (1 - zeta) e still run and are flagged via `hypothesis`.
/// Throws VerificationFailure if containment needs more than 10 t_bound
/// steps.
ContainmentRun iterate_until_contained(double C, double zeta, double xi);

/// The interval I(x) = [mu - x/C, mu - ln(1 - x)/C] used to track
/// contraction; x in [0, 1).
Interval tracking_interval(double C, double mu, double x);

struct ContractionStepCheck {
  bool lower_ok = false;  ///< mu x + theta <= x (1 - zeta/4) / C
  bool upper_ok = false;  ///< mu (e^x - 1) + theta <= -ln(1 - x (1 - zeta/4)) / C
  bool inclusion = false;  ///< h(I(x)) inside I(x (1 - zeta/4)), computed directly
};

ContractionStepCheck contraction_step_check(double C, double zeta, double xi,
                                            double x);

/// Every value lies in h^t([0, 1]).
bool envelope_check(std::span<const double> values, const PerturbedMap& m,
                    std::size_t t);

/// x_0 .. x_steps under x -> exp(-C x).
std::vector<double> period2_demo(double C, double x0, std::size_t steps);

struct SweepRow {
  double C = 0;
  double zeta = 0;
  double xi = 0;
  std::size_t t_bound = 0;
  std::size_t t_actual = 0;
  bool contained = false;  ///< t_actual <= t_bound
  bool hypothesis = false;
};

/// For each (zeta, xi) runs C in {1, (1 + (1 - zeta) e) / 2, (1 - zeta) e}.
std::vector<SweepRow> lemma46_sweep(std::span<const double> zetas,
                                    std::span<const double> xis);

}  // namespace mixing
