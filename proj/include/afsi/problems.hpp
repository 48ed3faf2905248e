#pragma once
// Benchmark registry and initial-data averaging.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afsi/euler.hpp"
#include "afsi/grid.hpp"
#include "afsi/indicator.hpp"
#include "afsi/riemann.hpp"

namespace afsi {

struct ProblemSpec {
  std::string name;
  double x_min = 0.0;
  double x_max = 1.0;
  Boundary bc = Boundary::outflow;
  double gamma = 1.4;
  double t_end = 0.0;
  double k = 1.0;      // rough/smooth threshold constant
  double c_ref = 1.0;  // reference-line constant for C dx^2
  AlphaSelector alpha = AlphaSelector::momentum;

  /// Pointwise initial primitive data, defined for every x in the domain.
  std::function<PrimState(double)> initial;
  /// Discontinuities of `initial`; quadrature is split there.
  std::vector<double> breakpoints;

  /// Optional closed-form averages of the exact solution over [a, b] at time t.
  std::function<ConsState(double a, double b, double t)> exact_cons_average;
  std::function<PrimState(double a, double b, double t)> exact_prim_average;
  /// Optional pointwise exact solution.
  std::function<PrimState(double x, double t)> exact;
  std::optional<RiemannProblem> riemann;

  /// Physical interval known to stay smooth up to t_end, if any.
  std::optional<std::pair<double, double>> smooth_window;

  void validate() const;
};

class UnknownProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> problem_names();

/// Throws UnknownProblem listing the valid names.
ProblemSpec registry_lookup(std::string_view name);

/// Cell averages of the initial data on both grids. Staggered cells that
/// straddle the domain ends use the boundary extension (periodic wrap,
/// mirror for reflective walls).
DualSolution initialize(const ProblemSpec& spec, const OverlapGrid& grid, const GasModel& g);

/// Average of f over [a, b] with 3-point Gauss-Legendre on each piece
/// between consecutive breakpoints.
template <class F>
auto gauss_average(F&& f, double a, double b, const std::vector<double>& breakpoints) {
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  constexpr double kNode = 0.7745966692414834;  // sqrt(3/5)
  constexpr double kW0 = 8.0 / 9.0, kW1 = 5.0 / 9.0;
  using Result = decltype(f(a));
  Result sum{};
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    sum += (half * kW1) * f(mid - half * kNode);
    sum += (half * kW0) * f(mid);
    sum += (half * kW1) * f(mid + half * kNode);
  }
  return (1.0 / (b - a)) * sum;
}

/// Cell indices (0-based, inclusive) of primary cells whose centres fall in [a, b].
std::pair<std::size_t, std::size_t> cells_in(const OverlapGrid& grid, double a, double b);

}  // namespace afsi
