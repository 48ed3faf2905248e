#pragma once
// SSP-RK3 (Shu-Osher form) advance of the dual ODE system with a CFL step.

#include <cstddef>
#include <functional>
#include <span>

#include "afsi/euler.hpp"
#include "afsi/grid.hpp"
#include "afsi/scheme.hpp"

namespace afsi {

inline constexpr double kDefaultCfl = 0.25;

struct StepControl {
  double cfl = kDefaultCfl;
  double t_end = 0.0;
  std::size_t max_steps = 10'000'000;

  void validate() const;
};

/// Largest |u| + c over all primary (converted) and staggered averages.
double max_wave_speed(const DualSolution& sol, const GasModel& g);

/// cfl * dx / S, clipped so that sol.time + dt does not pass t_end.
double compute_dt(const DualSolution& sol, const OverlapGrid& grid, const GasModel& g,
                  double cfl, double t_end);

/// Per-step bookkeeping returned by the stepper.
struct StepReport {
  Vec3 boundary_flux_integral;  // integral over the step of F(x_max) - F(x_min)
  std::size_t slope_fallbacks = 0;
};

class Ssprk3Stepper {
 public:
  Ssprk3Stepper(const OverlapGrid& grid, const GasModel& gas, double theta);

  /// Advances `sol` by dt in place (time included). Throws SolverError with
  /// the failing RK stage on inadmissible intermediate states.
  StepReport step(DualSolution& sol, double dt);

 private:
  const OverlapGrid& grid_;
  GasModel gas_;
  double theta_;
  RhsWorkspace ws_;
  DualRhs rhs_;
  DualSolution stage_;
};

/// One Shu-Osher SSP-RK3 step of y' = f(y) on a flat array, built from the
/// same kernels as the dual stepper. `work` must match y in length.
using FlatRhs = std::function<void(std::span<const double> y, std::span<double> dydt)>;
void ssprk3_flat(std::span<double> y, std::span<double> work, double dt, const FlatRhs& f);

/// Value-returning convenience wrapper around Ssprk3Stepper.
DualSolution ssprk3_step(const DualSolution& sol, const OverlapGrid& grid, const GasModel& g,
                         double theta, double dt);

}  // namespace afsi
