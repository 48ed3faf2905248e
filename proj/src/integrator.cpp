#include "afsi/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "afsi/simd.hpp"

namespace afsi {

void StepControl::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("StepControl: cfl must be in (0, 1]");
  if (!(t_end > 0.0)) throw std::invalid_argument("StepControl: t_end must be positive");
}

double max_wave_speed(const DualSolution& sol, const GasModel& g) {
  double s = 0.0;
  for (const ConsState& U : sol.ubar) {
    const PrimState V = cons_to_prim(U, g);
    s = std::max(s, std::abs(V.u) + sound_speed(V, g.gamma));
  }
  for (const PrimState& V : sol.vbar) {
    validate(V);
    s = std::max(s, std::abs(V.u) + sound_speed(V, g.gamma));
  }
  return s;
}

double compute_dt(const DualSolution& sol, const OverlapGrid& grid, const GasModel& g,
                  double cfl, double t_end) {
  const double speed = max_wave_speed(sol, g);
  if (!(speed > 0.0)) throw SolverError("compute_dt: zero wave speed", -1, "dt");
  double dt = cfl * grid.dx() / speed;
  if (sol.time + dt > t_end) dt = t_end - sol.time;
  return dt;
}

Ssprk3Stepper::Ssprk3Stepper(const OverlapGrid& grid, const GasModel& gas, double theta)
    : grid_(grid), gas_(gas), theta_(theta) {
  ws_.resize(grid.n_cells());
  stage_.ubar.resize(grid.n_cells());
  stage_.vbar.resize(grid.n_cells() + 1);
}

namespace {

struct Fields {
  std::span<double> u;
  std::span<double> v;
};

Fields flat(DualSolution& s) {
  return {as_doubles(std::span<ConsState>(s.ubar)), as_doubles(std::span<PrimState>(s.vbar))};
}

std::span<const double> flat(const std::vector<Vec3>& x) {
  return as_doubles(std::span<const Vec3>(x));
}

}  // namespace

StepReport Ssprk3Stepper::step(DualSolution& sol, double dt) {
  check_shape(sol, grid_);
  const auto& k = simd::kernels();
  StepReport report;
  int stage = 1;
  auto eval = [&](const DualSolution& s) {
    try {
      compute_rhs(s, grid_, gas_, theta_, rhs_, ws_);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " [RK stage " + std::to_string(stage) + "]",
                        e.cell(), "rk stage " + std::to_string(stage));
    }
    report.slope_fallbacks += rhs_.slope_fallbacks;
    return rhs_.flux_right - rhs_.flux_left;
  };

  const Fields s0 = flat(sol);
  const Fields s1 = flat(stage_);

  // s1 = s + dt L(s)
  Vec3 net = (1.0 / 6.0) * eval(sol);
  k.axpy(s1.u, s0.u, dt, flat(rhs_.d_ubar));
  k.axpy(s1.v, s0.v, dt, flat(rhs_.d_vbar));

  // s2 = 3/4 s + 1/4 (s1 + dt L(s1))
  stage = 2;
  net += (1.0 / 6.0) * eval(stage_);
  k.ssp_blend(s1.u, 0.75, s0.u, 0.25, s1.u, dt, flat(rhs_.d_ubar));
  k.ssp_blend(s1.v, 0.75, s0.v, 0.25, s1.v, dt, flat(rhs_.d_vbar));

  // s_new = 1/3 s + 2/3 (s2 + dt L(s2))
  stage = 3;
  net += (2.0 / 3.0) * eval(stage_);
  k.ssp_blend(s0.u, 1.0 / 3.0, s0.u, 2.0 / 3.0, s1.u, dt, flat(rhs_.d_ubar));
  k.ssp_blend(s0.v, 1.0 / 3.0, s0.v, 2.0 / 3.0, s1.v, dt, flat(rhs_.d_vbar));

  sol.time += dt;
  report.boundary_flux_integral = dt * net;
  return report;
}

void ssprk3_flat(std::span<double> y, std::span<double> work, double dt, const FlatRhs& f) {
  if (work.size() != y.size()) throw std::invalid_argument("ssprk3_flat: work size mismatch");
  const auto& k = simd::kernels();
  std::vector<double> d(y.size());
  f(y, d);
  k.axpy(work, y, dt, d);
  f(work, d);
  k.ssp_blend(work, 0.75, y, 0.25, work, dt, d);
  f(work, d);
  k.ssp_blend(y, 1.0 / 3.0, y, 2.0 / 3.0, work, dt, d);
}

DualSolution ssprk3_step(const DualSolution& sol, const OverlapGrid& grid, const GasModel& g,
                         double theta, double dt) {
  DualSolution out = sol;
  Ssprk3Stepper stepper(grid, g, theta);
  stepper.step(out, dt);
  return out;
}

}  // namespace afsi
