#include "afsi/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "afsi/simd.hpp"

namespace afsi {

Vec3 minmod_slope(const Vec3& w_left, const Vec3& w_center, const Vec3& w_right,
                  double theta, double dx) {
  Vec3 out;
  const double inv_dx = 1.0 / dx;
  const double half = 0.5 * inv_dx;
  for (std::size_t k = 0; k < 3; ++k) {
    out[k] = simd::minmod(theta * (w_center[k] - w_left[k]) * inv_dx,
                          (w_right[k] - w_left[k]) * half,
                          theta * (w_right[k] - w_center[k]) * inv_dx);
  }
  return out;
}

namespace {

PrimState shifted(const PrimState& V, const Vec3& slope, double offset) {
  return {V.rho + offset * slope[0], V.u + offset * slope[1], V.p + offset * slope[2]};
}

// Fills slopes (s = -1..N+1) and point values (j = 0..N+1) from the padded
// staggered array; returns the number of positivity fallbacks.
std::size_t reconstruct_into(std::span<const PrimState> vpad, double theta, double dx,
                             std::span<Vec3> slopes, std::span<PrimState> v_minus,
                             std::span<PrimState> v_plus) {
  const std::size_t n_slopes = vpad.size() - 2;  // N + 3
  const std::size_t n_points = vpad.size() - 3;  // N + 2
  simd::kernels().generalized_minmod(as_doubles(slopes.first(n_slopes)), as_doubles(vpad), 3,
                                     theta, 1.0 / dx);
  const double half_dx = 0.5 * dx;
  std::size_t fallbacks = 0;
  for (std::size_t k = 0; k < n_slopes; ++k) {
    const PrimState& V = vpad[k + 1];
    if (!is_admissible(shifted(V, slopes[k], half_dx)) ||
        !is_admissible(shifted(V, slopes[k], -half_dx))) {
      slopes[k] = Vec3{};
      ++fallbacks;
    }
  }
  for (std::size_t j = 0; j < n_points; ++j) {
    // point j lies between staggered j-1 (slope index j) and j (slope index j+1)
    v_minus[j] = shifted(vpad[j + 1], slopes[j], half_dx);
    v_plus[j] = shifted(vpad[j + 2], slopes[j + 1], -half_dx);
  }
  return fallbacks;
}

inline LocalSpeeds speeds_unchecked(const PrimState& vm, const PrimState& vp, double gamma) {
  const double cm = sound_speed(vm, gamma);
  const double cp = sound_speed(vp, gamma);
  return {std::max({vm.u + cm, vp.u + cp, 0.0}), std::min({vm.u - cm, vp.u - cp, 0.0})};
}

inline PointFlux point_flux_unchecked(const PrimState& vm, const PrimState& vp, double ap,
                                      double am, double gamma, double threshold) {
  const Vec3 fm = prim_flux(vm);
  const Vec3 fp = prim_flux(vp);
  const double width = ap - am;
  if (!(width >= threshold) || width <= 0.0) return {0.5 * (fm + fp), Vec3{}};
  const Vec3 jump = vp.vec() - vm.vec();
  const double inv = 1.0 / width;
  PointFlux out;
  for (std::size_t k = 0; k < 3; ++k)
    out.ftilde[k] = (ap * fm[k] - am * fp[k]) * inv + (ap * am * inv) * jump[k];
  const PrimState mid{0.5 * (vm.rho + vp.rho), 0.5 * (vm.u + vp.u), 0.5 * (vm.p + vp.p)};
  out.b_psi = nonconservative_product(mid, jump, gamma);
  return out;
}

[[noreturn]] void fail(const std::string& what, std::ptrdiff_t cell) {
  throw SolverError(what, cell, "rhs");
}

}  // namespace

Reconstruction reconstruct_point_values(std::span<const PrimState> vbar_padded, double theta,
                                        double dx) {
  if (vbar_padded.size() < 2 * kGhosts + 2)
    throw std::invalid_argument("reconstruct_point_values: padded array too short");
  Reconstruction r;
  r.slopes.resize(vbar_padded.size() - 2);
  std::vector<PrimState> vm(vbar_padded.size() - 3), vp(vbar_padded.size() - 3);
  r.slope_fallbacks = reconstruct_into(vbar_padded, theta, dx, r.slopes, vm, vp);
  r.points.resize(vm.size());
  for (std::size_t j = 0; j < vm.size(); ++j) r.points[j] = {vm[j], vp[j]};
  return r;
}

LocalSpeeds local_speeds(const PrimState& v_minus, const PrimState& v_plus, const GasModel& g) {
  validate(v_minus);
  validate(v_plus);
  return speeds_unchecked(v_minus, v_plus, g.gamma);
}

PointFlux pccu_point_flux(const PrimState& v_minus, const PrimState& v_plus, double a_plus,
                          double a_minus, const GasModel& g, double degeneracy_threshold) {
  validate(v_minus);
  validate(v_plus);
  return point_flux_unchecked(v_minus, v_plus, a_plus, a_minus, g.gamma, degeneracy_threshold);
}

Vec3 conservative_interface_flux(const PrimState& vbar, const GasModel& g) {
  return cons_flux(prim_to_cons(vbar, g), g);
}

void RhsWorkspace::resize(std::size_t n) {
  vpad.resize(n + 1 + 2 * kGhosts);
  slopes.resize(n + 3);
  for (auto* v : {&ftilde, &b_psi}) v->resize(n + 2);
  for (auto* v : {&w_plus, &w_minus, &a_plus, &a_minus}) v->resize(n + 2);
  v_minus.resize(n + 2);
  v_plus.resize(n + 2);
  flux.resize(n + 1);
}

void compute_rhs(const DualSolution& sol, const OverlapGrid& grid, const GasModel& g,
                 double theta, DualRhs& out, RhsWorkspace& ws) {
  check_shape(sol, grid);
  const std::size_t n = grid.n_cells();
  const double dx = grid.dx();
  const double inv_dx = 1.0 / dx;
  const double gamma = g.gamma;
  ws.resize(n);
  out.d_ubar.resize(n);
  out.d_vbar.resize(n + 1);

  for (std::size_t s = 0; s <= n; ++s) {
    if (!is_admissible(sol.vbar[s])) {
      std::ostringstream os;
      os.precision(17);
      os << "staggered average " << s << " is inadmissible (rho=" << sol.vbar[s].rho
         << ", u=" << sol.vbar[s].u << ", p=" << sol.vbar[s].p << ")";
      fail(os.str(), static_cast<std::ptrdiff_t>(s));
    }
  }

  pad_staggered(std::span<const PrimState>(sol.vbar), grid.bc(), ws.vpad);
  out.slope_fallbacks = reconstruct_into(ws.vpad, theta, dx, ws.slopes, ws.v_minus, ws.v_plus);

  const std::size_t n_points = n + 2;
  double max_speed = 0.0;
  for (std::size_t j = 0; j < n_points; ++j) {
    const LocalSpeeds a = speeds_unchecked(ws.v_minus[j], ws.v_plus[j], gamma);
    ws.a_plus[j] = a.a_plus;
    ws.a_minus[j] = a.a_minus;
    max_speed = std::max({max_speed, a.a_plus, -a.a_minus});
  }
  if (!std::isfinite(max_speed)) fail("non-finite local speed", -1);
  const double threshold = kDegeneracyRatio * max_speed;

  for (std::size_t j = 0; j < n_points; ++j) {
    const double ap = ws.a_plus[j], am = ws.a_minus[j];
    const PointFlux pf =
        point_flux_unchecked(ws.v_minus[j], ws.v_plus[j], ap, am, gamma, threshold);
    ws.ftilde[j] = pf.ftilde;
    ws.b_psi[j] = pf.b_psi;
    const double width = ap - am;
    if (width >= threshold && width > 0.0) {
      ws.w_plus[j] = ap / width;
      ws.w_minus[j] = am / width;
    } else {
      ws.w_plus[j] = 0.0;
      ws.w_minus[j] = 0.0;
    }
  }

  for (std::size_t s = 0; s <= n; ++s) {
    // staggered s is bounded by points s (left) and s+1 (right)
    const PrimState& V = sol.vbar[s];
    const Vec3 in_cell = nonconservative_product(V, dx * ws.slopes[s + 1], gamma);
    Vec3& d = out.d_vbar[s];
    for (std::size_t k = 0; k < 3; ++k) {
      const double bracket = ws.ftilde[s + 1][k] - ws.ftilde[s][k] - in_cell[k] -
                             ws.w_plus[s] * ws.b_psi[s][k] +
                             ws.w_minus[s + 1] * ws.b_psi[s + 1][k];
      d[k] = -bracket * inv_dx;
    }
    ws.flux[s] = conservative_interface_flux(V, g);
  }

  for (std::size_t i = 0; i < n; ++i) out.d_ubar[i] = -(ws.flux[i + 1] - ws.flux[i]) * inv_dx;
  out.flux_left = ws.flux[0];
  out.flux_right = ws.flux[n];
}

DualRhs compute_rhs(const DualSolution& sol, const OverlapGrid& grid, const GasModel& g,
                    double theta) {
  RhsWorkspace ws;
  DualRhs out;
  compute_rhs(sol, grid, g, theta, out, ws);
  return out;
}

}  // namespace afsi
