#include "afsi/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "afsi/simd.hpp"

namespace afsi {

std::string_view to_string(Gate g) { return g == Gate::flagged ? "flagged" : "everywhere"; }

Gate parse_gate(std::string_view name) {
  if (name == "everywhere") return Gate::everywhere;
  if (name == "flagged") return Gate::flagged;
  throw std::invalid_argument("unknown gate: " + std::string(name) + " (expected everywhere|flagged)");
}

void CouplingConfig::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("CouplingConfig: beta must be in [0, 1]");
  if (!(theta >= 1.0 && theta <= 2.0)) throw std::invalid_argument("CouplingConfig: theta must be in [1, 2]");
}

ActiveSets active_sets(const std::vector<bool>& flags, Boundary bc) {
  const std::size_t n = flags.size();
  ActiveSets a{std::vector<bool>(n, false), std::vector<bool>(n + 1, false)};
  const bool periodic = bc == Boundary::periodic;
  auto flagged = [&](std::ptrdiff_t i) {
    if (periodic) i = (i + static_cast<std::ptrdiff_t>(n)) % static_cast<std::ptrdiff_t>(n);
    return i >= 0 && i < static_cast<std::ptrdiff_t>(n) && flags[static_cast<std::size_t>(i)];
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    a.primary[i] = flagged(k - 1) || flagged(k) || flagged(k + 1);
  }
  for (std::size_t s = 0; s <= n; ++s) {
    const auto k = static_cast<std::ptrdiff_t>(s);
    a.staggered[s] = flagged(k - 1) || flagged(k);
  }
  return a;
}

namespace {

[[noreturn]] void fail(const char* what, std::size_t cell, const PrimState& V) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": inadmissible state at cell " << cell << " (rho=" << V.rho << ", u=" << V.u
     << ", p=" << V.p << ")";
  throw SolverError(os.str(), static_cast<std::ptrdiff_t>(cell), "postprocess");
}

PrimState admit(const PrimState& V, const GasModel& g, const char* what, std::size_t cell) {
  if (is_admissible(V)) return V;
  if (g.positivity_floor && std::isfinite(V.rho) && std::isfinite(V.u) && std::isfinite(V.p)) {
    const double f = *g.positivity_floor;
    return {std::max(V.rho, f), V.u, std::max(V.p, f)};
  }
  fail(what, cell, V);
}

}  // namespace

std::vector<PrimState> staggered_projection(const DualSolution& sol, const OverlapGrid& grid,
                                            const GasModel& g, double theta) {
  check_shape(sol, grid);
  const std::size_t n = grid.n_cells();
  std::vector<ConsState> upad(n + 2 * kGhosts);
  pad_primary(sol.ubar, grid.bc(), upad);
  std::vector<Vec3> slopes(n + 2 * kGhosts);
  // slopes for primary i = -1..N, padded indices 1..N+2
  simd::kernels().generalized_minmod(as_doubles(std::span<Vec3>(slopes).subspan(1, n + 2)),
                                     as_doubles(std::span<const ConsState>(upad)), 3, theta,
                                     1.0 / grid.dx());
  const std::vector<ConsState> proj = project_primary_to_staggered(upad, slopes, grid.dx());
  std::vector<PrimState> out(n + 1);
  for (std::size_t s = 0; s <= n; ++s) {
    try {
      ConsState U = proj[s];
      if (!(U.rho > 0.0 && U.E - 0.5 * U.mom * U.mom / U.rho > 0.0)) {
        // limited slopes overshoot: fall back to the mean of the two overlapped cells
        U = ConsState::from(0.5 * (upad[s + kGhosts - 1].vec() + upad[s + kGhosts].vec()));
      }
      out[s] = cons_to_prim(U, g);
    } catch (const InvalidState& e) {
      throw SolverError(std::string("projection of conservative field: ") + e.what() +
                            " at staggered cell " + std::to_string(s),
                        static_cast<std::ptrdiff_t>(s), "postprocess");
    }
  }
  return out;
}

std::vector<PrimState> couple_v_to_u(const DualSolution& sol, const OverlapGrid& grid,
                                     const GasModel& g, double theta,
                                     const std::vector<bool>* staggered_mask) {
  const std::size_t n = grid.n_cells();
  const std::vector<PrimState> target = staggered_projection(sol, grid, g, theta);

  std::vector<Vec3> residual(n + 1);
  for (std::size_t s = 0; s <= n; ++s) residual[s] = sol.vbar[s].vec() - target[s].vec();
  std::vector<Vec3> rpad(n + 1 + 2 * kGhosts);
  pad_staggered(std::span<const Vec3>(residual), grid.bc(), rpad);

  std::vector<Vec3> kept(n + 1);
  simd::kernels().minmod_stencil(as_doubles(std::span<Vec3>(kept)),
                                 as_doubles(std::span<const Vec3>(rpad).subspan(1, n + 3)), 3);

  std::vector<PrimState> out(sol.vbar);
  for (std::size_t s = 0; s <= n; ++s) {
    if (staggered_mask != nullptr && !(*staggered_mask)[s]) continue;
    out[s] = admit(PrimState::from(target[s].vec() + kept[s]), g, "couple_v_to_u", s);
  }
  return out;
}

std::vector<ConsState> smooth_u_conservatively(const DualSolution& sol, const OverlapGrid& grid,
                                               const GasModel& g, double beta,
                                               const std::vector<bool>* staggered_mask) {
  check_shape(sol, grid);
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must be in [0, 1]");
  const std::size_t n = grid.n_cells();
  std::vector<ConsState> out(sol.ubar);
  if (beta == 0.0) return out;

  // Discrepancy between each conservative average and the state implied by
  // the two overlapping staggered averages, and a switch built from its
  // relative size: ~dx^4 where smooth, 1 at discontinuities.
  std::vector<Vec3> d(n);
  std::vector<double> sensor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PrimState& l = sol.vbar[i];
    const PrimState& r = sol.vbar[i + 1];
    const PrimState mid{0.5 * (l.rho + r.rho), 0.5 * (l.u + r.u), 0.5 * (l.p + r.p)};
    const ConsState W = prim_to_cons(mid, g);
    const ConsState& U = sol.ubar[i];
    d[i] = U.vec() - W.vec();
    const double c = sound_speed(mid, g.gamma);
    const double delta = std::max({std::abs(d[i][0]) / mid.rho, std::abs(d[i][1]) / (mid.rho * c),
                                   std::abs(d[i][2]) / W.E});
    const double q = delta / kSmoothingScale;
    sensor[i] = std::min(1.0, q * q);
  }

  // Flux on primary interface s (centre of staggered cell s): diffusion of
  // the discrepancy where smooth, diffusion of U itself where rough. Domain
  // ends carry no flux unless periodic.
  auto admissible = [](const Vec3& U) {
    return U[0] > 0.0 && U[2] - 0.5 * U[1] * U[1] / U[0] > 1e-12 * std::abs(U[2]) &&
           std::isfinite(U[2]);
  };
  auto interface_flux = [&](std::size_t left, std::size_t right, std::size_t s) {
    if (staggered_mask != nullptr && !(*staggered_mask)[s]) return Vec3{};
    const double phi = std::max(sensor[left], sensor[right]);
    const Vec3 ul = sol.ubar[left].vec(), ur = sol.ubar[right].vec();
    // U diffusion alone keeps both half updates convex combinations (weight <= 1/2)
    const Vec3 rough = (-0.5 * beta * phi) * (ur - ul);
    Vec3 smooth = (-0.5 * beta * (1.0 - phi)) * (d[right] - d[left]);
    // each cell update is the mean of one half update per interface
    for (int k = 0; k < 40; ++k) {
      const Vec3 f = rough + smooth;
      if (admissible(ul - 2.0 * f) && admissible(ur + 2.0 * f)) return f;
      smooth *= 0.5;
    }
    return rough;
  };
  std::vector<Vec3> flux(n + 1);
  for (std::size_t s = 1; s < n; ++s) flux[s] = interface_flux(s - 1, s, s);
  if (grid.bc() == Boundary::periodic) {
    flux[0] = interface_flux(n - 1, 0, 0);
    flux[n] = flux[0];
  }

  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ConsState::from(sol.ubar[i].vec() - (flux[i + 1] - flux[i]));
    try {
      (void)cons_to_prim(out[i], g);
    } catch (const InvalidState& e) {
      throw SolverError(std::string("smooth_u_conservatively: ") + e.what() + " at cell " +
                            std::to_string(i),
                        static_cast<std::ptrdiff_t>(i), "postprocess");
    }
  }
  return out;
}

DualSolution apply_postprocess(const DualSolution& sol, const OverlapGrid& grid,
                               const GasModel& g, const CouplingConfig& cfg,
                               const std::vector<bool>* flags) {
  cfg.validate();
  check_shape(sol, grid);
  std::optional<ActiveSets> active;
  if (cfg.gate == Gate::flagged) {
    if (flags == nullptr || flags->size() != grid.n_cells())
      throw std::invalid_argument("apply_postprocess: gated mode needs one flag per cell");
    active = active_sets(*flags, grid.bc());
  }
  const std::vector<bool>* mask = active ? &active->staggered : nullptr;

  DualSolution out = sol;
  out.vbar = couple_v_to_u(sol, grid, g, cfg.theta, mask);
  out.ubar = smooth_u_conservatively(out, grid, g, cfg.beta, mask);
  return out;
}

}  // namespace afsi
