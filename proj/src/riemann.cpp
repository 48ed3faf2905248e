#include "afsi/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "afsi/grid.hpp"
#include "afsi/problems.hpp"

namespace afsi {

namespace {

struct WaveFunction {
  double f;
  double df;
};

// Toro's pressure function for one side: shock branch for p > p_k,
// rarefaction branch otherwise.
WaveFunction pressure_function(double p, const PrimState& k, double gamma) {
  const double c = std::sqrt(gamma * k.p / k.rho);
  if (p > k.p) {
    const double a = 2.0 / ((gamma + 1.0) * k.rho);
    const double b = (gamma - 1.0) / (gamma + 1.0) * k.p;
    const double q = std::sqrt(a / (p + b));
    return {(p - k.p) * q, q * (1.0 - 0.5 * (p - k.p) / (p + b))};
  }
  const double z = (gamma - 1.0) / (2.0 * gamma);
  const double ratio = p / k.p;
  return {2.0 * c / (gamma - 1.0) * (std::pow(ratio, z) - 1.0),
          std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma)) / (k.rho * c)};
}

}  // namespace

StarRegion solve_star_region(const RiemannProblem& rp) {
  const PrimState& L = rp.left;
  const PrimState& R = rp.right;
  const double g = rp.gamma;
  validate(L);
  validate(R);
  const double cl = std::sqrt(g * L.p / L.rho);
  const double cr = std::sqrt(g * R.p / R.rho);
  const double du = R.u - L.u;
  if (2.0 * cl / (g - 1.0) + 2.0 * cr / (g - 1.0) <= du)
    throw VacuumError("exact_riemann: initial data generate vacuum");

  auto total = [&](double p) {
    const WaveFunction a = pressure_function(p, L, g);
    const WaveFunction b = pressure_function(p, R, g);
    return WaveFunction{a.f + b.f + du, a.df + b.df};
  };

  // Two-rarefaction guess, kept inside a bisection bracket.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((cl + cr - 0.5 * (g - 1.0) * du) /
                          (cl / std::pow(L.p, z) + cr / std::pow(R.p, z)),
                      1.0 / z);
  double lo = 1e-14;
  double hi = 10.0 * std::max(L.p, R.p);
  while (total(hi).f < 0.0) hi *= 10.0;
  if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);

  StarRegion star;
  double residual = 0.0;
  for (int it = 1; it <= 100; ++it) {
    const WaveFunction w = total(p);
    residual = w.f;
    if (w.f > 0.0) hi = p; else lo = p;
    double next = p - w.f / w.df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-12) {
      star.iterations = it;
      star.p = p;
      const WaveFunction fl = pressure_function(p, L, g);
      const WaveFunction fr = pressure_function(p, R, g);
      star.u = 0.5 * (L.u + R.u) + 0.5 * (fr.f - fl.f);
      const double gr = (g - 1.0) / (g + 1.0);
      auto star_density = [&](const PrimState& k) {
        const double ratio = p / k.p;
        if (p > k.p) return k.rho * (ratio + gr) / (gr * ratio + 1.0);
        return k.rho * std::pow(ratio, 1.0 / g);
      };
      star.rho_left = star_density(L);
      star.rho_right = star_density(R);
      return star;
    }
  }
  std::ostringstream os;
  os << "exact_riemann: Newton iteration did not converge (residual " << residual << ")";
  throw RiemannNotConverged(os.str(), residual);
}

PrimState sample_riemann(const RiemannProblem& rp, const StarRegion& star, double xi) {
  const double g = rp.gamma;
  const PrimState& L = rp.left;
  const PrimState& R = rp.right;
  if (xi <= star.u) {
    const double cl = std::sqrt(g * L.p / L.rho);
    if (star.p > L.p) {
      const double s = L.u - cl * std::sqrt((g + 1.0) / (2.0 * g) * star.p / L.p + (g - 1.0) / (2.0 * g));
      return xi <= s ? L : PrimState{star.rho_left, star.u, star.p};
    }
    const double head = L.u - cl;
    const double c_star = cl * std::pow(star.p / L.p, (g - 1.0) / (2.0 * g));
    const double tail = star.u - c_star;
    if (xi <= head) return L;
    if (xi >= tail) return {star.rho_left, star.u, star.p};
    const double c = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * (L.u - xi));
    const double rho = L.rho * std::pow(c / cl, 2.0 / (g - 1.0));
    return {rho, 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * L.u + xi),
            L.p * std::pow(c / cl, 2.0 * g / (g - 1.0))};
  }
  const double cr = std::sqrt(g * R.p / R.rho);
  if (star.p > R.p) {
    const double s = R.u + cr * std::sqrt((g + 1.0) / (2.0 * g) * star.p / R.p + (g - 1.0) / (2.0 * g));
    return xi >= s ? R : PrimState{star.rho_right, star.u, star.p};
  }
  const double head = R.u + cr;
  const double c_star = cr * std::pow(star.p / R.p, (g - 1.0) / (2.0 * g));
  const double tail = star.u + c_star;
  if (xi >= head) return R;
  if (xi <= tail) return {star.rho_right, star.u, star.p};
  const double c = 2.0 / (g + 1.0) * (cr - 0.5 * (g - 1.0) * (R.u - xi));
  const double rho = R.rho * std::pow(c / cr, 2.0 / (g - 1.0));
  return {rho, 2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * R.u + xi),
          R.p * std::pow(c / cr, 2.0 * g / (g - 1.0))};
}

std::vector<PrimState> exact_riemann(const RiemannProblem& rp, std::span<const double> x_over_t) {
  const StarRegion star = solve_star_region(rp);
  std::vector<PrimState> out;
  out.reserve(x_over_t.size());
  for (double xi : x_over_t) out.push_back(sample_riemann(rp, star, xi));
  return out;
}

PrimState exact_riemann_at(const RiemannProblem& rp, const StarRegion& star, double x, double t) {
  if (!(t > 0.0)) return x < rp.diaphragm ? rp.left : rp.right;
  return sample_riemann(rp, star, (x - rp.diaphragm) / t);
}

std::vector<ConsState> llf_reference_solve(const ProblemSpec& spec, std::size_t n,
                                           double t_end_override) {
  const GasModel gas(spec.gamma);
  const OverlapGrid grid(n, spec.x_min, spec.x_max, spec.bc);
  const double t_end = t_end_override > 0.0 ? t_end_override : spec.t_end;
  std::vector<ConsState> u = initialize(spec, grid, gas).ubar;
  std::vector<ConsState> pad(n + 2 * kGhosts);
  std::vector<Vec3> flux(n + 1);
  std::vector<PrimState> prim(n + 2 * kGhosts);
  const double dx = grid.dx();
  double t = 0.0;
  while (t < t_end) {
    pad_primary(u, grid.bc(), pad);
    double smax = 0.0;
    for (std::size_t k = 0; k < pad.size(); ++k) {
      try {
        prim[k] = cons_to_prim(pad[k], gas);
      } catch (const InvalidState& e) {
        throw std::runtime_error(std::string("llf_reference_solve: ") + e.what());
      }
      smax = std::max(smax, std::abs(prim[k].u) + sound_speed(prim[k], gas.gamma));
    }
    double dt = 0.4 * dx / smax;
    if (t + dt > t_end) dt = t_end - t;
    for (std::size_t s = 0; s <= n; ++s) {
      // interface s between padded cells s+1 and s+2
      const ConsState& ul = pad[s + 1];
      const ConsState& ur = pad[s + 2];
      const PrimState& vl = prim[s + 1];
      const PrimState& vr = prim[s + 2];
      const double a = std::max(std::abs(vl.u) + sound_speed(vl, gas.gamma),
                                std::abs(vr.u) + sound_speed(vr, gas.gamma));
      const Vec3 fl{ul.mom, ul.mom * vl.u + vl.p, vl.u * (ul.E + vl.p)};
      const Vec3 fr{ur.mom, ur.mom * vr.u + vr.p, vr.u * (ur.E + vr.p)};
      flux[s] = 0.5 * (fl + fr) - (0.5 * a) * (ur.vec() - ul.vec());
    }
    for (std::size_t i = 0; i < n; ++i)
      u[i] = ConsState::from(u[i].vec() - (dt / dx) * (flux[i + 1] - flux[i]));
    t += dt;
  }
  return u;
}

}  // namespace afsi
