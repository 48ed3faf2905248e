#include "afsi/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace afsi {

void ProblemSpec::validate() const {
  if (!(t_end > 0.0)) throw std::invalid_argument("ProblemSpec " + name + ": t_end must be positive");
  if (!(x_max > x_min)) throw std::invalid_argument("ProblemSpec " + name + ": empty domain");
  if (!initial) throw std::invalid_argument("ProblemSpec " + name + ": missing initial data");
  if (!(k > 0.0)) throw std::invalid_argument("ProblemSpec " + name + ": k must be positive");
}

namespace {

ProblemSpec shock_entropy() {
  ProblemSpec p;
  p.name = "shock-entropy";
  p.x_min = -5.0;
  p.x_max = 5.0;
  p.bc = Boundary::outflow;
  p.t_end = 1.8;
  p.k = 1.0;
  p.c_ref = 0.01;
  p.initial = [](double x) -> PrimState {
    if (x < -4.0) return {3.857143, 2.629369, 10.33333};
    return {1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0};
  };
  p.breakpoints = {-4.0};
  p.smooth_window = std::pair{-2.0, 0.0};
  return p;
}

ProblemSpec shock_density() {
  ProblemSpec p;
  p.name = "shock-density";
  p.x_min = -5.0;
  p.x_max = 5.0;
  p.bc = Boundary::outflow;
  p.t_end = 5.0;
  p.k = 6.0;
  p.c_ref = 0.2;
  p.initial = [](double x) -> PrimState {
    if (x < -4.5) return {1.515695, 0.523346, 1.805};
    return {1.0 + 0.1 * std::sin(20.0 * std::numbers::pi * x), 0.0, 1.0};
  };
  p.breakpoints = {-4.5};
  p.smooth_window = std::pair{-4.0, -2.0};
  return p;
}

ProblemSpec blast() {
  ProblemSpec p;
  p.name = "blast";
  p.x_min = 0.0;
  p.x_max = 1.0;
  p.bc = Boundary::reflective;
  p.t_end = 0.038;
  p.k = 1.2;
  p.c_ref = 200.0;
  p.initial = [](double x) -> PrimState {
    if (x < 0.1) return {1.0, 0.0, 1000.0};
    if (x < 0.9) return {1.0, 0.0, 0.01};
    return {1.0, 0.0, 100.0};
  };
  p.breakpoints = {0.1, 0.9};
  return p;
}

ProblemSpec sod() {
  ProblemSpec p;
  p.name = "sod";
  p.x_min = 0.0;
  p.x_max = 1.0;
  p.bc = Boundary::outflow;
  p.t_end = 0.2;
  p.k = 1.0;
  p.c_ref = 1.0;
  const RiemannProblem rp{{1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 1.4, 0.5};
  p.riemann = rp;
  p.initial = [rp](double x) { return x < rp.diaphragm ? rp.left : rp.right; };
  p.breakpoints = {rp.diaphragm};
  const StarRegion star = solve_star_region(rp);
  p.exact = [rp, star](double x, double t) { return exact_riemann_at(rp, star, x, t); };
  // inside the rarefaction fan at t = 0.2
  p.smooth_window = std::pair{0.3, 0.45};
  return p;
}

ProblemSpec smooth_wave() {
  ProblemSpec p;
  p.name = "smooth-wave";
  p.x_min = 0.0;
  p.x_max = 2.0;
  p.bc = Boundary::periodic;
  p.t_end = 2.0;
  p.k = 1.0;
  p.c_ref = 1.0;
  constexpr double pi = std::numbers::pi;
  p.initial = [](double x) -> PrimState { return {1.0 + 0.2 * std::sin(pi * x), 1.0, 1.0}; };
  auto density_average = [](double a, double b, double t) {
    return 1.0 + 0.2 * (std::cos(pi * (a - t)) - std::cos(pi * (b - t))) / (pi * (b - a));
  };
  const double gamma = p.gamma;
  p.exact_cons_average = [density_average, gamma](double a, double b, double t) {
    const double rho = density_average(a, b, t);
    return ConsState{rho, rho, 1.0 / (gamma - 1.0) + 0.5 * rho};
  };
  p.exact_prim_average = [density_average](double a, double b, double t) {
    return PrimState{density_average(a, b, t), 1.0, 1.0};
  };
  p.exact = [](double x, double t) -> PrimState {
    return {1.0 + 0.2 * std::sin(pi * (x - t)), 1.0, 1.0};
  };
  p.smooth_window = std::pair{0.0, 2.0};
  return p;
}

}  // namespace

std::vector<std::string> problem_names() {
  return {"shock-entropy", "shock-density", "blast", "sod", "smooth-wave"};
}

ProblemSpec registry_lookup(std::string_view name) {
  if (name == "shock-entropy") return shock_entropy();
  if (name == "shock-density") return shock_density();
  if (name == "blast") return blast();
  if (name == "sod") return sod();
  if (name == "smooth-wave") return smooth_wave();
  std::ostringstream os;
  os << "unknown problem '" << name << "'; valid names:";
  for (const auto& n : problem_names()) os << ' ' << n;
  throw UnknownProblem(os.str());
}

DualSolution initialize(const ProblemSpec& spec, const OverlapGrid& grid, const GasModel& g) {
  spec.validate();
  const std::size_t n = grid.n_cells();
  const double dx = grid.dx();
  const double x0 = grid.x_min(), x1 = grid.x_max();
  const double period = x1 - x0;

  auto extended = [&](double x) -> PrimState {
    switch (grid.bc()) {
      case Boundary::periodic:
        if (x < x0) x += period;
        if (x > x1) x -= period;
        return spec.initial(x);
      case Boundary::reflective: {
        if (x < x0) {
          const PrimState V = spec.initial(2.0 * x0 - x);
          return {V.rho, -V.u, V.p};
        }
        if (x > x1) {
          const PrimState V = spec.initial(2.0 * x1 - x);
          return {V.rho, -V.u, V.p};
        }
        return spec.initial(x);
      }
      case Boundary::outflow:
        break;
    }
    return spec.initial(x);
  };

  std::vector<double> cuts = spec.breakpoints;
  cuts.push_back(x0);
  cuts.push_back(x1);
  if (grid.bc() == Boundary::reflective) {
    for (double b : spec.breakpoints) {
      cuts.push_back(2.0 * x0 - b);
      cuts.push_back(2.0 * x1 - b);
    }
  }

  DualSolution sol;
  sol.ubar.resize(n);
  sol.vbar.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = x0 + static_cast<double>(i) * dx, b = a + dx;
    if (spec.exact_cons_average) {
      sol.ubar[i] = spec.exact_cons_average(a, b, 0.0);
    } else {
      sol.ubar[i] = ConsState::from(gauss_average(
          [&](double x) { return prim_to_cons(extended(x), g).vec(); }, a, b, cuts));
    }
  }
  for (std::size_t s = 0; s <= n; ++s) {
    const double c = grid.staggered_center(s);
    const double a = c - 0.5 * dx, b = c + 0.5 * dx;
    if (spec.exact_prim_average) {
      sol.vbar[s] = spec.exact_prim_average(a, b, 0.0);
    } else {
      sol.vbar[s] = PrimState::from(gauss_average([&](double x) { return extended(x).vec(); }, a, b, cuts));
    }
  }
  if (grid.bc() == Boundary::periodic) sol.vbar[n] = sol.vbar[0];
  sol.time = 0.0;
  return sol;
}

std::pair<std::size_t, std::size_t> cells_in(const OverlapGrid& grid, double a, double b) {
  const double dx = grid.dx();
  const auto n = static_cast<double>(grid.n_cells());
  double first = std::ceil((a - grid.x_min()) / dx - 0.5);
  double last = std::floor((b - grid.x_min()) / dx - 0.5);
  first = std::clamp(first, 0.0, n - 1.0);
  last = std::clamp(last, 0.0, n - 1.0);
  if (last < first) throw std::invalid_argument("cells_in: window contains no cell centres");
  return {static_cast<std::size_t>(first), static_cast<std::size_t>(last)};
}

}  // namespace afsi
