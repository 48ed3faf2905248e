#include <doctest.h>

#include <cmath>
#include <random>

#include "afsi/postprocess.hpp"
#include "afsi/problems.hpp"

using namespace afsi;

namespace {

const GasModel kGas(1.4);

DualSolution constant_field(std::size_t n, PrimState V) {
  DualSolution s;
  s.vbar.assign(n + 1, V);
  s.ubar.assign(n, prim_to_cons(V, kGas));
  return s;
}

Vec3 total(const std::vector<ConsState>& u) {
  Vec3 t{};
  for (const auto& c : u) t += c.vec();
  return t;
}

double max_abs(const Vec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

DualSolution random_field(std::mt19937_64& rng, std::size_t n, double lo) {
  std::uniform_real_distribution<double> pos(lo, 2.0), vel(-1.0, 1.0);
  DualSolution s;
  for (std::size_t i = 0; i < n; ++i) s.ubar.push_back(prim_to_cons({pos(rng), vel(rng), pos(rng)}, kGas));
  for (std::size_t i = 0; i <= n; ++i) s.vbar.push_back({pos(rng), vel(rng), pos(rng)});
  return s;
}

}  // namespace

TEST_CASE("gate and config parsing") {
  CHECK(parse_gate("flagged") == Gate::flagged);
  CHECK(to_string(Gate::everywhere) == "everywhere");
  CHECK_THROWS(parse_gate("rough"));
  CouplingConfig c;
  c.beta = 1.5;
  CHECK_THROWS(c.validate());
  c.beta = 0.5;
  c.theta = 0.5;
  CHECK_THROWS(c.validate());
}

TEST_CASE("active sets") {
  ActiveSets a = active_sets({false, false, true, false, false}, Boundary::outflow);
  CHECK(a.primary == std::vector<bool>{false, true, true, true, false});
  CHECK(a.staggered == std::vector<bool>{false, false, true, true, false, false});
  a = active_sets({true, false, false, false}, Boundary::periodic);
  CHECK(a.primary == std::vector<bool>{true, true, false, true});
  CHECK(a.staggered == std::vector<bool>{true, true, false, false, true});
}

TEST_CASE("consistent constant state is left alone") {
  for (Boundary bc : {Boundary::outflow, Boundary::periodic, Boundary::reflective}) {
    const OverlapGrid grid(16, 0, 1, bc);
    const DualSolution s = constant_field(16, {1.3, bc == Boundary::reflective ? 0.0 : 0.4, 0.7});
    const DualSolution out = apply_postprocess(s, grid, kGas, CouplingConfig{});
    for (std::size_t i = 0; i < 16; ++i) CHECK(max_abs(out.ubar[i].vec() - s.ubar[i].vec()) < 1e-14);
    for (std::size_t i = 0; i <= 16; ++i) CHECK(max_abs(out.vbar[i].vec() - s.vbar[i].vec()) < 1e-14);
  }
}

TEST_CASE("gated with no flags and beta = 0 are identities") {
  std::mt19937_64 rng(5);
  const OverlapGrid grid(12, 0, 1, Boundary::outflow);
  const DualSolution s = random_field(rng, 12, 0.5);
  CouplingConfig cfg;
  cfg.gate = Gate::flagged;
  const std::vector<bool> none(12, false);
  const DualSolution out = apply_postprocess(s, grid, kGas, cfg, &none);
  CHECK(out.ubar == s.ubar);
  CHECK(out.vbar == s.vbar);
  CHECK_THROWS(apply_postprocess(s, grid, kGas, cfg));

  CHECK(smooth_u_conservatively(s, grid, kGas, 0.0) == s.ubar);
}

TEST_CASE("isolated staggered residual is removed") {
  const OverlapGrid grid(10, 0, 1, Boundary::periodic);
  const PrimState V{1.0, 0.2, 1.0};
  DualSolution s = constant_field(10, V);
  s.vbar[5].rho += 0.3;
  const auto v = couple_v_to_u(s, grid, kGas, kDefaultTheta);
  CHECK(v[5].rho == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 0; i <= 10; ++i) CHECK(max_abs(v[i].vec() - V.vec()) < 1e-14);
}

TEST_CASE("sawtooth in U is damped by the smoothing") {
  // pure second difference: amplitude a -> a |1 - 2 beta| for either sensor branch
  for (double a : {1e-3, 0.1}) {
    for (double beta : {0.25, 0.5}) {
      const OverlapGrid grid(20, 0, 1, Boundary::periodic);
      DualSolution s = constant_field(20, {1.0, 0.0, 1.0});
      for (std::size_t i = 0; i < 20; ++i) s.ubar[i].rho += (i % 2 ? -a : a);
      const auto u = smooth_u_conservatively(s, grid, kGas, beta);
      for (std::size_t i = 0; i < 20; ++i)
        CHECK(std::abs(u[i].rho - 1.0) == doctest::Approx(a * std::abs(1 - 2 * beta)).epsilon(1e-9));
    }
  }
}

TEST_CASE("linear density at constant pressure is a fixed point away from the ends") {
  const std::size_t n = 24;
  const OverlapGrid grid(n, 0, 1, Boundary::outflow);
  DualSolution s;
  for (std::size_t i = 0; i < n; ++i) s.ubar.push_back(prim_to_cons({1 + grid.cell_center(i), 0, 1}, kGas));
  for (std::size_t i = 0; i <= n; ++i) s.vbar.push_back({1 + grid.staggered_center(i), 0, 1});
  const DualSolution out = apply_postprocess(s, grid, kGas, CouplingConfig{});
  for (std::size_t i = 3; i + 3 < n; ++i) CHECK(max_abs(out.ubar[i].vec() - s.ubar[i].vec()) < 1e-13);
  for (std::size_t i = 3; i + 3 <= n; ++i) CHECK(max_abs(out.vbar[i].vec() - s.vbar[i].vec()) < 1e-13);
}

TEST_CASE("post-processing change is second order on smooth data") {
  const ProblemSpec spec = registry_lookup("smooth-wave");
  const GasModel g(spec.gamma);
  std::vector<double> change;
  for (std::size_t n : {32, 64, 128, 256}) {
    const OverlapGrid grid(n, spec.x_min, spec.x_max, spec.bc);
    const DualSolution s = initialize(spec, grid, g);
    const DualSolution out = apply_postprocess(s, grid, g, CouplingConfig{});
    double m = 0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, max_abs(out.ubar[i].vec() - s.ubar[i].vec()));
    for (std::size_t i = 0; i <= n; ++i) m = std::max(m, max_abs(out.vbar[i].vec() - s.vbar[i].vec()));
    change.push_back(m);
  }
  for (std::size_t i = 1; i < change.size(); ++i) CHECK(std::log2(change[i - 1] / change[i]) >= 1.8);
}

TEST_CASE("sod initial data: mass, momentum and energy unchanged") {
  const ProblemSpec spec = registry_lookup("sod");
  const GasModel g(spec.gamma);
  const OverlapGrid grid(200, spec.x_min, spec.x_max, spec.bc);
  const DualSolution s = initialize(spec, grid, g);
  const DualSolution out = apply_postprocess(s, grid, g, CouplingConfig{});
  const Vec3 a = total(s.ubar), b = total(out.ubar);
  for (int c : {0, 2}) CHECK(std::abs(a[c] - b[c]) <= 1e-13 * std::abs(a[c]));
  CHECK(std::abs(a[1] - b[1]) <= 1e-13 * std::abs(a[2]));
}

TEST_CASE("property: conservation and admissibility over random fields") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + rng() % 40;
    const Boundary bc = trial % 3 == 0 ? Boundary::outflow
                        : trial % 3 == 1 ? Boundary::periodic
                                         : Boundary::reflective;
    const OverlapGrid grid(n, 0, 1, bc);
    DualSolution s = random_field(rng, n, trial % 2 ? 1e-3 : 0.5);
    if (bc == Boundary::periodic) s.vbar[n] = s.vbar[0];
    CouplingConfig cfg;
    cfg.beta = unit(rng);
    cfg.theta = 1 + unit(rng);
    const DualSolution out = apply_postprocess(s, grid, kGas, cfg);
    const Vec3 a = total(s.ubar), b = total(out.ubar);
    const double scale = std::max({std::abs(a[0]), std::abs(a[2]), 1.0});
    CHECK(max_abs(a - b) <= 1e-13 * scale);
    for (const auto& U : out.ubar) CHECK(is_admissible(cons_to_prim(U, kGas)));
    for (const auto& V : out.vbar) CHECK(is_admissible(V));
  }
}
