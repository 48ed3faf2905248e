#include <doctest.h>

#include <cmath>
#include <random>

#include "afsi/scheme.hpp"

using namespace afsi;

namespace {

const GasModel kGas(1.4);

PrimState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r(0.2, 5), u(-3, 3), p(0.2, 5);
  return {r(rng), u(rng), p(rng)};
}

// Manufactured isentropic profile on [0, 1], monotone in each variable.
PrimState profile(double x) {
  const double rho = 1.0 + 0.2 * x;
  return {rho, 0.3 + 0.1 * x * x, std::pow(rho, 1.4)};
}

// Pointwise primitive tendency -A(V) V_x, derivatives taken analytically.
Vec3 exact_tendency(double x) {
  const PrimState V = profile(x);
  const double rx = 0.2, ux = 0.2 * x, px = 1.4 * std::pow(V.rho, 0.4) * rx;
  return {-(V.u * rx + V.rho * ux), -(V.u * ux + px / V.rho), -(V.u * px + 1.4 * V.p * ux)};
}

template <class F>
auto average(F f, double a, double b) {
  // 5-point Gauss-Legendre
  const double x[] = {0.0, 0.5384693101056831, 0.9061798459386640};
  const double w[] = {0.5688888888888889, 0.4786286704993665, 0.2369268850561891};
  const double m = 0.5 * (a + b), h = 0.5 * (b - a);
  auto sum = w[0] * f(m);
  for (int k = 1; k < 3; ++k) sum += w[k] * (f(m - h * x[k]) + f(m + h * x[k]));
  return 0.5 * sum;
}

}  // namespace

TEST_CASE("minmod_slope examples") {
  CHECK(minmod_slope({0, 0, 0}, {1, 1, 1}, {2, 2, 2}, 1.3, 1.0) == Vec3{1, 1, 1});
  CHECK(minmod_slope({0, 0, 0}, {1, 1, 1}, {0, 0, 0}, 1.7, 1.0) == Vec3{0, 0, 0});
  // candidates theta*1 = 1, (4-0)/2 = 2, theta*3 = 3
  CHECK(minmod_slope({0, 0, 0}, {1, 1, 1}, {4, 4, 4}, 1.0, 1.0)[0] == 1.0);
}

TEST_CASE("reconstruction examples") {
  const double dx = 0.1;
  SUBCASE("constant") {
    std::vector<PrimState> v(9, PrimState{1, 0.5, 2});
    const Reconstruction r = reconstruct_point_values(v, 1.3, dx);
    for (const auto& p : r.points) {
      CHECK(p.v_minus == PrimState{1, 0.5, 2});
      CHECK(p.v_plus == PrimState{1, 0.5, 2});
    }
  }
  SUBCASE("linear") {
    std::vector<PrimState> v;
    for (int k = 0; k < 9; ++k) v.push_back({1 + 0.1 * k, 0.2 * k, 2 + 0.05 * k});
    const Reconstruction r = reconstruct_point_values(v, 1.3, dx);
    // point j lies halfway between padded staggered j+1 and j+2
    for (std::size_t j = 0; j < r.points.size(); ++j) {
      const double k = static_cast<double>(j) + 1.5;
      CHECK(r.points[j].v_minus.rho == doctest::Approx(1 + 0.1 * k).epsilon(1e-13));
      CHECK(r.points[j].v_plus.rho == doctest::Approx(1 + 0.1 * k).epsilon(1e-13));
      CHECK(r.points[j].v_plus.u == doctest::Approx(0.2 * k).epsilon(1e-13));
    }
  }
  SUBCASE("isolated jump") {
    std::vector<PrimState> v;
    for (int k = 0; k < 10; ++k) v.push_back(k < 5 ? PrimState{1, 0, 1} : PrimState{2, 0, 2});
    const Reconstruction r = reconstruct_point_values(v, 1.3, dx);
    // the point between padded 4 and 5 is point 3
    CHECK(r.points[3].v_minus == PrimState{1, 0, 1});
    CHECK(r.points[3].v_plus == PrimState{2, 0, 2});
  }
}

TEST_CASE("property: limited endpoints stay between neighbouring averages") {
  // with theta <= 2 each endpoint lies between the cell average and its
  // neighbour, so admissible averages never need the positivity fallback
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<PrimState> v;
    for (int k = 0; k < 9; ++k) v.push_back(random_state(rng));
    const double theta = 1.0 + (trial % 11) / 10.0;
    const Reconstruction r = reconstruct_point_values(v, theta, 0.01);
    CHECK(r.slope_fallbacks == 0);
    for (std::size_t j = 0; j < r.points.size(); ++j) {
      const PrimState& l = v[j + 1];
      const PrimState& c = v[j + 2];
      for (const PrimState* e : {&r.points[j].v_minus, &r.points[j].v_plus}) {
        CHECK(e->rho >= std::min(l.rho, c.rho) - 1e-12);
        CHECK(e->rho <= std::max(l.rho, c.rho) + 1e-12);
        CHECK(e->p >= std::min(l.p, c.p) - 1e-12);
      }
    }
  }
}

TEST_CASE("local_speeds examples") {
  const double c = std::sqrt(1.4);
  LocalSpeeds a = local_speeds({1, 0, 1}, {1, 0, 1}, kGas);
  CHECK(a.a_plus == doctest::Approx(c));
  CHECK(a.a_minus == doctest::Approx(-c));
  a = local_speeds({1, 5, 1}, {1, 5, 1}, kGas);
  CHECK(a.a_plus == doctest::Approx(5 + c));
  CHECK(a.a_minus == 0.0);
  a = local_speeds({1, 0, 1}, {1, 0, 4}, kGas);
  CHECK(a.a_plus == doctest::Approx(std::sqrt(5.6)));
  CHECK(a.a_minus == doctest::Approx(-std::sqrt(5.6)));
}

TEST_CASE("property: speed signs") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const LocalSpeeds a = local_speeds(random_state(rng), random_state(rng), kGas);
    CHECK(a.a_plus >= 0.0);
    CHECK(a.a_minus <= 0.0);
    CHECK(a.a_plus - a.a_minus > 0.0);
  }
}

TEST_CASE("pccu_point_flux examples") {
  const PrimState V{1.3, 0.7, 2.1};
  PointFlux f = pccu_point_flux(V, V, 2.0, -1.0, kGas);
  const Vec3 ft = prim_flux_split(V, kGas).ftilde;
  for (std::size_t k = 0; k < 3; ++k) CHECK(f.ftilde[k] == doctest::Approx(ft[k]).epsilon(1e-15));
  CHECK(f.b_psi == Vec3{0, 0, 0});

  f = pccu_point_flux({1, 0, 1}, {1, 0, 1}, std::sqrt(1.4), -std::sqrt(1.4), kGas);
  CHECK(f.ftilde == Vec3{0, 0, 0});

  // hand evaluation: Ftilde vanishes at u = 0; a+ a- / (a+ - a-) = -sqrt(2.8) / 2
  const double a = std::sqrt(2.8);
  f = pccu_point_flux({1, 0, 2}, {1, 0, 1}, a, -a, kGas);
  CHECK(f.ftilde[0] == doctest::Approx(0.0));
  CHECK(f.ftilde[1] == doctest::Approx(0.0));
  CHECK(f.ftilde[2] == doctest::Approx(a / 2));
  // B at the path midpoint (rho = 1, p = 1.5) applied to the jump (0, 0, -1)
  CHECK(f.b_psi[0] == 0.0);
  CHECK(f.b_psi[1] == doctest::Approx(1.0));
  CHECK(f.b_psi[2] == 0.0);

  // degenerate branch averages the fluxes and drops the path term
  f = pccu_point_flux({1, 0, 2}, {1, 1, 1}, 1e-20, -1e-20, kGas, 1e-12);
  CHECK(f.ftilde[1] == doctest::Approx(0.25));
  CHECK(f.b_psi == Vec3{0, 0, 0});
}

TEST_CASE("conservative_interface_flux examples") {
  CHECK(conservative_interface_flux({1, 0, 1}, kGas) == Vec3{0, 1, 0});
  const Vec3 f = conservative_interface_flux({1, 1, 0.8}, kGas);
  CHECK(f[0] == doctest::Approx(1.0));
  CHECK(f[1] == doctest::Approx(1.8));
  CHECK(f[2] == doctest::Approx(3.3));
  CHECK(conservative_interface_flux({0.125, 0, 0.1}, kGas)[1] == doctest::Approx(0.1));
}

TEST_CASE("constant state gives zero tendencies") {
  for (Boundary bc : {Boundary::periodic, Boundary::outflow, Boundary::reflective}) {
    const std::size_t n = 16;
    const OverlapGrid grid(n, 0, 1, bc);
    const PrimState V{1.2, bc == Boundary::reflective ? 0.0 : 0.4, 0.9};
    DualSolution s;
    s.ubar.assign(n, prim_to_cons(V, kGas));
    s.vbar.assign(n + 1, V);
    const DualRhs r = compute_rhs(s, grid, kGas);
    for (const Vec3& d : r.d_ubar) CHECK(d == Vec3{0, 0, 0});
    for (const Vec3& d : r.d_vbar) CHECK(d == Vec3{0, 0, 0});
  }
}

TEST_CASE("stencil support of the conservative update") {
  const std::size_t n = 12;
  const OverlapGrid grid(n, 0, 1, Boundary::outflow);
  DualSolution s;
  s.ubar.assign(n, prim_to_cons({1, 0, 1}, kGas));
  s.vbar.assign(n + 1, {1, 0, 1});
  s.vbar[5] = {1.1, 0.05, 1.2};
  const DualRhs r = compute_rhs(s, grid, kGas);
  for (std::size_t i = 0; i < n; ++i) {
    const bool nonzero = r.d_ubar[i] != Vec3{0, 0, 0};
    CHECK(nonzero == (i == 4 || i == 5));
  }
}

TEST_CASE("property: telescoping conservation") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 8 + trial % 20;
    const Boundary bc = static_cast<Boundary>(trial % 3);
    const OverlapGrid grid(n, 0, 1, bc);
    DualSolution s;
    for (std::size_t i = 0; i < n; ++i) s.ubar.push_back(prim_to_cons(random_state(rng), kGas));
    for (std::size_t i = 0; i <= n; ++i) s.vbar.push_back(random_state(rng));
    if (bc == Boundary::periodic) s.vbar[n] = s.vbar[0];
    const DualRhs r = compute_rhs(s, grid, kGas);
    for (std::size_t k = 0; k < 3; ++k) {
      double sum = 0, scale = 0;
      for (const Vec3& d : r.d_ubar) sum += d[k] * grid.dx(), scale += std::abs(d[k]) * grid.dx();
      const double boundary = r.flux_left[k] - r.flux_right[k];
      CHECK(std::abs(sum - boundary) <= 1e-13 * (scale + std::abs(boundary)));
      if (bc == Boundary::periodic) CHECK(std::abs(sum) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("second-order consistency of both tendency fields") {
  // Error over interior cells against averaged exact tendencies; the profile
  // is monotone so the limiter stays inactive.
  auto errors = [](std::size_t n) {
    const OverlapGrid grid(n, 0, 1, Boundary::outflow);
    const double dx = grid.dx();
    DualSolution s;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = i * dx;
      s.ubar.push_back(ConsState::from(average([](double x) { return prim_to_cons(profile(x), kGas).vec(); }, a, a + dx)));
    }
    for (std::size_t k = 0; k <= n; ++k) {
      const double c = k * dx;
      s.vbar.push_back(PrimState::from(average([](double x) { return profile(x).vec(); }, c - dx / 2, c + dx / 2)));
    }
    const DualRhs r = compute_rhs(s, grid, kGas);
    double ev = 0, eu = 0;
    for (std::size_t k = 4; k + 4 <= n; ++k) {
      const double c = k * dx;
      const Vec3 exact = average(exact_tendency, c - dx / 2, c + dx / 2);
      for (int m = 0; m < 3; ++m) ev = std::max(ev, std::abs(r.d_vbar[k][m] - exact[m]));
    }
    for (std::size_t i = 4; i + 4 < n; ++i) {
      const double a = i * dx, b = a + dx;
      const Vec3 exact = -(1.0 / dx) * (cons_flux(prim_to_cons(profile(b), kGas), kGas) -
                                        cons_flux(prim_to_cons(profile(a), kGas), kGas));
      for (int m = 0; m < 3; ++m) eu = std::max(eu, std::abs(r.d_ubar[i][m] - exact[m]));
    }
    return std::pair{ev, eu};
  };
  auto [v1, u1] = errors(40);
  auto [v2, u2] = errors(80);
  auto [v3, u3] = errors(160);
  CHECK(std::log2(v1 / v2) >= 1.8);
  CHECK(std::log2(v2 / v3) >= 1.8);
  CHECK(std::log2(u1 / u2) >= 1.8);
  CHECK(std::log2(u2 / u3) >= 1.8);
}
