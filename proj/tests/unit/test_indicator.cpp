#include <doctest.h>

#include <cmath>
#include <random>

#include "afsi/indicator.hpp"

using namespace afsi;

namespace {

const GasModel kGas(1.4);

DualSolution one_cell(ConsState U, PrimState left, PrimState right) {
  DualSolution s;
  s.ubar = {U};
  s.vbar = {left, right};
  return s;
}

}  // namespace

TEST_CASE("si_raw examples") {
  // momentum 1.0 against flanking staggered velocity 0.9 at unit density
  auto eps = si_raw(one_cell({1, 1.0, 3}, {1, 0.9, 1}, {1, 0.9, 1}), AlphaSelector::momentum, kGas);
  CHECK(eps[0] == doctest::Approx(0.1).epsilon(1e-14));

  eps = si_raw(one_cell({1, 0, 2.5}, {0.8, 0, 1}, {1.2, 0, 1}), AlphaSelector::density, kGas);
  CHECK(eps[0] == 0.0);

  // consistent fields: U_j = prim_to_cons of the staggered mean
  DualSolution s;
  const std::vector<PrimState> v{{1, 0.1, 1}, {1.2, 0.3, 0.8}, {0.9, -0.2, 1.1}, {1.1, 0, 1}};
  s.vbar = v;
  for (std::size_t j = 0; j < 3; ++j)
    s.ubar.push_back(prim_to_cons(PrimState::from(0.5 * (v[j].vec() + v[j + 1].vec())), kGas));
  for (AlphaSelector a : {AlphaSelector::density, AlphaSelector::momentum, AlphaSelector::energy,
                          AlphaSelector::pressure}) {
    for (double e : si_raw(s, a, kGas)) CHECK(e == 0.0);
    const SiField f = smoothness_indicator(s, a, kGas, 1.0);
    CHECK(f.rough_count() == 0);
  }
}

TEST_CASE("pressure functional averages primitives first") {
  // V_j = mean of (1, 0, 1) and (1, 2, 1) = (1, 1, 1); U(V_j) has p = 1
  const auto eps =
      si_raw(one_cell(prim_to_cons({1, 1, 1.5}, kGas), {1, 0, 1}, {1, 2, 1}), AlphaSelector::pressure, kGas);
  CHECK(eps[0] == doctest::Approx(0.5));
}

TEST_CASE("si_filter examples") {
  const std::vector<double> c(7, 0.3);
  for (double e : si_filter(c)) CHECK(e == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(si_filter(std::vector<double>{0, 1, 0})[1] == doctest::Approx(4.0 / 6.0));
  const auto f = si_filter(std::vector<double>{1, 0, 0, 0, 1});
  // boundary copies eps_0 := eps_1 and eps_{N+1} := eps_N
  const double expect[] = {(1 + 4 + 0) / 6.0, (1 + 0 + 0) / 6.0, 0.0, (0 + 0 + 1) / 6.0, (0 + 4 + 1) / 6.0};
  for (int j = 0; j < 5; ++j) CHECK(f[j] == doctest::Approx(expect[j]).epsilon(1e-15));
  CHECK(si_filter(std::vector<double>{2.0})[0] == doctest::Approx(2.0));
  CHECK_THROWS(si_filter(std::vector<double>{}));
}

TEST_CASE("si_classify examples") {
  SiField f = si_classify(std::vector<double>(5, 0.0), 3.0);
  CHECK(f.rough_count() == 0);
  CHECK(f.eps_ave == 0.0);

  f = si_classify(std::vector<double>{1, 1, 1, 1}, 1.0);
  CHECK(f.eps_ave == 1.0);
  CHECK(f.rough_count() == 4);

  f = si_classify(std::vector<double>{0, 0, 0, 10}, 2.0);
  CHECK(f.eps_ave == 2.5);
  CHECK(f.flags == std::vector<bool>{false, false, false, true});
  CHECK_THROWS(si_classify(std::vector<double>{1}, 0.0));
}

TEST_CASE("si_decay_rate examples") {
  CHECK(*si_decay_rate(4e-4, 1e-4) == doctest::Approx(2.0));
  CHECK(*si_decay_rate(1e-3, 2.8e-4) == doctest::Approx(std::log(1.0 / 0.28) / std::log(2.0)));
  CHECK(*si_decay_rate(1e-3, 2.8e-4) == doctest::Approx(1.836).epsilon(1e-3));
  CHECK(*si_decay_rate(0.7, 0.7) == 0.0);
  CHECK_FALSE(si_decay_rate(1e-3, 0.0).has_value());
  CHECK(*si_decay_rate(16e-4, 1e-4, 4.0) == doctest::Approx(2.0));
}

TEST_CASE("window_max") {
  const std::vector<double> e{1, 5, 2, 7, 3};
  CHECK(window_max(e, 1, 2) == 5);
  CHECK(window_max(e, 0, 4) == 7);
  CHECK_THROWS(window_max(e, 3, 5));
}

TEST_CASE("alpha parsing") {
  CHECK(parse_alpha("energy") == AlphaSelector::energy);
  CHECK(to_string(AlphaSelector::momentum) == "momentum");
  CHECK_THROWS(parse_alpha("entropy"));
}

TEST_CASE("property: filter bounds, scale covariance, k monotonicity") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 120;
    std::vector<double> eps(n);
    for (auto& e : eps) e = unit(rng) < 0.3 ? 0.0 : std::pow(10.0, -8 * unit(rng));
    const auto hat = si_filter(eps);
    const double lo = *std::min_element(eps.begin(), eps.end());
    const double hi = *std::max_element(eps.begin(), eps.end());
    for (double h : hat) {
      CHECK(h >= lo * (1 - 1e-15));
      CHECK(h <= hi * (1 + 1e-15));
    }

    // powers of two scale exactly, so flags must match bit for bit
    const double lambda = std::ldexp(1.0, static_cast<int>(rng() % 40) - 20);
    std::vector<double> scaled(n);
    for (std::size_t j = 0; j < n; ++j) scaled[j] = lambda * eps[j];
    const double k = 0.2 + 4 * unit(rng);
    const SiField a = si_classify(hat, k);
    const SiField b = si_classify(si_filter(scaled), k);
    CHECK(b.flags == a.flags);
    CHECK(b.eps_ave == lambda * a.eps_ave);

    const SiField c = si_classify(hat, k * (1 + unit(rng)));
    for (std::size_t j = 0; j < n; ++j)
      if (c.flags[j]) CHECK(a.flags[j]);
  }
}
