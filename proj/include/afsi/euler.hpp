#pragma once
// Ideal-gas Euler equations in conservative (rho, mom, E) and primitive
// (rho, u, p) form, including the flux/nonconservative split used by the
// primitive system V_t + Ftilde(V)_x = B(V) V_x.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace afsi {

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double a, double b, double c) : v{a, b, c} {}

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr const double& operator[](std::size_t i) const { return v[i]; }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator-(Vec3 a) { return a *= -1.0; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

constexpr Vec3 operator*(const Mat3& m, const Vec3& x) {
  Vec3 r;
  for (std::size_t i = 0; i < 3; ++i)
    r[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
  return r;
}

/// Conservative variables: density, momentum density, total energy density.
struct ConsState {
  double rho = 0.0;
  double mom = 0.0;
  double E = 0.0;

  constexpr Vec3 vec() const { return {rho, mom, E}; }
  static constexpr ConsState from(const Vec3& x) { return {x[0], x[1], x[2]}; }
  friend constexpr bool operator==(const ConsState&, const ConsState&) = default;
};

/// Primitive variables: density, velocity, pressure.
struct PrimState {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;

  constexpr Vec3 vec() const { return {rho, u, p}; }
  static constexpr PrimState from(const Vec3& x) { return {x[0], x[1], x[2]}; }
  friend constexpr bool operator==(const PrimState&, const PrimState&) = default;
};

// Solution arrays are reinterpreted as flat double buffers by the SIMD kernels.
static_assert(sizeof(ConsState) == 3 * sizeof(double));
static_assert(sizeof(PrimState) == 3 * sizeof(double));
static_assert(sizeof(Vec3) == 3 * sizeof(double));

/// Thrown when a state violates rho > 0 or p > 0 (or is not finite).
class InvalidState : public std::domain_error {
 public:
  InvalidState(const std::string& what, double rho, double pressure)
      : std::domain_error(what), rho_(rho), pressure_(pressure) {}
  double rho() const { return rho_; }
  double pressure() const { return pressure_; }

 private:
  double rho_;
  double pressure_;
};

struct GasModel {
  double gamma = 1.4;
  /// When set, non-positive density/pressure is clamped to this value
  /// instead of raising InvalidState.
  std::optional<double> positivity_floor;

  explicit GasModel(double g = 1.4, std::optional<double> floor = std::nullopt);
};

PrimState cons_to_prim(const ConsState& U, const GasModel& g);
ConsState prim_to_cons(const PrimState& V, const GasModel& g);

/// Physical flux of the conservative system: (rho u, rho u^2 + p, u (E + p)).
Vec3 cons_flux(const ConsState& U, const GasModel& g);

struct PrimFluxSplit {
  Vec3 ftilde;
  Mat3 B;
};

/// Ftilde(V) = (rho u, u^2/2, p u); B has B[1][2] = -1/rho, B[2][1] = -(gamma-1) p.
PrimFluxSplit prim_flux_split(const PrimState& V, const GasModel& g);

/// Flux part of the primitive split, without validation (hot path).
inline Vec3 prim_flux(const PrimState& V) {
  return {V.rho * V.u, 0.5 * V.u * V.u, V.p * V.u};
}

/// B(V) * dV for the sparse nonconservative matrix, without validation.
inline Vec3 nonconservative_product(const PrimState& V, const Vec3& dV,
                                    double gamma) {
  return {0.0, -dV[2] / V.rho, -(gamma - 1.0) * V.p * dV[1]};
}

inline double sound_speed(const PrimState& V, double gamma) {
  return std::sqrt(gamma * V.p / V.rho);
}

/// (u - c, u + c).
std::pair<double, double> char_speeds(const PrimState& V, const GasModel& g);

inline bool is_admissible(const PrimState& V) {
  return V.rho > 0.0 && V.p > 0.0 && std::isfinite(V.rho) &&
         std::isfinite(V.u) && std::isfinite(V.p);
}

void validate(const PrimState& V);
double pressure(const ConsState& U, const GasModel& g);

}  // namespace afsi
