#pragma once
// Overlapping uniform grids and the dual (conservative + staggered primitive)
// solution container.
//
// Index conventions (0-based):
//   primary cell i = 0..N-1      spans [x_min + i dx, x_min + (i+1) dx]
//   staggered cell s = 0..N      spans [x_min + (s-1/2) dx, x_min + (s+1/2) dx]
// Staggered cell s is centred on primary interface s, and primary cell i is
// centred on the point between staggered cells i and i+1. The boundary
// staggered cells s = 0 and s = N straddle the domain ends.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afsi/euler.hpp"

namespace afsi {

enum class Boundary { periodic, outflow, reflective };

std::string_view to_string(Boundary bc);
Boundary parse_boundary(std::string_view name);

inline constexpr std::size_t kGhosts = 2;

class OverlapGrid {
 public:
  OverlapGrid(std::size_t n_cells, double x_min, double x_max, Boundary bc);

  std::size_t n_cells() const { return n_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double dx() const { return dx_; }
  Boundary bc() const { return bc_; }

  double cell_center(std::size_t i) const { return x_min_ + (static_cast<double>(i) + 0.5) * dx_; }
  double staggered_center(std::size_t s) const { return x_min_ + static_cast<double>(s) * dx_; }

 private:
  std::size_t n_;
  double x_min_;
  double x_max_;
  double dx_;
  Boundary bc_;
};

struct DualSolution {
  std::vector<ConsState> ubar;  // N primary-cell averages
  std::vector<PrimState> vbar;  // N+1 staggered-cell averages
  double time = 0.0;

  std::size_t n_cells() const { return ubar.size(); }
};

/// Throws std::invalid_argument unless ubar has N and vbar N+1 entries.
void check_shape(const DualSolution& sol, const OverlapGrid& grid);

/// Both arrays extended by kGhosts entries on each side.
struct GhostPadded {
  std::vector<ConsState> u;  // N + 4
  std::vector<PrimState> v;  // N + 5

  /// i in [-2, N+1]
  const ConsState& u_at(std::ptrdiff_t i) const { return u[static_cast<std::size_t>(i + 2)]; }
  /// s in [-2, N+2]
  const PrimState& v_at(std::ptrdiff_t s) const { return v[static_cast<std::size_t>(s + 2)]; }
};

GhostPadded apply_bc(const DualSolution& sol, const OverlapGrid& grid);

// Buffer-filling variants. `padded` must hold interior.size() + 2 * kGhosts
// entries; the interior is copied into the middle.
void pad_primary(std::span<const ConsState> interior, Boundary bc, std::span<ConsState> padded);
void pad_staggered(std::span<const PrimState> interior, Boundary bc, std::span<PrimState> padded);
/// Staggered layout for primitive-variable triples (velocity is odd under reflection).
void pad_staggered(std::span<const Vec3> interior, Boundary bc, std::span<Vec3> padded);

/// Average over [x_j, x_{j+1}] of the two linear pieces
/// left + slope_left (x - x_j) and right + slope_right (x - x_{j+1}).
inline Vec3 project_to_staggered(const Vec3& left, const Vec3& right,
                                 const Vec3& slope_left, const Vec3& slope_right,
                                 double dx) {
  Vec3 r;
  for (std::size_t k = 0; k < 3; ++k)
    r[k] = 0.5 * (left[k] + right[k]) + (dx / 8.0) * (slope_left[k] - slope_right[k]);
  return r;
}

/// Staggered averages s = 0..N from ghost-padded primary averages and slopes
/// (both of length N + 4, padded index = i + 2).
std::vector<ConsState> project_primary_to_staggered(std::span<const ConsState> padded_u,
                                                    std::span<const Vec3> padded_slopes,
                                                    double dx);

template <class T>
std::span<const double> as_doubles(std::span<const T> s) {
  static_assert(sizeof(T) == 3 * sizeof(double));
  return {reinterpret_cast<const double*>(s.data()), 3 * s.size()};
}
template <class T>
std::span<double> as_doubles(std::span<T> s) {
  static_assert(sizeof(T) == 3 * sizeof(double));
  return {reinterpret_cast<double*>(s.data()), 3 * s.size()};
}

}  // namespace afsi
