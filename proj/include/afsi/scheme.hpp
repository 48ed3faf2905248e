#pragma once
// Spatial operator of the dual semi-discrete system: conservative AF fluxes
// on the primary grid and a path-conservative central-upwind (PCCU)
// discretization of the primitive system on the staggered grid.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "afsi/euler.hpp"
#include "afsi/grid.hpp"

namespace afsi {

/// Raised when the solver meets an inadmissible state; carries the cell
/// index (-1 when not tied to a cell) and the stage that failed.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::ptrdiff_t cell, std::string stage)
      : std::runtime_error(what), cell_(cell), stage_(std::move(stage)) {}
  std::ptrdiff_t cell() const { return cell_; }
  const std::string& stage() const { return stage_; }

 private:
  std::ptrdiff_t cell_;
  std::string stage_;
};

inline constexpr double kDefaultTheta = 1.3;
inline constexpr double kDegeneracyRatio = 1e-12;

/// Componentwise generalized minmod slope (per unit length).
Vec3 minmod_slope(const Vec3& w_left, const Vec3& w_center, const Vec3& w_right,
                  double theta, double dx);

struct PointValues {
  PrimState v_minus;  // from the staggered cell on the left of the point
  PrimState v_plus;   // from the staggered cell on the right
};

struct Reconstruction {
  std::vector<Vec3> slopes;         // staggered s = -1..N+1  (index s + 1)
  std::vector<PointValues> points;  // points x_j, j = 0..N+1 (primary centres incl. ghosts)
  std::size_t slope_fallbacks = 0;  // cells whose slope was zeroed for positivity
};

/// `vbar_padded` is the ghost-padded staggered array (N + 5 entries).
Reconstruction reconstruct_point_values(std::span<const PrimState> vbar_padded,
                                        double theta, double dx);

struct LocalSpeeds {
  double a_plus;
  double a_minus;
};

LocalSpeeds local_speeds(const PrimState& v_minus, const PrimState& v_plus, const GasModel& g);

struct PointFlux {
  Vec3 ftilde;
  Vec3 b_psi;
};

/// Central-upwind flux and linear-path jump term at one point. When
/// a_plus - a_minus < degeneracy_threshold the averaged-flux branch is used.
PointFlux pccu_point_flux(const PrimState& v_minus, const PrimState& v_plus, double a_plus,
                          double a_minus, const GasModel& g, double degeneracy_threshold = 0.0);

/// F(U(vbar)), the unlimited AF interface flux.
Vec3 conservative_interface_flux(const PrimState& vbar, const GasModel& g);

struct DualRhs {
  std::vector<Vec3> d_ubar;  // N
  std::vector<Vec3> d_vbar;  // N + 1
  Vec3 flux_left;            // conservative flux at x_min
  Vec3 flux_right;           // conservative flux at x_max
  std::size_t slope_fallbacks = 0;
};

/// Scratch buffers reused across right-hand-side evaluations.
struct RhsWorkspace {
  std::vector<PrimState> vpad;
  std::vector<Vec3> slopes;
  std::vector<Vec3> ftilde;
  std::vector<Vec3> b_psi;
  std::vector<double> w_plus;
  std::vector<double> w_minus;
  std::vector<double> a_plus;
  std::vector<double> a_minus;
  std::vector<PrimState> v_minus;
  std::vector<PrimState> v_plus;
  std::vector<Vec3> flux;

  void resize(std::size_t n_cells);
};

void compute_rhs(const DualSolution& sol, const OverlapGrid& grid, const GasModel& g,
                 double theta, DualRhs& out, RhsWorkspace& ws);

DualRhs compute_rhs(const DualSolution& sol, const OverlapGrid& grid, const GasModel& g,
                    double theta = kDefaultTheta);

}  // namespace afsi
