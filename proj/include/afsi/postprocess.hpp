#pragma once
// Conservative post-processing applied once per completed time step. It
// first slaves the staggered primitive averages to a second-order projection
// of the conservative averages wherever their difference is not smooth, and
// then nudges the conservative averages toward the primitive data through a
// flux-form (hence exactly conservative) correction.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "afsi/euler.hpp"
#include "afsi/grid.hpp"
#include "afsi/scheme.hpp"

namespace afsi {

enum class Gate { everywhere, flagged };

std::string_view to_string(Gate g);
Gate parse_gate(std::string_view name);

struct CouplingConfig {
  double beta = 0.5;
  Gate gate = Gate::everywhere;
  double theta = kDefaultTheta;  // limiter for the conservative projection slopes

  void validate() const;
};

/// Cells touched by the post-processing when gated: flagged cells and their
/// immediate neighbours (primary), and staggered cells adjacent to those.
struct ActiveSets {
  std::vector<bool> primary;    // N
  std::vector<bool> staggered;  // N + 1
};
ActiveSets active_sets(const std::vector<bool>& flags, Boundary bc);

/// Limited linear projection of the conservative field onto staggered cells,
/// converted to primitive variables.
std::vector<PrimState> staggered_projection(const DualSolution& sol, const OverlapGrid& grid,
                                            const GasModel& g, double theta);

std::vector<PrimState> couple_v_to_u(const DualSolution& sol, const OverlapGrid& grid,
                                     const GasModel& g, double theta,
                                     const std::vector<bool>* staggered_mask = nullptr);

/// Relative U/V discrepancy at which the U smoothing reaches full strength.
inline constexpr double kSmoothingScale = 0.05;

/// Flux-form diffusion of the conservative averages, switched on by the
/// squared relative discrepancy between U and the state implied by V.
std::vector<ConsState> smooth_u_conservatively(const DualSolution& sol, const OverlapGrid& grid,
                                               const GasModel& g, double beta,
                                               const std::vector<bool>* staggered_mask = nullptr);

/// V coupling, then U smoothing. `flags` (rough cells from the smoothness
/// indicator) are required when cfg.gate == Gate::flagged.
DualSolution apply_postprocess(const DualSolution& sol, const OverlapGrid& grid,
                               const GasModel& g, const CouplingConfig& cfg,
                               const std::vector<bool>* flags = nullptr);

}  // namespace afsi
