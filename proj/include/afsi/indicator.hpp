#pragma once
// Smoothness indicator built from the discrepancy between the conservative
// averages and the staggered primitive averages co-evolved by the scheme.
//
//   eps_j     = | alpha(Ubar_j) - alpha(U(V_j)) |,  V_j = (Vbar_{j-1/2} + Vbar_{j+1/2}) / 2
//   epshat_j  = (eps_{j-1} + 4 eps_j + eps_{j+1}) / 6
//   rough_j   = epshat_j >= K * mean(epshat)
//
// eps is expected to scale like dx^2 where the solution is smooth and to stay
// O(1) across discontinuities. It must be evaluated after the time step and
// before the post-processing that re-couples the two fields.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "afsi/euler.hpp"
#include "afsi/grid.hpp"

namespace afsi {

enum class AlphaSelector { density, momentum, energy, pressure };

std::string_view to_string(AlphaSelector a);
AlphaSelector parse_alpha(std::string_view name);

/// The scalar functional compared by the indicator.
double alpha_of(const ConsState& U, AlphaSelector a, const GasModel& g);

struct SiField {
  std::vector<double> eps;
  std::vector<double> eps_hat;
  double eps_ave = 0.0;
  std::vector<bool> flags;  // true = rough
  double k = 1.0;

  std::size_t rough_count() const;
};

std::vector<double> si_raw(const DualSolution& sol, AlphaSelector alpha, const GasModel& g);

std::vector<double> si_filter(std::span<const double> eps);

/// Fills eps_ave and flags. An identically zero eps_hat yields no rough cells.
SiField si_classify(std::span<const double> eps_hat, double k);

/// Raw, filtered and classified in one call.
SiField smoothness_indicator(const DualSolution& sol, AlphaSelector alpha, const GasModel& g,
                             double k);

/// Observed decay order between two maxima: log2(coarse / fine) / log2(refinement).
/// Returns nullopt when the fine maximum is zero (rate undefined).
std::optional<double> si_decay_rate(double max_coarse, double max_fine, double refinement = 2.0);

/// Maximum of eps_hat over cells [first, last] (inclusive).
double window_max(std::span<const double> eps_hat, std::size_t first, std::size_t last);

}  // namespace afsi
