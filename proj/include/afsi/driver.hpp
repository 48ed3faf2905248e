#pragma once
// Run driver (advance -> indicator -> post-process per step), convergence and
// indicator studies, and CSV output.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "afsi/euler.hpp"
#include "afsi/grid.hpp"
#include "afsi/indicator.hpp"
#include "afsi/postprocess.hpp"
#include "afsi/problems.hpp"

namespace afsi {

struct RunOverrides {
  std::optional<double> t_end;
  std::optional<double> cfl;
  std::optional<double> theta;
  std::optional<double> k;
  std::optional<double> beta;
  std::optional<AlphaSelector> alpha;
  std::optional<Gate> gate;
  std::optional<double> positivity_floor;
};

enum class StepPhase { advanced, indicator, postprocessed };

/// Called after each phase of every step; used to instrument step ordering.
using StepObserver = std::function<void(StepPhase, std::size_t step, const DualSolution&)>;

struct RunRecord {
  std::string problem;
  std::size_t n = 0;
  double x_min = 0.0;
  double dx = 0.0;
  double k = 1.0;
  double c_ref = 1.0;
  double gamma = 1.4;
  DualSolution solution;
  SiField si;  // from the last step, before post-processing
  std::size_t steps = 0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  double dt_mean = 0.0;
  /// |total(t_end) - total(0) + boundary flux integral| / |total(0)| per component.
  Vec3 conservation_drift;
  std::size_t slope_fallbacks = 0;

  double x(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx; }
};

RunRecord run(const ProblemSpec& spec, std::size_t n, const RunOverrides& overrides = {},
              const StepObserver& observer = {});

struct ConvergenceRow {
  std::size_t n = 0;
  double dx = 0.0;
  double l1_error = 0.0;
  std::optional<double> order;  // vs. the previous row
  bool non_monotone = false;    // error grew under refinement
};

/// L1 density error of the conservative averages against the exact solution
/// (closed-form cell averages when available, else centre samples), or
/// against a run at 4x the finest resolution when no exact solution exists.
std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec,
                                              const std::vector<std::size_t>& n_list,
                                              const RunOverrides& overrides = {});

/// L1 density distance of a record to the exact solution (centre samples
/// unless closed-form averages exist).
double l1_density_error(const ProblemSpec& spec, const RunRecord& record);

struct SiStudyEntry {
  RunRecord record;
  std::optional<double> window_max;  // max eps_hat over the smooth window
};

struct SiStudyResult {
  std::vector<SiStudyEntry> entries;
  std::vector<std::optional<double>> decay_rates;  // between consecutive entries
};

/// Runs each N, optionally writing `<out_dir>/<problem>_N<n>.csv` with the
/// two reference columns k*eps_ave and c_ref*dx^2.
SiStudyResult si_study(const ProblemSpec& spec, const std::vector<std::size_t>& n_list,
                       const RunOverrides& overrides = {},
                       const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// Header `x,rho,u,p,E,eps,eps_hat,flag`, one row per cell, 17 significant
/// digits, LF line endings. With reference columns, appends `k_eps_ave,c_dx2`.
void write_csv(const RunRecord& record, const std::filesystem::path& path,
               bool with_reference_columns = false);

struct CsvRow {
  double x, rho, u, p, E, eps, eps_hat;
  bool flag;
};
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

}  // namespace afsi
