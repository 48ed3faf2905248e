#include "afsi/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "afsi/integrator.hpp"

namespace afsi {

namespace {

Vec3 totals(const std::vector<ConsState>& u, double dx) {
  Vec3 t;
  for (const ConsState& U : u) t += U.vec();
  return dx * t;
}

Vec3 magnitudes(const std::vector<ConsState>& u, double dx) {
  Vec3 t;
  for (const ConsState& U : u)
    for (std::size_t k = 0; k < 3; ++k) t[k] += std::abs(U.vec()[k]);
  return dx * t;
}

[[noreturn]] void rethrow_at(const std::exception& e, std::ptrdiff_t cell, const std::string& stage,
                             std::size_t step, double time) {
  std::ostringstream os;
  os.precision(17);
  os << "step " << step << ", t=" << time << ": " << e.what();
  throw SolverError(os.str(), cell, stage);
}

}  // namespace

RunRecord run(const ProblemSpec& spec, std::size_t n, const RunOverrides& ov,
              const StepObserver& observer) {
  spec.validate();
  if (n < 8) throw std::invalid_argument("run: need at least 8 cells");
  const GasModel gas(spec.gamma, ov.positivity_floor);
  const OverlapGrid grid(n, spec.x_min, spec.x_max, spec.bc);
  StepControl control;
  control.t_end = ov.t_end.value_or(spec.t_end);
  control.cfl = ov.cfl.value_or(kDefaultCfl);
  control.validate();
  const double theta = ov.theta.value_or(kDefaultTheta);
  if (!(theta >= 1.0 && theta <= 2.0)) throw std::invalid_argument("run: theta must be in [1, 2]");
  const double k = ov.k.value_or(spec.k);
  const AlphaSelector alpha = ov.alpha.value_or(spec.alpha);
  CouplingConfig coupling;
  coupling.beta = ov.beta.value_or(coupling.beta);
  coupling.gate = ov.gate.value_or(coupling.gate);
  coupling.theta = theta;
  coupling.validate();

  RunRecord rec;
  rec.problem = spec.name;
  rec.n = n;
  rec.x_min = grid.x_min();
  rec.dx = grid.dx();
  rec.k = k;
  rec.c_ref = spec.c_ref;
  rec.gamma = spec.gamma;

  DualSolution sol = initialize(spec, grid, gas);
  const Vec3 initial_total = totals(sol.ubar, grid.dx());
  const Vec3 scale = magnitudes(sol.ubar, grid.dx());
  Vec3 boundary_integral;
  Ssprk3Stepper stepper(grid, gas, theta);
  double dt_sum = 0.0;
  rec.dt_min = std::numeric_limits<double>::infinity();
  std::size_t step = 0;

  while (sol.time < control.t_end) {
    if (step >= control.max_steps) throw SolverError("run: step limit reached", -1, "driver");
    double dt = 0.0;
    try {
      dt = compute_dt(sol, grid, gas, control.cfl, control.t_end);
    } catch (const InvalidState& e) {
      rethrow_at(e, -1, "dt", step, sol.time);
    } catch (const SolverError& e) {
      rethrow_at(e, e.cell(), e.stage(), step, sol.time);
    }
    if (!(dt > 0.0)) break;
    const bool last = sol.time + dt >= control.t_end;
    try {
      const StepReport report = stepper.step(sol, dt);
      boundary_integral += report.boundary_flux_integral;
      rec.slope_fallbacks += report.slope_fallbacks;
      if (last) sol.time = control.t_end;
      if (observer) observer(StepPhase::advanced, step, sol);

      rec.si = smoothness_indicator(sol, alpha, gas, k);
      if (observer) observer(StepPhase::indicator, step, sol);

      sol = apply_postprocess(sol, grid, gas, coupling, &rec.si.flags);
      if (observer) observer(StepPhase::postprocessed, step, sol);
    } catch (const SolverError& e) {
      rethrow_at(e, e.cell(), e.stage(), step, sol.time);
    } catch (const InvalidState& e) {
      rethrow_at(e, -1, "indicator", step, sol.time);
    }
    rec.dt_min = std::min(rec.dt_min, dt);
    rec.dt_max = std::max(rec.dt_max, dt);
    dt_sum += dt;
    ++step;
  }

  rec.steps = step;
  rec.dt_mean = step > 0 ? dt_sum / static_cast<double>(step) : 0.0;
  if (step == 0) rec.dt_min = 0.0;
  const Vec3 final_total = totals(sol.ubar, grid.dx());
  for (std::size_t c = 0; c < 3; ++c) {
    const double expected = initial_total[c] - boundary_integral[c];
    const double denom = scale[c] > 0.0 ? scale[c] : 1.0;
    rec.conservation_drift[c] = std::abs(final_total[c] - expected) / denom;
  }
  rec.solution = std::move(sol);
  return rec;
}

double l1_density_error(const ProblemSpec& spec, const RunRecord& rec) {
  const double t = rec.solution.time;
  double err = 0.0;
  for (std::size_t i = 0; i < rec.n; ++i) {
    const double a = rec.x_min + static_cast<double>(i) * rec.dx;
    double ref = 0.0;
    if (spec.exact_cons_average) {
      ref = spec.exact_cons_average(a, a + rec.dx, t).rho;
    } else if (spec.exact) {
      ref = spec.exact(rec.x(i), t).rho;
    } else {
      throw std::invalid_argument("l1_density_error: problem " + spec.name + " has no exact solution");
    }
    err += std::abs(rec.solution.ubar[i].rho - ref);
  }
  return err * rec.dx;
}

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec,
                                              const std::vector<std::size_t>& n_list,
                                              const RunOverrides& overrides) {
  if (n_list.empty()) throw std::invalid_argument("convergence_study: empty N list");
  const bool has_exact = static_cast<bool>(spec.exact_cons_average) || static_cast<bool>(spec.exact);
  std::optional<RunRecord> reference;
  if (!has_exact) {
    const std::size_t n_ref = 4 * *std::max_element(n_list.begin(), n_list.end());
    reference = run(spec, n_ref, overrides);
  }

  std::vector<ConvergenceRow> rows;
  for (std::size_t n : n_list) {
    const RunRecord rec = run(spec, n, overrides);
    ConvergenceRow row;
    row.n = n;
    row.dx = rec.dx;
    if (has_exact) {
      row.l1_error = l1_density_error(spec, rec);
    } else {
      if (reference->n % n != 0)
        throw std::invalid_argument("convergence_study: N must divide the reference resolution");
      const std::size_t ratio = reference->n / n;
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double avg = 0.0;
        for (std::size_t q = 0; q < ratio; ++q) avg += reference->solution.ubar[i * ratio + q].rho;
        err += std::abs(rec.solution.ubar[i].rho - avg / static_cast<double>(ratio));
      }
      row.l1_error = err * rec.dx;
    }
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      if (row.l1_error > 0.0 && prev.l1_error > 0.0)
        row.order = std::log(prev.l1_error / row.l1_error) / std::log(prev.dx / row.dx);
      row.non_monotone = row.l1_error > prev.l1_error;
    }
    rows.push_back(row);
  }
  return rows;
}

SiStudyResult si_study(const ProblemSpec& spec, const std::vector<std::size_t>& n_list,
                       const RunOverrides& overrides,
                       const std::optional<std::filesystem::path>& out_dir) {
  if (n_list.empty()) throw std::invalid_argument("si_study: empty N list");
  SiStudyResult result;
  for (std::size_t n : n_list) {
    SiStudyEntry entry{run(spec, n, overrides), std::nullopt};
    if (spec.smooth_window) {
      const OverlapGrid grid(n, spec.x_min, spec.x_max, spec.bc);
      const auto [first, last] = cells_in(grid, spec.smooth_window->first, spec.smooth_window->second);
      entry.window_max = window_max(entry.record.si.eps_hat, first, last);
    }
    if (out_dir) {
      std::filesystem::create_directories(*out_dir);
      write_csv(entry.record, *out_dir / (spec.name + "_N" + std::to_string(n) + ".csv"), true);
    }
    result.entries.push_back(std::move(entry));
  }
  for (std::size_t i = 1; i < result.entries.size(); ++i) {
    const auto& c = result.entries[i - 1];
    const auto& f = result.entries[i];
    std::optional<double> rate;
    if (c.window_max && f.window_max)
      rate = si_decay_rate(*c.window_max, *f.window_max,
                           static_cast<double>(f.record.n) / static_cast<double>(c.record.n));
    result.decay_rates.push_back(rate);
  }
  return result;
}

void write_csv(const RunRecord& rec, const std::filesystem::path& path,
               bool with_reference_columns) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
  out << "x,rho,u,p,E,eps,eps_hat,flag";
  if (with_reference_columns) out << ",k_eps_ave,c_dx2";
  out << '\n';
  const double k_eps_ave = rec.si.k * rec.si.eps_ave;
  const double c_dx2 = rec.c_ref * rec.dx * rec.dx;
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < rec.n; ++i) {
    const ConsState& U = rec.solution.ubar[i];
    const double u = U.mom / U.rho;
    const double p = (rec.gamma - 1.0) * (U.E - 0.5 * U.mom * u);
    const bool have_si = i < rec.si.eps.size();
    put(rec.x(i)); out << ',';
    put(U.rho); out << ',';
    put(u); out << ',';
    put(p); out << ',';
    put(U.E); out << ',';
    put(have_si ? rec.si.eps[i] : 0.0); out << ',';
    put(have_si ? rec.si.eps_hat[i] : 0.0); out << ',';
    out << (have_si && rec.si.flags[i] ? '1' : '0');
    if (with_reference_columns) {
      out << ',';
      put(k_eps_ave);
      out << ',';
      put(c_dx2);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path.string());
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (cols.size() < 8) throw std::runtime_error("read_csv: short row in " + path.string());
    CsvRow r{};
    double* fields[] = {&r.x, &r.rho, &r.u, &r.p, &r.E, &r.eps, &r.eps_hat};
    for (std::size_t c = 0; c < 7; ++c) *fields[c] = std::strtod(cols[c].c_str(), nullptr);
    r.flag = cols[7] == "1";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace afsi
