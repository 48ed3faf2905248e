// afsi: run benchmarks, convergence studies and smoothness-indicator studies.
//
//   afsi run --problem sod --n 400 --out sod.csv
//   afsi convergence --problem smooth-wave --n 64,128,256,512
//   afsi si-study --problem shock-entropy --n 800,1600 --out si/
//   afsi run --config run.cfg --n 800      (flags override the file)

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "afsi/driver.hpp"
#include "afsi/problems.hpp"

using namespace afsi;

namespace {

struct Options {
  std::string problem;
  std::vector<std::size_t> n;
  std::optional<double> t_end;
  std::optional<double> cfl;
  std::optional<double> theta;
  std::optional<double> k;
  std::optional<double> beta;
  std::string alpha = "momentum";
  std::string gate = "everywhere";
  std::optional<double> floor;
  std::string out;
};

RunOverrides overrides(const Options& o) {
  RunOverrides r;
  r.t_end = o.t_end;
  r.cfl = o.cfl;
  r.theta = o.theta;
  r.k = o.k;
  r.beta = o.beta;
  r.alpha = parse_alpha(o.alpha);
  r.gate = parse_gate(o.gate);
  r.positivity_floor = o.floor;
  return r;
}

std::string num(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void print_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    w[c] = header[c].size();
    for (const auto& r : rows) w[c] = std::max(w[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      std::printf("%s%*s", c ? "  " : "", static_cast<int>(w[c]), cells[c].c_str());
    std::printf("\n");
  };
  line(header);
  for (const auto& r : rows) line(r);
}

int cmd_run(const Options& o) {
  const ProblemSpec spec = registry_lookup(o.problem);
  const std::size_t n = o.n.empty() ? 400 : o.n.front();
  const RunRecord rec = run(spec, n, overrides(o));
  print_table({"problem", "N", "steps", "dt_min", "dt_max", "rough", "mass drift", "fallbacks"},
              {{rec.problem, std::to_string(rec.n), std::to_string(rec.steps), num("%.3e", rec.dt_min),
                num("%.3e", rec.dt_max), std::to_string(rec.si.rough_count()),
                num("%.2e", rec.conservation_drift[0]), std::to_string(rec.slope_fallbacks)}});
  if (spec.exact || spec.exact_cons_average)
    std::printf("L1 density error %.6e\n", l1_density_error(spec, rec));
  if (!o.out.empty()) write_csv(rec, o.out);
  return 0;
}

int cmd_convergence(const Options& o) {
  const ProblemSpec spec = registry_lookup(o.problem);
  const std::vector<std::size_t> ns = o.n.empty() ? std::vector<std::size_t>{64, 128, 256, 512} : o.n;
  const auto rows = convergence_study(spec, ns, overrides(o));
  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows)
    table.push_back({std::to_string(r.n), num("%.6e", r.dx), num("%.6e", r.l1_error),
                     r.order ? num("%.3f", *r.order) : "", r.non_monotone ? "non-monotone" : ""});
  print_table({"N", "dx", "L1 error", "order", "note"}, table);
  return 0;
}

int cmd_si_study(const Options& o) {
  const ProblemSpec spec = registry_lookup(o.problem);
  const std::vector<std::size_t> ns = o.n.empty() ? std::vector<std::size_t>{100, 200, 400, 800} : o.n;
  std::optional<std::filesystem::path> dir;
  if (!o.out.empty()) dir = o.out;
  const SiStudyResult r = si_study(spec, ns, overrides(o), dir);
  std::vector<std::vector<std::string>> table;
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = r.entries[i];
    std::string rate;
    if (i > 0) rate = r.decay_rates[i - 1] ? num("%.3f", *r.decay_rates[i - 1]) : "undefined";
    table.push_back({std::to_string(e.record.n), num("%.4e", e.record.si.eps_ave),
                     std::to_string(e.record.si.rough_count()),
                     e.window_max ? num("%.4e", *e.window_max) : "-", rate});
  }
  print_table({"N", "eps_ave", "rough", "window max", "decay rate"}, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active flux solver with a smoothness indicator"};
  app.set_config("--config", "", "flat key = value file mirroring the flags");
  app.require_subcommand(1);

  Options o;
  std::string names;
  for (const auto& s : problem_names()) names += (names.empty() ? "" : ", ") + s;
  app.add_option("--problem", o.problem, "benchmark: " + names)->required();
  app.add_option("--n", o.n, "cell count(s), comma separated for studies")->delimiter(',');
  app.add_option("--t-end", o.t_end, "final time");
  app.add_option("--cfl", o.cfl, "CFL number (default 0.25)");
  app.add_option("--theta", o.theta, "minmod parameter in [1, 2] (default 1.3)");
  app.add_option("--k", o.k, "rough-cell threshold constant K (default per problem)");
  app.add_option("--alpha", o.alpha, "indicator functional: density|momentum|energy|pressure")
      ->capture_default_str();
  app.add_option("--beta", o.beta, "U smoothing strength in [0, 1] (default 0.5)");
  app.add_option("--gate", o.gate, "post-processing gate: everywhere|flagged")->capture_default_str();
  app.add_option("--floor", o.floor, "clamp density and pressure at this value instead of failing");
  app.add_option("--out", o.out, "CSV file (run) or output directory (si-study)");

  auto* run_cmd = app.add_subcommand("run", "single run, optional CSV dump")->fallthrough();
  auto* conv_cmd = app.add_subcommand("convergence", "L1 density error table")->fallthrough();
  auto* si_cmd = app.add_subcommand("si-study", "indicator across refinements")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(o);
    if (conv_cmd->parsed()) return cmd_convergence(o);
    if (si_cmd->parsed()) return cmd_si_study(o);
  } catch (const std::exception& e) {
    std::cerr << "afsi: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
