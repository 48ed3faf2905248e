#include "afsi/indicator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "afsi/simd.hpp"

namespace afsi {

std::string_view to_string(AlphaSelector a) {
  switch (a) {
    case AlphaSelector::density: return "density";
    case AlphaSelector::momentum: return "momentum";
    case AlphaSelector::energy: return "energy";
    case AlphaSelector::pressure: return "pressure";
  }
  return "?";
}

AlphaSelector parse_alpha(std::string_view name) {
  if (name == "density") return AlphaSelector::density;
  if (name == "momentum") return AlphaSelector::momentum;
  if (name == "energy") return AlphaSelector::energy;
  if (name == "pressure") return AlphaSelector::pressure;
  throw std::invalid_argument("unknown alpha selector: " + std::string(name) +
                              " (expected density|momentum|energy|pressure)");
}

double alpha_of(const ConsState& U, AlphaSelector a, const GasModel& g) {
  switch (a) {
    case AlphaSelector::density: return U.rho;
    case AlphaSelector::momentum: return U.mom;
    case AlphaSelector::energy: return U.E;
    case AlphaSelector::pressure: return pressure(U, g);
  }
  return 0.0;
}

std::size_t SiField::rough_count() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

std::vector<double> si_raw(const DualSolution& sol, AlphaSelector alpha, const GasModel& g) {
  if (sol.vbar.size() != sol.ubar.size() + 1)
    throw std::invalid_argument("si_raw: staggered array must have N+1 entries");
  std::vector<double> eps(sol.ubar.size());
  for (std::size_t j = 0; j < eps.size(); ++j) {
    const PrimState& l = sol.vbar[j];
    const PrimState& r = sol.vbar[j + 1];
    const PrimState mid{0.5 * (l.rho + r.rho), 0.5 * (l.u + r.u), 0.5 * (l.p + r.p)};
    eps[j] = std::abs(alpha_of(sol.ubar[j], alpha, g) - alpha_of(prim_to_cons(mid, g), alpha, g));
  }
  return eps;
}

std::vector<double> si_filter(std::span<const double> eps) {
  if (eps.empty()) throw std::invalid_argument("si_filter: empty input");
  std::vector<double> out(eps.size());
  simd::kernels().noise_filter(out, eps);
  return out;
}

SiField si_classify(std::span<const double> eps_hat, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("si_classify: k must be positive");
  SiField f;
  f.k = k;
  f.eps_hat.assign(eps_hat.begin(), eps_hat.end());
  f.eps_ave = eps_hat.empty() ? 0.0
                              : std::accumulate(eps_hat.begin(), eps_hat.end(), 0.0) /
                                    static_cast<double>(eps_hat.size());
  f.flags.assign(eps_hat.size(), false);
  if (f.eps_ave > 0.0) {
    const double threshold = k * f.eps_ave;
    for (std::size_t j = 0; j < eps_hat.size(); ++j) f.flags[j] = eps_hat[j] >= threshold;
  }
  return f;
}

SiField smoothness_indicator(const DualSolution& sol, AlphaSelector alpha, const GasModel& g,
                             double k) {
  std::vector<double> eps = si_raw(sol, alpha, g);
  SiField f = si_classify(si_filter(eps), k);
  f.eps = std::move(eps);
  return f;
}

std::optional<double> si_decay_rate(double max_coarse, double max_fine, double refinement) {
  if (!(max_fine > 0.0) || !(max_coarse > 0.0)) return std::nullopt;
  return std::log2(max_coarse / max_fine) / std::log2(refinement);
}

double window_max(std::span<const double> eps_hat, std::size_t first, std::size_t last) {
  if (first > last || last >= eps_hat.size())
    throw std::out_of_range("window_max: bad window");
  return *std::max_element(eps_hat.begin() + static_cast<std::ptrdiff_t>(first),
                           eps_hat.begin() + static_cast<std::ptrdiff_t>(last) + 1);
}

}  // namespace afsi
