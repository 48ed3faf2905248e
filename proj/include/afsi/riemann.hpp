#pragma once
// Verification oracles: the exact Riemann solver for the ideal-gas Euler
// equations and a first-order local Lax-Friedrichs finite-volume solver.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "afsi/euler.hpp"

namespace afsi {

struct ProblemSpec;

class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RiemannNotConverged : public std::runtime_error {
 public:
  RiemannNotConverged(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct RiemannProblem {
  PrimState left;
  PrimState right;
  double gamma = 1.4;
  double diaphragm = 0.0;
};

struct StarRegion {
  double p = 0.0;
  double u = 0.0;
  double rho_left = 0.0;
  double rho_right = 0.0;
  int iterations = 0;
};

/// Star-region pressure and velocity by safeguarded Newton iteration
/// (relative tolerance 1e-12, at most 100 iterations).
StarRegion solve_star_region(const RiemannProblem& rp);

/// Self-similar solution sampled at speeds xi = (x - diaphragm) / t.
PrimState sample_riemann(const RiemannProblem& rp, const StarRegion& star, double xi);

std::vector<PrimState> exact_riemann(const RiemannProblem& rp, std::span<const double> x_over_t);

/// Primitive state at position x and time t > 0.
PrimState exact_riemann_at(const RiemannProblem& rp, const StarRegion& star, double x, double t);

/// First-order LLF solve on a single grid (forward Euler, CFL 0.4); returns
/// the N conservative cell averages at spec.t_end.
std::vector<ConsState> llf_reference_solve(const ProblemSpec& spec, std::size_t n,
                                           double t_end_override = -1.0);

}  // namespace afsi
