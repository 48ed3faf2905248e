#include "afsi/grid.hpp"

#include <stdexcept>

namespace afsi {

std::string_view to_string(Boundary bc) {
  switch (bc) {
    case Boundary::periodic: return "periodic";
    case Boundary::outflow: return "outflow";
    case Boundary::reflective: return "reflective";
  }
  return "?";
}

Boundary parse_boundary(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "outflow") return Boundary::outflow;
  if (name == "reflective") return Boundary::reflective;
  throw std::invalid_argument("unknown boundary type: " + std::string(name));
}

OverlapGrid::OverlapGrid(std::size_t n_cells, double x_min, double x_max, Boundary bc)
    : n_(n_cells), x_min_(x_min), x_max_(x_max), dx_(0.0), bc_(bc) {
  if (n_cells < 2) throw std::invalid_argument("OverlapGrid: need at least 2 cells");
  if (!(x_max > x_min)) throw std::invalid_argument("OverlapGrid: empty domain");
  dx_ = (x_max - x_min) / static_cast<double>(n_cells);
}

void check_shape(const DualSolution& sol, const OverlapGrid& grid) {
  if (sol.ubar.size() != grid.n_cells() || sol.vbar.size() != grid.n_cells() + 1)
    throw std::invalid_argument("DualSolution: expected N primary and N+1 staggered entries");
}

namespace {

ConsState mirror(const ConsState& U) { return {U.rho, -U.mom, U.E}; }
PrimState mirror(const PrimState& V) { return {V.rho, -V.u, V.p}; }
Vec3 mirror(const Vec3& x) { return {x[0], -x[1], x[2]}; }

// Primary arrays have period N; staggered arrays hold N+1 entries where the
// first and last coincide under periodicity, so their period is also N.
template <class T>
void pad(std::span<const T> in, Boundary bc, std::span<T> out, bool staggered) {
  const std::size_t m = in.size();
  if (out.size() != m + 2 * kGhosts) throw std::invalid_argument("pad: wrong buffer size");
  const std::size_t period = staggered ? m - 1 : m;
  for (std::size_t k = 0; k < m; ++k) out[k + kGhosts] = in[k];
  for (std::size_t g = 1; g <= kGhosts; ++g) {
    T left, right;
    switch (bc) {
      case Boundary::periodic:
        left = in[period - g];
        right = in[m - 1 - period + g];
        break;
      case Boundary::outflow:
        left = in[0];
        right = in[m - 1];
        break;
      case Boundary::reflective:
        left = mirror(in[staggered ? g : g - 1]);
        right = mirror(in[staggered ? m - 1 - g : m - g]);
        break;
    }
    out[kGhosts - g] = left;
    out[kGhosts + m - 1 + g] = right;
  }
}

}  // namespace

void pad_primary(std::span<const ConsState> interior, Boundary bc, std::span<ConsState> padded) {
  pad(interior, bc, padded, false);
}
void pad_staggered(std::span<const PrimState> interior, Boundary bc, std::span<PrimState> padded) {
  pad(interior, bc, padded, true);
}
void pad_staggered(std::span<const Vec3> interior, Boundary bc, std::span<Vec3> padded) {
  pad(interior, bc, padded, true);
}

GhostPadded apply_bc(const DualSolution& sol, const OverlapGrid& grid) {
  check_shape(sol, grid);
  GhostPadded out;
  out.u.resize(sol.ubar.size() + 2 * kGhosts);
  out.v.resize(sol.vbar.size() + 2 * kGhosts);
  pad_primary(sol.ubar, grid.bc(), out.u);
  pad_staggered(sol.vbar, grid.bc(), out.v);
  return out;
}

std::vector<ConsState> project_primary_to_staggered(std::span<const ConsState> padded_u,
                                                    std::span<const Vec3> padded_slopes,
                                                    double dx) {
  if (padded_u.size() != padded_slopes.size() || padded_u.size() < 2 * kGhosts + 1)
    throw std::invalid_argument("project_primary_to_staggered: size mismatch");
  const std::size_t n = padded_u.size() - 2 * kGhosts;
  std::vector<ConsState> out(n + 1);
  for (std::size_t s = 0; s <= n; ++s) {
    // staggered s sits between primary s-1 and s, padded indices s+1 and s+2
    out[s] = ConsState::from(project_to_staggered(padded_u[s + 1].vec(), padded_u[s + 2].vec(),
                                                  padded_slopes[s + 1], padded_slopes[s + 2], dx));
  }
  return out;
}

}  // namespace afsi
