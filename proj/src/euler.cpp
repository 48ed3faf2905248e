#include "afsi/euler.hpp"

#include <sstream>

namespace afsi {

namespace {

[[noreturn]] void throw_invalid(const char* where, double rho, double p) {
  std::ostringstream os;
  os.precision(17);
  os << where << ": invalid state (rho=" << rho << ", p=" << p << ")";
  throw InvalidState(os.str(), rho, p);
}

// Returns the (possibly floored) pair or throws.
std::pair<double, double> admit(const char* where, double rho, double p,
                                const GasModel& g) {
  const bool ok = rho > 0.0 && p > 0.0 && std::isfinite(rho) && std::isfinite(p);
  if (ok) return {rho, p};
  if (g.positivity_floor && std::isfinite(rho) && std::isfinite(p)) {
    const double f = *g.positivity_floor;
    return {std::max(rho, f), std::max(p, f)};
  }
  throw_invalid(where, rho, p);
}

}  // namespace

GasModel::GasModel(double g, std::optional<double> floor)
    : gamma(g), positivity_floor(floor) {
  if (!(gamma > 1.0)) throw std::invalid_argument("GasModel: gamma must exceed 1");
  if (floor && !(*floor > 0.0))
    throw std::invalid_argument("GasModel: positivity floor must be positive");
}

PrimState cons_to_prim(const ConsState& U, const GasModel& g) {
  if (!(U.rho > 0.0) || !std::isfinite(U.mom) || !std::isfinite(U.E)) {
    if (!g.positivity_floor || !std::isfinite(U.rho) || !std::isfinite(U.mom))
      throw_invalid("cons_to_prim", U.rho, std::nan(""));
  }
  const double rho_in = U.rho > 0.0 ? U.rho : *g.positivity_floor;
  const double u = U.mom / rho_in;
  const double p = (g.gamma - 1.0) * (U.E - 0.5 * U.mom * u);
  const auto [rho, pr] = admit("cons_to_prim", rho_in, p, g);
  return {rho, u, pr};
}

ConsState prim_to_cons(const PrimState& V, const GasModel& g) {
  const auto [rho, p] = admit("prim_to_cons", V.rho, V.p, g);
  if (!std::isfinite(V.u)) throw_invalid("prim_to_cons", V.rho, V.p);
  const double mom = rho * V.u;
  return {rho, mom, p / (g.gamma - 1.0) + 0.5 * mom * V.u};
}

Vec3 cons_flux(const ConsState& U, const GasModel& g) {
  const PrimState V = cons_to_prim(U, g);
  return {U.mom, U.mom * V.u + V.p, V.u * (U.E + V.p)};
}

PrimFluxSplit prim_flux_split(const PrimState& V, const GasModel& g) {
  validate(V);
  PrimFluxSplit out;
  out.ftilde = prim_flux(V);
  out.B = Mat3{};
  out.B[1][2] = -1.0 / V.rho;
  out.B[2][1] = -(g.gamma - 1.0) * V.p;
  return out;
}

std::pair<double, double> char_speeds(const PrimState& V, const GasModel& g) {
  validate(V);
  const double c = sound_speed(V, g.gamma);
  return {V.u - c, V.u + c};
}

void validate(const PrimState& V) {
  if (!is_admissible(V)) throw_invalid("primitive state", V.rho, V.p);
}

double pressure(const ConsState& U, const GasModel& g) {
  return cons_to_prim(U, g).p;
}

}  // namespace afsi
