#pragma once
// Data-parallel inner loops with a scalar reference path and an AVX2 path
// selected at runtime. Both paths perform the same IEEE operations in the
// same order, so results are bitwise identical (no FMA contraction).

#include <cstddef>
#include <span>
#include <string_view>

namespace afsi::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Best instruction set supported by this CPU and build.
Isa detected_isa();

/// Instruction set currently used by the dispatching entry points. Defaults
/// to detected_isa(); AFSI_FORCE_SCALAR=1 in the environment pins scalar.
Isa active_isa();

/// Overrides the active instruction set. Requests for an ISA the CPU cannot
/// run fall back to scalar. Returns the ISA actually installed.
Isa set_active_isa(Isa isa);

inline double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return a < b ? (a < c ? a : c) : (b < c ? b : c);
  if (a < 0.0 && b < 0.0 && c < 0.0) return a > b ? (a > c ? a : c) : (b > c ? b : c);
  return 0.0;
}

// Kernel signatures. Spans of `out` length M; stencil inputs have length
// M + 2 * stride and out[k] reads in[k], in[k + stride], in[k + 2 * stride].
struct KernelTable {
  // out = x + c * z
  void (*axpy)(std::span<double> out, std::span<const double> x, double c,
               std::span<const double> z);
  // out = a * x + b * (y + c * z)
  void (*ssp_blend)(std::span<double> out, double a, std::span<const double> x,
                    double b, std::span<const double> y, double c,
                    std::span<const double> z);
  // out[k] = minmod(theta (c - l) / dx, (r - l) / (2 dx), theta (r - c) / dx)
  void (*generalized_minmod)(std::span<double> out, std::span<const double> in,
                             std::size_t stride, double theta, double inv_dx);
  // out[k] = minmod(l, c, r)
  void (*minmod_stencil)(std::span<double> out, std::span<const double> in,
                         std::size_t stride);
  // out[j] = (e[j-1] + 4 e[j] + e[j+1]) / 6 with e[-1] = e[0], e[N] = e[N-1]
  void (*noise_filter)(std::span<double> out, std::span<const double> eps);
};

const KernelTable& scalar_kernels();
#if defined(AFSI_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

/// Table for the active ISA.
const KernelTable& kernels();

}  // namespace afsi::simd
