#include <cassert>

#include "afsi/simd.hpp"

namespace afsi::simd {
namespace {

void axpy(std::span<double> out, std::span<const double> x, double c,
          std::span<const double> z) {
  assert(x.size() == out.size() && z.size() == out.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = x[k] + c * z[k];
}

void ssp_blend(std::span<double> out, double a, std::span<const double> x,
               double b, std::span<const double> y, double c,
               std::span<const double> z) {
  assert(x.size() == out.size() && y.size() == out.size() && z.size() == out.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = a * x[k] + b * (y[k] + c * z[k]);
}

void generalized_minmod(std::span<double> out, std::span<const double> in,
                        std::size_t stride, double theta, double inv_dx) {
  assert(in.size() == out.size() + 2 * stride);
  const double half = 0.5 * inv_dx;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double l = in[k], c = in[k + stride], r = in[k + 2 * stride];
    out[k] = minmod(theta * (c - l) * inv_dx, (r - l) * half,
                    theta * (r - c) * inv_dx);
  }
}

void minmod_stencil(std::span<double> out, std::span<const double> in,
                    std::size_t stride) {
  assert(in.size() == out.size() + 2 * stride);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = minmod(in[k], in[k + stride], in[k + 2 * stride]);
}

void noise_filter(std::span<double> out, std::span<const double> eps) {
  assert(out.size() == eps.size());
  const std::size_t n = eps.size();
  if (n == 0) return;
  for (std::size_t j = 0; j < n; ++j) {
    const double l = eps[j == 0 ? 0 : j - 1];
    const double r = eps[j + 1 == n ? n - 1 : j + 1];
    out[j] = (l + 4.0 * eps[j] + r) / 6.0;
  }
}

constexpr KernelTable kTable{axpy, ssp_blend, generalized_minmod,
                             minmod_stencil, noise_filter};

}  // namespace

const KernelTable& scalar_kernels() { return kTable; }

}  // namespace afsi::simd
