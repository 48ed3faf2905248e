// Compiled with -mavx2 (and without -mfma); only reached after a runtime
// CPU check in dispatch.cpp.
#include <immintrin.h>

#include <cassert>

#include "afsi/simd.hpp"

namespace afsi::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d minmod4(__m256d a, __m256d b, __m256d c) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d pos = _mm256_and_pd(
      _mm256_and_pd(_mm256_cmp_pd(a, zero, _CMP_GT_OQ), _mm256_cmp_pd(b, zero, _CMP_GT_OQ)),
      _mm256_cmp_pd(c, zero, _CMP_GT_OQ));
  const __m256d neg = _mm256_and_pd(
      _mm256_and_pd(_mm256_cmp_pd(a, zero, _CMP_LT_OQ), _mm256_cmp_pd(b, zero, _CMP_LT_OQ)),
      _mm256_cmp_pd(c, zero, _CMP_LT_OQ));
  // _mm256_min_pd(x, y) == (x < y ? x : y), matching the scalar selection.
  const __m256d lo = _mm256_min_pd(_mm256_min_pd(a, b), c);
  const __m256d hi = _mm256_max_pd(_mm256_max_pd(a, b), c);
  return _mm256_or_pd(_mm256_and_pd(pos, lo), _mm256_and_pd(neg, hi));
}

void axpy(std::span<double> out, std::span<const double> x, double c,
          std::span<const double> z) {
  assert(x.size() == out.size() && z.size() == out.size());
  const std::size_t n = out.size();
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d r = _mm256_add_pd(_mm256_loadu_pd(&x[k]),
                                    _mm256_mul_pd(vc, _mm256_loadu_pd(&z[k])));
    _mm256_storeu_pd(&out[k], r);
  }
  for (; k < n; ++k) out[k] = x[k] + c * z[k];
}

void ssp_blend(std::span<double> out, double a, std::span<const double> x,
               double b, std::span<const double> y, double c,
               std::span<const double> z) {
  assert(x.size() == out.size() && y.size() == out.size() && z.size() == out.size());
  const std::size_t n = out.size();
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b), vc = _mm256_set1_pd(c);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d inner = _mm256_add_pd(_mm256_loadu_pd(&y[k]),
                                        _mm256_mul_pd(vc, _mm256_loadu_pd(&z[k])));
    const __m256d r = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(&x[k])),
                                    _mm256_mul_pd(vb, inner));
    _mm256_storeu_pd(&out[k], r);
  }
  for (; k < n; ++k) out[k] = a * x[k] + b * (y[k] + c * z[k]);
}

void generalized_minmod(std::span<double> out, std::span<const double> in,
                        std::size_t stride, double theta, double inv_dx) {
  assert(in.size() == out.size() + 2 * stride);
  const std::size_t n = out.size();
  const double half = 0.5 * inv_dx;
  const __m256d vt = _mm256_set1_pd(theta), vi = _mm256_set1_pd(inv_dx),
                vh = _mm256_set1_pd(half);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d l = _mm256_loadu_pd(&in[k]);
    const __m256d c = _mm256_loadu_pd(&in[k + stride]);
    const __m256d r = _mm256_loadu_pd(&in[k + 2 * stride]);
    const __m256d d1 = _mm256_mul_pd(_mm256_mul_pd(vt, _mm256_sub_pd(c, l)), vi);
    const __m256d d2 = _mm256_mul_pd(_mm256_sub_pd(r, l), vh);
    const __m256d d3 = _mm256_mul_pd(_mm256_mul_pd(vt, _mm256_sub_pd(r, c)), vi);
    _mm256_storeu_pd(&out[k], minmod4(d1, d2, d3));
  }
  for (; k < n; ++k) {
    const double l = in[k], c = in[k + stride], r = in[k + 2 * stride];
    out[k] = minmod(theta * (c - l) * inv_dx, (r - l) * half, theta * (r - c) * inv_dx);
  }
}

void minmod_stencil(std::span<double> out, std::span<const double> in,
                    std::size_t stride) {
  assert(in.size() == out.size() + 2 * stride);
  const std::size_t n = out.size();
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    _mm256_storeu_pd(&out[k], minmod4(_mm256_loadu_pd(&in[k]),
                                      _mm256_loadu_pd(&in[k + stride]),
                                      _mm256_loadu_pd(&in[k + 2 * stride])));
  }
  for (; k < n; ++k) out[k] = minmod(in[k], in[k + stride], in[k + 2 * stride]);
}

void noise_filter(std::span<double> out, std::span<const double> eps) {
  assert(out.size() == eps.size());
  const std::size_t n = eps.size();
  if (n < kLanes + 2) {
    scalar_kernels().noise_filter(out, eps);
    return;
  }
  out[0] = (eps[0] + 4.0 * eps[0] + eps[1]) / 6.0;
  const __m256d four = _mm256_set1_pd(4.0), six = _mm256_set1_pd(6.0);
  std::size_t j = 1;
  for (; j + kLanes <= n - 1; j += kLanes) {
    const __m256d l = _mm256_loadu_pd(&eps[j - 1]);
    const __m256d c = _mm256_loadu_pd(&eps[j]);
    const __m256d r = _mm256_loadu_pd(&eps[j + 1]);
    const __m256d s = _mm256_add_pd(_mm256_add_pd(l, _mm256_mul_pd(four, c)), r);
    _mm256_storeu_pd(&out[j], _mm256_div_pd(s, six));
  }
  for (; j < n - 1; ++j) out[j] = (eps[j - 1] + 4.0 * eps[j] + eps[j + 1]) / 6.0;
  out[n - 1] = (eps[n - 2] + 4.0 * eps[n - 1] + eps[n - 1]) / 6.0;
}

constexpr KernelTable kTable{axpy, ssp_blend, generalized_minmod,
                             minmod_stencil, noise_filter};

}  // namespace

const KernelTable& avx2_kernels() { return kTable; }

}  // namespace afsi::simd
