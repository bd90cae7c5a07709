// Compiled with -mavx2 only. Keep this file free of inline library templates
// so no AVX2-encoded copy of a shared inline function leaks into other TUs.
#include <immintrin.h>

#include "kernels_internal.hpp"

namespace lensfb::kernels::detail {

namespace {

void correlation_power_avx2(const double* re, const double* im, std::size_t stride,
                            std::size_t dim, std::size_t count, const double* h_re,
                            const double* h_im, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d acc_r = _mm256_setzero_pd();
    __m256d acc_i = _mm256_setzero_pd();
    for (std::size_t n = 0; n < dim; ++n) {
      const __m256d dr = _mm256_loadu_pd(re + n * stride + i);
      const __m256d di = _mm256_loadu_pd(im + n * stride + i);
      const __m256d hr = _mm256_broadcast_sd(h_re + n);
      const __m256d hi = _mm256_broadcast_sd(h_im + n);
      __m256d t = _mm256_mul_pd(dr, hr);
      t = _mm256_add_pd(t, _mm256_mul_pd(di, hi));
      acc_r = _mm256_add_pd(acc_r, t);
      __m256d u = _mm256_mul_pd(dr, hi);
      u = _mm256_sub_pd(u, _mm256_mul_pd(di, hr));
      acc_i = _mm256_add_pd(acc_i, u);
    }
    const __m256d p = _mm256_add_pd(_mm256_mul_pd(acc_r, acc_r), _mm256_mul_pd(acc_i, acc_i));
    _mm256_storeu_pd(out + i, p);
  }
  correlation_power_scalar(re, im, stride, dim, i, count, h_re, h_im, out);
}

void complex_matvec_avx2(const double* a, std::size_t rows, std::size_t cols, const double* x,
                         double* y) {
  const std::size_t paired = rows & ~std::size_t{1};
  for (std::size_t r = 0; r < paired; r += 2) _mm256_storeu_pd(y + 2 * r, _mm256_setzero_pd());
  for (std::size_t c = 0; c < cols; ++c) {
    const __m256d xr = _mm256_broadcast_sd(x + 2 * c);
    const __m256d xi = _mm256_broadcast_sd(x + 2 * c + 1);
    const double* col = a + 2 * c * rows;
    for (std::size_t r = 0; r < paired; r += 2) {
      // [ar0, ai0, ar1, ai1]
      const __m256d av = _mm256_loadu_pd(col + 2 * r);
      const __m256d swapped = _mm256_permute_pd(av, 0x5);  // [ai0, ar0, ai1, ar1]
      const __m256d t1 = _mm256_mul_pd(av, xr);            // [ar xr, ai xr]
      const __m256d t2 = _mm256_mul_pd(swapped, xi);       // [ai xi, ar xi]
      const __m256d prod = _mm256_addsub_pd(t1, t2);       // [ar xr - ai xi, ai xr + ar xi]
      _mm256_storeu_pd(y + 2 * r, _mm256_add_pd(_mm256_loadu_pd(y + 2 * r), prod));
    }
  }
  if (paired < rows) complex_matvec_rows_scalar(a, rows, cols, paired, x, y);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2, "avx2", &correlation_power_avx2,
                                 &complex_matvec_avx2};
  return table;
}

}  // namespace lensfb::kernels::detail
