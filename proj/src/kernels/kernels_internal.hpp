#pragma once

#include "lensfb/kernels.hpp"

namespace lensfb::kernels::detail {

void correlation_power_scalar(const double* re, const double* im, std::size_t stride,
                              std::size_t dim, std::size_t begin, std::size_t count,
                              const double* h_re, const double* h_im, double* out);

void complex_matvec_rows_scalar(const double* a, std::size_t rows, std::size_t cols,
                                std::size_t row_begin, const double* x, double* y);

#if defined(LENSFB_BUILD_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace lensfb::kernels::detail
