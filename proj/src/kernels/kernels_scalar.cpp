#include "kernels_internal.hpp"

namespace lensfb::kernels::detail {

void correlation_power_scalar(const double* re, const double* im, std::size_t stride,
                              std::size_t dim, std::size_t begin, std::size_t count,
                              const double* h_re, const double* h_im, double* out) {
  for (std::size_t i = begin; i < count; ++i) {
    double acc_r = 0.0;
    double acc_i = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
      const double dr = re[n * stride + i];
      const double di = im[n * stride + i];
      double t = dr * h_re[n];
      t = t + di * h_im[n];
      acc_r = acc_r + t;
      double u = dr * h_im[n];
      u = u - di * h_re[n];
      acc_i = acc_i + u;
    }
    out[i] = acc_r * acc_r + acc_i * acc_i;
  }
}

void complex_matvec_rows_scalar(const double* a, std::size_t rows, std::size_t cols,
                                std::size_t row_begin, const double* x, double* y) {
  for (std::size_t r = row_begin; r < rows; ++r) {
    y[2 * r] = 0.0;
    y[2 * r + 1] = 0.0;
  }
  for (std::size_t c = 0; c < cols; ++c) {
    const double xr = x[2 * c];
    const double xi = x[2 * c + 1];
    const double* col = a + 2 * c * rows;
    for (std::size_t r = row_begin; r < rows; ++r) {
      const double ar = col[2 * r];
      const double ai = col[2 * r + 1];
      y[2 * r] = y[2 * r] + (ar * xr - ai * xi);
      y[2 * r + 1] = y[2 * r + 1] + (ai * xr + ar * xi);
    }
  }
}

}  // namespace lensfb::kernels::detail

namespace lensfb::kernels {

namespace {

void correlation_power_ref(const double* re, const double* im, std::size_t stride,
                           std::size_t dim, std::size_t count, const double* h_re,
                           const double* h_im, double* out) {
  detail::correlation_power_scalar(re, im, stride, dim, 0, count, h_re, h_im, out);
}

void complex_matvec_ref(const double* a, std::size_t rows, std::size_t cols, const double* x,
                        double* y) {
  detail::complex_matvec_rows_scalar(a, rows, cols, 0, x, y);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, "scalar", &correlation_power_ref,
                                 &complex_matvec_ref};
  return table;
}

}  // namespace lensfb::kernels
