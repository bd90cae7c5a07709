#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants.
//
// Every variant performs the same IEEE operations in the same order per
// output element (the SIMD versions vectorise across independent outputs,
// never across a reduction), so all variants are bitwise identical. The build
// disables FMA contraction to keep it that way.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lensfb/numerics.hpp"

namespace lensfb::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // out[i] = |sum_n conj(d_i[n]) * h[n]|^2 for i < count.
  // d is planar and dimension-major: Re d_i[n] = re[n * stride + i].
  void (*correlation_power)(const double* re, const double* im, std::size_t stride,
                            std::size_t dim, std::size_t count, const double* h_re,
                            const double* h_im, double* out);

  // y = A x. A is column-major, interleaved (re, im) complex, rows x cols.
  // x and y are interleaved complex vectors.
  void (*complex_matvec)(const double* a, std::size_t rows, std::size_t cols,
                         const double* x, double* y);
};

const KernelTable& scalar_kernels();
/// nullptr unless the AVX2 variant was compiled in and the CPU supports it.
const KernelTable* avx2_kernels();

// Best available table. The environment variable LENSFB_KERNELS=scalar|avx2
// forces a choice; an unavailable request falls back to scalar.
const KernelTable& active_kernels();
std::vector<const KernelTable*> available_kernels();

// Planar storage for a batch of complex vectors of equal dimension.
class PlanarBlock {
 public:
  PlanarBlock() = default;
  PlanarBlock(std::size_t dim, std::size_t count)
      : dim_(dim), count_(count), re_(dim * count), im_(dim * count) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t count() const noexcept { return count_; }

  void set(std::size_t i, std::span<const cd> v) {
    for (std::size_t n = 0; n < dim_; ++n) {
      re_[n * count_ + i] = v[n].real();
      im_[n * count_ + i] = v[n].imag();
    }
  }
  CVector get(std::size_t i) const {
    CVector v(dim_);
    for (std::size_t n = 0; n < dim_; ++n) v[n] = {re_[n * count_ + i], im_[n * count_ + i]};
    return v;
  }

  const double* re() const noexcept { return re_.data(); }
  const double* im() const noexcept { return im_.data(); }

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
};

// Span-level wrappers; they validate shapes and call into the table.
void correlation_power(const KernelTable& k, const PlanarBlock& block, std::span<const cd> h,
                       std::span<double> out, std::size_t count);
void complex_matvec(const KernelTable& k, const ComplexMatrix& a, std::span<const cd> x,
                    std::span<cd> y);

}  // namespace lensfb::kernels
