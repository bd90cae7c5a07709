#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace lensfb::kernels {

const KernelTable* avx2_kernels() {
#if defined(LENSFB_BUILD_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("LENSFB_KERNELS");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_kernels();
    if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
    return scalar_kernels();
  }();
  return chosen;
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* avx2 = avx2_kernels()) out.push_back(avx2);
  return out;
}

void correlation_power(const KernelTable& k, const PlanarBlock& block, std::span<const cd> h,
                       std::span<double> out, std::size_t count) {
  if (h.size() != block.dim())
    throw Error(ErrorKind::invalid_dimension, "correlation_power: vector dimension mismatch");
  if (count > block.count() || out.size() < count)
    throw Error(ErrorKind::invalid_dimension, "correlation_power: count exceeds storage");
  double h_re[64];
  double h_im[64];
  std::vector<double> heap;
  double* hr = h_re;
  double* hi = h_im;
  if (h.size() > 64) {
    heap.resize(2 * h.size());
    hr = heap.data();
    hi = heap.data() + h.size();
  }
  for (std::size_t n = 0; n < h.size(); ++n) {
    hr[n] = h[n].real();
    hi[n] = h[n].imag();
  }
  k.correlation_power(block.re(), block.im(), block.count(), block.dim(), count, hr, hi,
                      out.data());
}

void complex_matvec(const KernelTable& k, const ComplexMatrix& a, std::span<const cd> x,
                    std::span<cd> y) {
  if (a.cols() != x.size() || a.rows() != y.size())
    throw Error(ErrorKind::invalid_dimension, "complex_matvec: dimension mismatch");
  k.complex_matvec(reinterpret_cast<const double*>(a.data().data()), a.rows(), a.cols(),
                   reinterpret_cast<const double*>(x.data()), reinterpret_cast<double*>(y.data()));
}

}  // namespace lensfb::kernels
