#pragma once

#include <vector>

#include "lensfb/kernels.hpp"
#include "lensfb/numerics.hpp"

namespace lensfb {

// Spatial DFT lens. Row m is a(m/M)^H, so U is unitary.
class LensMatrix {
 public:
  explicit LensMatrix(std::size_t M);

  std::size_t size() const noexcept { return u_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return u_; }

 private:
  ComplexMatrix u_;
};

inline LensMatrix build_lens(std::size_t M) { return LensMatrix(M); }

// Dense form of the 0/1 selector S: the chosen beam indices, ascending.
struct BeamSelector {
  std::vector<std::size_t> indices;

  std::size_t size() const noexcept { return indices.size(); }
};

// T = S^H U A, N_RF x P.
struct EffectiveSteering {
  ComplexMatrix T;
};

/// h^b = U h.
CVector beamspace_transform(const LensMatrix& lens, std::span<const cd> h,
                            const kernels::KernelTable& k = kernels::active_kernels());

// Picks the N_RF beams with the largest aggregate power sum_k |h^b_k[m]|^2.
// Equal powers resolve to the lower beam index. Result is sorted ascending.
BeamSelector select_beams(std::span<const CVector> beamspace_channels, std::size_t n_rf);

/// h^e = S^H h^b.
CVector equivalent_channel(const BeamSelector& sel, std::span<const cd> hb);

EffectiveSteering effective_steering(const BeamSelector& sel, const LensMatrix& lens,
                                     const ComplexMatrix& steering,
                                     const kernels::KernelTable& k = kernels::active_kernels());

// ||T^H T - I_P||_F; zero when T has orthonormal columns.
double orthonormality_defect(const ComplexMatrix& t);

}  // namespace lensfb
