#pragma once

#include <optional>

#include "lensfb/beamspace.hpp"
#include "lensfb/kernels.hpp"
#include "lensfb/numerics.hpp"

namespace lensfb {

inline constexpr int kMaxCodebookBits = 20;

// 2^B unit-norm quantization vectors. Subspace codebooks also keep the
// P-dimensional unit weights w_i with entries[i] = T w_i / ||T w_i||.
struct Codebook {
  int bits = 0;
  kernels::PlanarBlock entries;
  std::optional<kernels::PlanarBlock> weights;

  std::size_t size() const noexcept { return entries.count(); }
  std::size_t dim() const noexcept { return entries.dim(); }
  CVector entry(std::size_t i) const { return entries.get(i); }
};

struct FeedbackReport {
  std::size_t index = 0;
  double magnitude = 0.0;  // ||h^e||, assumed delivered without error
};

struct Quantization {
  FeedbackReport report;
  double achieved_sin2 = 0.0;  // 1 - |d_F^H h~|^2
};

Codebook gen_rvq_codebook(RngStream& rng, std::size_t n_rf, int bits);
Codebook gen_subspace_codebook(RngStream& rng, const EffectiveSteering& steering, int bits);

// Exhaustive angle search; ties go to the lowest index.
Quantization quantize(std::span<const cd> h_e, const Codebook& cb,
                      const kernels::KernelTable& k = kernels::active_kernels());

// Searches the P-dimensional weights instead of the N_RF-dimensional entries.
// Valid when T has orthonormal columns: |d_i^H T g~|^2 = |w_i^H g~|^2.
Quantization quantize_fast_subspace(std::span<const cd> g_tilde, const Codebook& cb,
                                    const EffectiveSteering& steering, double magnitude = 1.0,
                                    const kernels::KernelTable& k = kernels::active_kernels());

/// ||h^e|| d_F
CVector reconstruct(const FeedbackReport& report, const Codebook& cb);

// Streaming search: codewords are drawn in the same order as the gen_*
// functions, scored in blocks and discarded, so memory stays bounded for
// large B. Results equal generating the codebook and calling quantize.
struct StreamedQuantization {
  Quantization quantization;
  CVector codeword;  // d_F
};

StreamedQuantization stream_quantize_rvq(RngStream& rng, std::span<const cd> h_e, int bits,
                                         const kernels::KernelTable& k = kernels::active_kernels());

enum class SubspaceSearch {
  fast,        // weights only; needs orthonormal T and h^e in range(T)
  exhaustive,  // materialise T w_i / ||T w_i|| per block
};

StreamedQuantization stream_quantize_subspace(
    RngStream& rng, const EffectiveSteering& steering, std::span<const cd> h_e, int bits,
    SubspaceSearch mode, const kernels::KernelTable& k = kernels::active_kernels());

// Tolerance on ||T^H T - I||_F for the fast subspace search.
inline constexpr double kOrthonormalTolerance = 1e-9;

}  // namespace lensfb
