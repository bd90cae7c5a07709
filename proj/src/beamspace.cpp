#include "lensfb/beamspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lensfb {

LensMatrix::LensMatrix(std::size_t M) : u_(M, M) {
  // U(m, n) = exp(+j 2 pi m n / M) / sqrt(M); (m n mod M) keeps the phase exact.
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (std::size_t n = 0; n < M; ++n) {
    for (std::size_t m = 0; m < M; ++m) {
      const std::size_t r = (m * n) % M;
      const double phase = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(M);
      u_(m, n) = {scale * std::cos(phase), scale * std::sin(phase)};
    }
  }
}

CVector beamspace_transform(const LensMatrix& lens, std::span<const cd> h,
                            const kernels::KernelTable& k) {
  if (h.size() != lens.size())
    throw Error(ErrorKind::invalid_dimension, "beamspace_transform: length " +
                                                  std::to_string(h.size()) + " vs lens " +
                                                  std::to_string(lens.size()));
  CVector hb(lens.size());
  kernels::complex_matvec(k, lens.matrix(), h, hb);
  return hb;
}

BeamSelector select_beams(std::span<const CVector> beamspace_channels, std::size_t n_rf) {
  if (beamspace_channels.empty())
    throw Error(ErrorKind::invalid_dimension, "select_beams: no channels");
  const std::size_t M = beamspace_channels.front().size();
  if (n_rf > M)
    throw Error(ErrorKind::invalid_config, "select_beams: N_RF (" + std::to_string(n_rf) +
                                               ") exceeds M (" + std::to_string(M) + ")");
  std::vector<double> power(M, 0.0);
  for (const auto& hb : beamspace_channels) {
    if (hb.size() != M)
      throw Error(ErrorKind::invalid_dimension, "select_beams: channels differ in length");
    for (std::size_t m = 0; m < M; ++m) power[m] += std::norm(hb[m]);
  }
  std::vector<std::size_t> order(M);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_rf), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return power[a] != power[b] ? power[a] > power[b] : a < b;
                    });
  BeamSelector sel{{order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_rf)}};
  std::sort(sel.indices.begin(), sel.indices.end());
  return sel;
}

CVector equivalent_channel(const BeamSelector& sel, std::span<const cd> hb) {
  CVector he(sel.size());
  for (std::size_t r = 0; r < sel.size(); ++r) {
    if (sel.indices[r] >= hb.size())
      throw Error(ErrorKind::invalid_dimension, "equivalent_channel: beam index " +
                                                    std::to_string(sel.indices[r]) +
                                                    " outside channel of length " +
                                                    std::to_string(hb.size()));
    he[r] = hb[sel.indices[r]];
  }
  return he;
}

EffectiveSteering effective_steering(const BeamSelector& sel, const LensMatrix& lens,
                                     const ComplexMatrix& steering,
                                     const kernels::KernelTable& k) {
  const std::size_t M = lens.size();
  if (steering.rows() != M)
    throw Error(ErrorKind::invalid_dimension, "effective_steering: steering has " +
                                                  std::to_string(steering.rows()) +
                                                  " rows, lens is " + std::to_string(M));
  // Only the selected rows of U A are needed: T = (S^H U) A.
  ComplexMatrix rows(sel.size(), M);
  for (std::size_t r = 0; r < sel.size(); ++r)
    if (sel.indices[r] >= M)
      throw Error(ErrorKind::invalid_dimension, "effective_steering: beam index " +
                                                    std::to_string(sel.indices[r]) +
                                                    " outside lens of size " + std::to_string(M));
  for (std::size_t n = 0; n < M; ++n) {
    const cd* src = lens.matrix().col(n).data();
    cd* dst = rows.col(n).data();
    for (std::size_t r = 0; r < sel.size(); ++r) dst[r] = src[sel.indices[r]];
  }
  EffectiveSteering out{ComplexMatrix(sel.size(), steering.cols())};
  for (std::size_t p = 0; p < steering.cols(); ++p)
    kernels::complex_matvec(k, rows, steering.col(p), out.T.col(p));
  return out;
}

double orthonormality_defect(const ComplexMatrix& t) {
  return frobenius_norm(t.adjoint() * t - ComplexMatrix::identity(t.cols()));
}

}  // namespace lensfb
