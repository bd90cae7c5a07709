#include "lensfb/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace lensfb {

namespace {

constexpr std::size_t kStreamBlock = 4096;
constexpr double kDegenerateNorm = 1e-12;

std::size_t codebook_size(int bits) {
  if (bits < 0) throw Error(ErrorKind::domain, "codebook: bits must be >= 0");
  if (bits > kMaxCodebookBits)
    throw Error(ErrorKind::resource_limit, "codebook: B = " + std::to_string(bits) +
                                               " exceeds the cap of " +
                                               std::to_string(kMaxCodebookBits) + " bits");
  return std::size_t{1} << bits;
}

// d = T w / ||T w|| written into out (length N_RF).
void subspace_codeword(const ComplexMatrix& t, std::span<const cd> w, std::span<cd> out) {
  std::fill(out.begin(), out.end(), cd{});
  for (std::size_t p = 0; p < t.cols(); ++p) {
    const auto col = t.col(p);
    for (std::size_t r = 0; r < t.rows(); ++r) out[r] += col[r] * w[p];
  }
  const double n = norm(out);
  if (!(n >= kDegenerateNorm))
    throw Error(ErrorKind::degenerate_codeword,
                "subspace codeword has norm " + std::to_string(n) + " (degenerate T)");
  for (auto& z : out) z /= n;
}

struct Best {
  std::size_t index = 0;
  double power = -1.0;

  // True when some element of this batch became the new best.
  bool offer(std::span<const double> powers, std::size_t offset) {
    bool improved = false;
    for (std::size_t i = 0; i < powers.size(); ++i)
      if (powers[i] > power) {
        power = powers[i];
        index = offset + i;
        improved = true;
      }
    return improved;
  }
};

double sin2_from(double power) { return std::clamp(1.0 - power, 0.0, 1.0); }

CVector unit_direction(std::span<const cd> h_e, double& magnitude) {
  magnitude = norm(h_e);
  if (!(magnitude > 0.0) || !std::isfinite(magnitude))
    throw Error(ErrorKind::zero_channel, "quantize: channel has zero (or non-finite) norm");
  CVector h(h_e.begin(), h_e.end());
  for (auto& z : h) z /= magnitude;
  return h;
}

void require_orthonormal(const EffectiveSteering& steering) {
  const double defect = orthonormality_defect(steering.T);
  if (!(defect <= kOrthonormalTolerance))
    throw Error(ErrorKind::precondition,
                "fast subspace search needs T^H T = I (defect " + std::to_string(defect) + ")");
}

}  // namespace

Codebook gen_rvq_codebook(RngStream& rng, std::size_t n_rf, int bits) {
  const std::size_t count = codebook_size(bits);
  if (n_rf == 0) throw Error(ErrorKind::invalid_dimension, "gen_rvq_codebook: n_rf must be >= 1");
  Codebook cb{bits, kernels::PlanarBlock(n_rf, count), std::nullopt};
  CVector d(n_rf);
  for (std::size_t i = 0; i < count; ++i) {
    sample_unit_sphere_into(rng, d);
    cb.entries.set(i, d);
  }
  return cb;
}

Codebook gen_subspace_codebook(RngStream& rng, const EffectiveSteering& steering, int bits) {
  const std::size_t count = codebook_size(bits);
  const ComplexMatrix& t = steering.T;
  Codebook cb{bits, kernels::PlanarBlock(t.rows(), count), kernels::PlanarBlock(t.cols(), count)};
  CVector w(t.cols());
  CVector d(t.rows());
  for (std::size_t i = 0; i < count; ++i) {
    sample_unit_sphere_into(rng, w);
    subspace_codeword(t, w, d);
    cb.weights->set(i, w);
    cb.entries.set(i, d);
  }
  return cb;
}

Quantization quantize(std::span<const cd> h_e, const Codebook& cb, const kernels::KernelTable& k) {
  if (h_e.size() != cb.dim())
    throw Error(ErrorKind::invalid_dimension, "quantize: channel length " +
                                                  std::to_string(h_e.size()) + " vs codebook " +
                                                  std::to_string(cb.dim()));
  double magnitude = 0.0;
  const CVector h = unit_direction(h_e, magnitude);
  std::vector<double> powers(cb.size());
  kernels::correlation_power(k, cb.entries, h, powers, cb.size());
  Best best;
  best.offer(powers, 0);
  return {{best.index, magnitude}, sin2_from(best.power)};
}

Quantization quantize_fast_subspace(std::span<const cd> g_tilde, const Codebook& cb,
                                    const EffectiveSteering& steering, double magnitude,
                                    const kernels::KernelTable& k) {
  if (!cb.weights)
    throw Error(ErrorKind::unsupported_codebook, "quantize_fast_subspace: codebook has no weights");
  if (g_tilde.size() != cb.weights->dim() || steering.T.cols() != cb.weights->dim())
    throw Error(ErrorKind::invalid_dimension, "quantize_fast_subspace: path-count mismatch");
  if (std::abs(norm(g_tilde) - 1.0) > 1e-9)
    throw Error(ErrorKind::precondition, "quantize_fast_subspace: g~ must have unit norm");
  require_orthonormal(steering);
  std::vector<double> powers(cb.size());
  kernels::correlation_power(k, *cb.weights, g_tilde, powers, cb.size());
  Best best;
  best.offer(powers, 0);
  return {{best.index, magnitude}, sin2_from(best.power)};
}

CVector reconstruct(const FeedbackReport& report, const Codebook& cb) {
  if (report.index >= cb.size())
    throw Error(ErrorKind::index_out_of_range, "reconstruct: index " +
                                                   std::to_string(report.index) + " >= " +
                                                   std::to_string(cb.size()));
  CVector out = cb.entry(report.index);
  for (auto& z : out) z *= report.magnitude;
  return out;
}

StreamedQuantization stream_quantize_rvq(RngStream& rng, std::span<const cd> h_e, int bits,
                                         const kernels::KernelTable& k) {
  const std::size_t count = codebook_size(bits);
  const std::size_t dim = h_e.size();
  double magnitude = 0.0;
  const CVector h = unit_direction(h_e, magnitude);

  const std::size_t block = std::min(count, kStreamBlock);
  kernels::PlanarBlock codewords(dim, block);
  std::vector<double> powers(block);
  CVector d(dim);
  CVector winner(dim);
  Best best;
  for (std::size_t start = 0; start < count; start += block) {
    const std::size_t n = std::min(block, count - start);
    for (std::size_t i = 0; i < n; ++i) {
      sample_unit_sphere_into(rng, d);
      codewords.set(i, d);
    }
    kernels::correlation_power(k, codewords, h, powers, n);
    if (best.offer(std::span<const double>(powers.data(), n), start))
      winner = codewords.get(best.index - start);
  }
  return {{{best.index, magnitude}, sin2_from(best.power)}, winner};
}

StreamedQuantization stream_quantize_subspace(RngStream& rng, const EffectiveSteering& steering,
                                              std::span<const cd> h_e, int bits,
                                              SubspaceSearch mode,
                                              const kernels::KernelTable& k) {
  const std::size_t count = codebook_size(bits);
  const ComplexMatrix& t = steering.T;
  if (h_e.size() != t.rows())
    throw Error(ErrorKind::invalid_dimension, "stream_quantize_subspace: channel/T mismatch");
  double magnitude = 0.0;
  const CVector h = unit_direction(h_e, magnitude);
  const std::size_t paths = t.cols();

  // Fast mode scores w_i against g~ = T^H h~.
  CVector target = h;
  if (mode == SubspaceSearch::fast) {
    require_orthonormal(steering);
    target.assign(paths, cd{});
    for (std::size_t p = 0; p < paths; ++p) target[p] = inner(t.col(p), h);
    const CVector back = t * std::span<const cd>(target);
    double residual = 0.0;
    for (std::size_t r = 0; r < h.size(); ++r) residual += std::norm(h[r] - back[r]);
    if (!(std::sqrt(residual) <= kOrthonormalTolerance))
      throw Error(ErrorKind::precondition,
                  "fast subspace search needs h^e in range(T) (residual " +
                      std::to_string(std::sqrt(residual)) + ")");
  }

  const std::size_t block = std::min(count, kStreamBlock);
  const std::size_t scored_dim = (mode == SubspaceSearch::fast) ? paths : t.rows();
  kernels::PlanarBlock scored(scored_dim, block);
  kernels::PlanarBlock weights(paths, block);
  std::vector<double> powers(block);
  CVector w(paths);
  CVector d(t.rows());
  CVector winning_w(paths);
  Best best;
  for (std::size_t start = 0; start < count; start += block) {
    const std::size_t n = std::min(block, count - start);
    for (std::size_t i = 0; i < n; ++i) {
      sample_unit_sphere_into(rng, w);
      if (mode == SubspaceSearch::fast) {
        scored.set(i, w);
      } else {
        subspace_codeword(t, w, d);
        scored.set(i, d);
        weights.set(i, w);
      }
    }
    kernels::correlation_power(k, scored, target, powers, n);
    if (best.offer(std::span<const double>(powers.data(), n), start))
      winning_w = (mode == SubspaceSearch::fast ? scored : weights).get(best.index - start);
  }
  CVector winner(t.rows());
  subspace_codeword(t, winning_w, winner);
  return {{{best.index, magnitude}, sin2_from(best.power)}, winner};
}

}  // namespace lensfb
