#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lensfb/error.hpp"

namespace lensfb {

using cd = std::complex<double>;
using CVector = std::vector<cd>;

inline constexpr double kPi = 3.14159265358979323846;

// Reproducible random stream.
//
// A stream is identified by (root_seed, stream_id). The generator is
// xoshiro256** whose 256-bit state is filled with four consecutive
// splitmix64 outputs, starting from
//
//   mix64(root_seed) ^ mix64(stream_id + 0x9E3779B97F4A7C15)
//
// where mix64 is the splitmix64 finaliser. child(label) derives the stream
// (root_seed, mix64(stream_id ^ mix64(label + 1))). This derivation is part
// of the on-disk reproducibility contract: changing it changes every CSV.
class RngStream {
 public:
  RngStream(std::uint64_t root_seed, std::uint64_t stream_id);

  std::uint64_t root_seed() const noexcept { return root_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  RngStream child(std::uint64_t label) const;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1].
  double uniform_open_zero() noexcept;
  /// Uniform integer on [0, n); n > 0. Unbiased (rejection).
  std::uint64_t below(std::uint64_t n) noexcept;
  /// Circularly-symmetric complex Gaussian, E|z|^2 = 1 (polar method).
  cd complex_gaussian() noexcept;

 private:
  std::uint64_t root_seed_;
  std::uint64_t stream_id_;
  std::uint64_t s_[4];
};

std::uint64_t mix64(std::uint64_t x) noexcept;

CVector sample_complex_gaussian(RngStream& rng, std::size_t n);
CVector sample_unit_sphere(RngStream& rng, std::size_t n);
// Writes a unit-sphere sample into out without allocating; same draw order
// as sample_unit_sphere.
void sample_unit_sphere_into(RngStream& rng, std::span<cd> out);

// Dense complex matrix, column-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_columns(std::span<const CVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cd& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  cd operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<cd> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const cd> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  std::span<const cd> data() const noexcept { return data_; }
  std::span<cd> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cd> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
CVector operator*(const ComplexMatrix& a, std::span<const cd> x);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);
double norm2(std::span<const cd> v);
double norm(std::span<const cd> v);
/// x^H y
cd inner(std::span<const cd> x, std::span<const cd> y);
CVector normalized(std::span<const cd> v);

// Reciprocal condition number below which a Gram matrix is treated as singular.
inline constexpr double kMinGramRcond = 1e-12;

// Cholesky-based inverse of a Hermitian positive-definite matrix. Returns the
// inverse and writes the reciprocal 1-norm condition number to rcond.
// Throws SingularMatrixError when the factorisation breaks down or
// rcond < min_rcond.
ComplexMatrix hpd_inverse(const ComplexMatrix& gram, double& rcond,
                          double min_rcond = kMinGramRcond);

/// F (F^H F)^{-1} for a tall matrix F with full column rank.
ComplexMatrix right_pseudo_inverse(const ComplexMatrix& f,
                                   double min_rcond = kMinGramRcond);

}  // namespace lensfb
