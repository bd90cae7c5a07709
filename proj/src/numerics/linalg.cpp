#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "lensfb/numerics.hpp"

namespace lensfb {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0)
    throw Error(ErrorKind::invalid_dimension, "ComplexMatrix: dimensions must be positive");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty())
    throw Error(ErrorKind::invalid_dimension, "ComplexMatrix::from_columns: no columns");
  ComplexMatrix out(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != out.rows())
      throw Error(ErrorKind::invalid_dimension, "ComplexMatrix::from_columns: ragged columns");
    std::copy(columns[c].begin(), columns[c].end(), out.col(c).begin());
  }
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) out(c, r) = std::conj((*this)(r, c));
  return out;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](cd z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::invalid_dimension, "matrix product: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cd bkj = b(k, j);
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
    }
  return out;
}

CVector operator*(const ComplexMatrix& a, std::span<const cd> x) {
  if (a.cols() != x.size())
    throw Error(ErrorKind::invalid_dimension, "matrix-vector product: dimension mismatch");
  CVector out(a.rows());
  for (std::size_t k = 0; k < a.cols(); ++k)
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] += a(i, k) * x[k];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::invalid_dimension, "matrix difference: shape mismatch");
  ComplexMatrix out = a;
  auto dst = out.data();
  auto src = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
  return out;
}

double frobenius_norm(const ComplexMatrix& a) { return norm(a.data()); }

double norm2(std::span<const cd> v) {
  double s = 0.0;
  for (cd z : v) s += std::norm(z);
  return s;
}

double norm(std::span<const cd> v) { return std::sqrt(norm2(v)); }

cd inner(std::span<const cd> x, std::span<const cd> y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::invalid_dimension, "inner product: length mismatch");
  cd s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

CVector normalized(std::span<const cd> v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw Error(ErrorKind::domain, "normalized: zero vector");
  CVector out(v.begin(), v.end());
  for (auto& z : out) z /= n;
  return out;
}

namespace {

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double s = 0.0;
    for (cd z : a.col(c)) s += std::abs(z);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

ComplexMatrix hpd_inverse(const ComplexMatrix& gram, double& rcond, double min_rcond) {
  const std::size_t n = gram.rows();
  if (gram.cols() != n) throw Error(ErrorKind::invalid_dimension, "hpd_inverse: matrix not square");
  if (!gram.all_finite()) throw SingularMatrixError("hpd_inverse: non-finite Gram matrix", 0.0);

  // Lower-triangular L with gram = L L^H.
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = gram(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) {
      rcond = 0.0;
      throw SingularMatrixError(
          "hpd_inverse: Gram matrix not positive definite (pivot " + std::to_string(j) + ")", 0.0);
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cd s = gram(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }

  // Solve L Y = I column by column, then L^H X = Y.
  ComplexMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    CVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
      cd s = (i == c) ? cd{1.0} : cd{0.0};
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
      y[i] = s / l(i, i).real();
    }
    for (std::size_t ii = n; ii-- > 0;) {
      cd s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * inv(k, c);
      inv(ii, c) = s / l(ii, ii).real();
    }
  }

  rcond = 1.0 / (one_norm(gram) * one_norm(inv));
  if (!std::isfinite(rcond) || rcond < min_rcond) {
    const double reported = std::isfinite(rcond) ? rcond : 0.0;
    rcond = reported;
    char msg[96];
    std::snprintf(msg, sizeof msg, "hpd_inverse: ill-conditioned Gram matrix (rcond %.3e)", reported);
    throw SingularMatrixError(msg, reported);
  }
  return inv;
}

ComplexMatrix right_pseudo_inverse(const ComplexMatrix& f, double min_rcond) {
  if (f.rows() < f.cols())
    throw Error(ErrorKind::invalid_dimension, "right_pseudo_inverse: needs rows >= cols");
  double rcond = 0.0;
  const ComplexMatrix gram = f.adjoint() * f;
  return f * hpd_inverse(gram, rcond, min_rcond);
}

}  // namespace lensfb
