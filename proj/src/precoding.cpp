#include "lensfb/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lensfb {

PrecodingMatrix zf_precoder(const ComplexMatrix& h_hat) {
  if (h_hat.cols() > h_hat.rows())
    throw Error(ErrorKind::invalid_dimension, "zf_precoder: K = " + std::to_string(h_hat.cols()) +
                                                  " exceeds N_RF = " +
                                                  std::to_string(h_hat.rows()));
  PrecodingMatrix out{right_pseudo_inverse(h_hat)};
  for (std::size_t i = 0; i < out.V.cols(); ++i) {
    auto col = out.V.col(i);
    const double n = norm(col);
    for (auto& z : col) z /= n;
  }
  return out;
}

RateSample realized_rate(const ComplexMatrix& h_true, const PrecodingMatrix& v, double gamma,
                         std::size_t k) {
  const std::size_t users = h_true.cols();
  if (v.V.rows() != h_true.rows() || v.V.cols() != users)
    throw Error(ErrorKind::invalid_dimension, "realized_rate: channel/precoder shape mismatch");
  if (k >= users) throw Error(ErrorKind::index_out_of_range, "realized_rate: user index");
  if (!(gamma > 0.0)) throw Error(ErrorKind::domain, "realized_rate: gamma must be > 0");

  const double per_user = gamma / static_cast<double>(users);
  const auto hk = h_true.col(k);
  RateSample s;
  double interference = 0.0;
  for (std::size_t i = 0; i < users; ++i) {
    const double p = per_user * std::norm(inner(hk, v.V.col(i)));
    if (i == k) {
      s.signal = p;
    } else {
      s.interference.push_back(p);
      interference += p;
    }
  }
  s.rate = std::log2(1.0 + s.signal / (1.0 + interference));
  return s;
}

std::vector<RateSample> ideal_rates(const ComplexMatrix& h_true, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::domain, "ideal_rate: gamma must be > 0");
  const PrecodingMatrix v = zf_precoder(h_true);
  const std::size_t users = h_true.cols();
  const double per_user = gamma / static_cast<double>(users);
  std::vector<RateSample> out(users);
  for (std::size_t k = 0; k < users; ++k) {
    out[k].signal = per_user * std::norm(inner(h_true.col(k), v.V.col(k)));
    out[k].interference.assign(users - 1, 0.0);
    out[k].rate = std::log2(1.0 + out[k].signal);
  }
  return out;
}

RateSample ideal_rate(const ComplexMatrix& h_true, double gamma, std::size_t k) {
  if (k >= h_true.cols()) throw Error(ErrorKind::index_out_of_range, "ideal_rate: user index");
  return ideal_rates(h_true, gamma)[k];
}

double rate_gap_bound(double gamma, std::size_t K, double e_norm2, int bits, std::size_t P) {
  if (P <= 1 || K <= 1) return 0.0;
  const double k = static_cast<double>(K);
  const double err = std::exp2(-static_cast<double>(bits) / static_cast<double>(P - 1));
  return std::log2(1.0 + gamma * (k - 1.0) / k * e_norm2 * err);
}

double required_bits(std::size_t P, std::size_t K, double snr_db) {
  if (P <= 1) return 0.0;
  if (K < 2)
    throw Error(ErrorKind::domain, "required_bits: K = " + std::to_string(K) +
                                       " makes log2(K-1) undefined");
  const double p1 = static_cast<double>(P - 1);
  return p1 / 3.0 * snr_db + p1 * std::log2(static_cast<double>(K - 1));
}

int required_bits_ceil(std::size_t P, std::size_t K, double snr_db) {
  const double b = required_bits(P, K, snr_db);
  return std::max(0, static_cast<int>(std::ceil(b - 1e-9)));
}

double snr_to_power(double snr_db, std::size_t K, double e_norm2) {
  if (!(e_norm2 > 0.0))
    throw Error(ErrorKind::domain, "snr_to_power: E||h^e||^2 must be > 0");
  return static_cast<double>(K) * std::pow(10.0, snr_db / 10.0) / e_norm2;
}

}  // namespace lensfb
