#pragma once

#include <vector>

#include "lensfb/numerics.hpp"

namespace lensfb {

// N_RF x K, unit-norm columns.
struct PrecodingMatrix {
  ComplexMatrix V;
};

struct RateSample {
  double rate = 0.0;                // bits/s/Hz
  double signal = 0.0;              // (gamma/K) |h_k^H v_k|^2
  std::vector<double> interference;  // (gamma/K) |h_k^H v_i|^2, i != k, ascending i
};

// Normalised columns of the right pseudo-inverse of H_hat (N_RF x K).
PrecodingMatrix zf_precoder(const ComplexMatrix& h_hat);

// Rate of user k when the BS precodes with V but the true channel is H_true.
RateSample realized_rate(const ComplexMatrix& h_true, const PrecodingMatrix& v, double gamma,
                         std::size_t k);

// Perfect-CSI rate: V = zf_precoder(H_true), interference taken as zero.
RateSample ideal_rate(const ComplexMatrix& h_true, double gamma, std::size_t k);
// Same for every user, sharing one precoder computation.
std::vector<RateSample> ideal_rates(const ComplexMatrix& h_true, double gamma);

// log2(1 + gamma (K-1)/K E||h^e||^2 2^(-B/(P-1))); 0 for P = 1.
double rate_gap_bound(double gamma, std::size_t K, double e_norm2, int bits, std::size_t P);

// (P-1)/3 SNR_dB + (P-1) log2(K-1); 0 for P = 1, domain error for K < 2.
double required_bits(std::size_t P, std::size_t K, double snr_db);
// Smallest integer B >= required_bits (with 1e-9 slack for rounding noise).
int required_bits_ceil(std::size_t P, std::size_t K, double snr_db);

// gamma = K 10^(SNR/10) / E||h^e||^2.
double snr_to_power(double snr_db, std::size_t K, double e_norm2);

}  // namespace lensfb
