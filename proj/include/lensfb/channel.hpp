#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lensfb/numerics.hpp"

namespace lensfb {

enum class Scheme { ideal, subspace, rvq };
enum class AodGridMode { on_grid, off_grid };

const char* to_string(Scheme s);
const char* to_string(AodGridMode m);

// Feedback bit budget per SNR point: either the closed-form scaling law
// (ceiling taken per point) or explicit values.
struct BitsRule {
  // Empty: use the scaling law. One value: applied to every SNR point.
  // Otherwise one value per SNR point.
  std::vector<int> explicit_bits;

  bool uses_formula() const noexcept { return explicit_bits.empty(); }
};

struct SystemConfig {
  std::size_t M = 128;      // BS antennas
  std::size_t N_RF = 24;    // RF chains
  std::size_t K = 8;        // users
  std::size_t P = 3;        // paths per user
  double d_over_lambda = 0.5;
  std::vector<double> snr_grid_db{0.0, 5.0, 10.0, 15.0};
  std::size_t trials = 500;
  std::uint64_t root_seed = 1;
  std::vector<Scheme> schemes{Scheme::subspace, Scheme::rvq};
  BitsRule bits_rule;
  AodGridMode aod_grid_mode = AodGridMode::on_grid;

  // RVQ has no fast search path; at B >= rvq_cap_min_bits only the first
  // rvq_trial_cap trials evaluate RVQ (0 disables the cap).
  std::size_t rvq_trial_cap = 100;
  int rvq_cap_min_bits = 14;
};

// Throws Error(invalid_config) naming the offending keys.
void validate(const SystemConfig& cfg);

struct UserPathSet {
  std::vector<double> psis;    // spatial frequencies (d/lambda) sin(theta)
  std::vector<double> thetas;  // AoDs in radians

  std::size_t paths() const noexcept { return psis.size(); }
};

struct SpatialChannel {
  ComplexMatrix steering;  // M x P, columns a(psi_i)
  CVector gains;           // g
  CVector h;               // steering * gains
};

// Entry m is exp(-j 2 pi psi m) / sqrt(M).
CVector steering_vector(double psi, std::size_t M);

// Spatial frequency of lens beam m, wrapped to [-1/2, 1/2).
double grid_psi(std::size_t m, std::size_t M);

// K path sets (psis and thetas only). On-grid draws are distinct across all
// users; off-grid draws are resampled until a user's psis differ by >= 1e-6.
std::vector<UserPathSet> sample_aods(RngStream& rng, const SystemConfig& cfg);

// Deterministic construction from given psis and gains.
SpatialChannel build_channel(const UserPathSet& paths, std::span<const cd> gains, std::size_t M);

// Draws unit-variance gains, then builds h = A g.
SpatialChannel generate_channel(RngStream& rng, const UserPathSet& paths, std::size_t M);

}  // namespace lensfb
