#include "lensfb/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lensfb {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::ideal: return "ideal";
    case Scheme::subspace: return "subspace";
    case Scheme::rvq: return "rvq";
  }
  return "?";
}

const char* to_string(AodGridMode m) {
  return m == AodGridMode::on_grid ? "on_grid" : "off_grid";
}

namespace {

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorKind::invalid_config, msg);
}

std::string num(std::size_t v) { return std::to_string(v); }

constexpr double kMinPsiSeparation = 1e-6;

}  // namespace

void validate(const SystemConfig& cfg) {
  if (cfg.P < 1) config_error("P must be >= 1 (got " + num(cfg.P) + ")");
  if (cfg.K < 1) config_error("K must be >= 1 (got " + num(cfg.K) + ")");
  if (cfg.K > cfg.N_RF)
    config_error("K (" + num(cfg.K) + ") must not exceed N_RF (" + num(cfg.N_RF) + ")");
  if (cfg.N_RF > cfg.M)
    config_error("N_RF (" + num(cfg.N_RF) + ") must not exceed M (" + num(cfg.M) + ")");
  if (cfg.P > cfg.N_RF)
    config_error("P (" + num(cfg.P) + ") must not exceed N_RF (" + num(cfg.N_RF) + ")");
  if (!(cfg.d_over_lambda > 0.0 && cfg.d_over_lambda <= 0.5))
    config_error("d_over_lambda must lie in (0, 0.5] (got " + std::to_string(cfg.d_over_lambda) + ")");
  if (cfg.trials < 1) config_error("trials must be >= 1");
  if (cfg.snr_grid_db.empty()) config_error("snr_grid_db must contain at least one point");
  for (double s : cfg.snr_grid_db)
    if (!std::isfinite(s)) config_error("snr_grid_db contains a non-finite value");
  if (cfg.schemes.empty()) config_error("schemes must name at least one of subspace, rvq");
  for (Scheme s : cfg.schemes)
    if (s == Scheme::ideal) config_error("schemes: 'ideal' is always evaluated and cannot be listed");
  const auto& bits = cfg.bits_rule.explicit_bits;
  if (bits.size() > 1 && bits.size() != cfg.snr_grid_db.size())
    config_error("bits_rule lists " + num(bits.size()) + " values but snr_grid_db has " +
                 num(cfg.snr_grid_db.size()) + " points");
  for (int b : bits)
    if (b < 0) config_error("bits_rule values must be >= 0");
  if (cfg.bits_rule.uses_formula() && (cfg.K < 2 || cfg.P < 1))
    config_error("bits_rule=formula needs K >= 2 (log2(K-1) is undefined for K=1)");
}

double grid_psi(std::size_t m, std::size_t M) {
  const auto mi = static_cast<double>(m);
  const auto Mi = static_cast<double>(M);
  return (2 * m >= M) ? (mi - Mi) / Mi : mi / Mi;
}

CVector steering_vector(double psi, std::size_t M) {
  if (M == 0) throw Error(ErrorKind::invalid_dimension, "steering_vector: M must be >= 1");
  CVector a(M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (std::size_t m = 0; m < M; ++m) {
    // Reduce psi*m modulo 1 before forming the phase to keep it accurate at large m.
    double turns = psi * static_cast<double>(m);
    turns -= std::round(turns);
    const double phase = -2.0 * kPi * turns;
    a[m] = {scale * std::cos(phase), scale * std::sin(phase)};
  }
  return a;
}

std::vector<UserPathSet> sample_aods(RngStream& rng, const SystemConfig& cfg) {
  std::vector<UserPathSet> users(cfg.K);
  const double d = cfg.d_over_lambda;

  if (cfg.aod_grid_mode == AodGridMode::on_grid) {
    std::vector<double> candidates;
    for (std::size_t m = 0; m < cfg.M; ++m) {
      const double psi = grid_psi(m, cfg.M);
      if (std::abs(psi) <= d + 1e-15) candidates.push_back(psi);
    }
    const std::size_t need = cfg.K * cfg.P;
    if (need > candidates.size())
      throw Error(ErrorKind::infeasible_grid,
                  "sample_aods: K*P = " + std::to_string(need) + " exceeds the " +
                      std::to_string(candidates.size()) + " available grid directions");
    // Partial Fisher-Yates: the first `need` slots become a uniform draw
    // without replacement.
    for (std::size_t i = 0; i < need; ++i) {
      const std::size_t j = i + rng.below(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
    }
    std::size_t next = 0;
    for (auto& u : users) {
      for (std::size_t p = 0; p < cfg.P; ++p) {
        const double psi = candidates[next++];
        u.psis.push_back(psi);
        u.thetas.push_back(std::asin(std::clamp(psi / d, -1.0, 1.0)));
      }
    }
    return users;
  }

  for (auto& u : users) {
    while (u.psis.size() < cfg.P) {
      const double theta = (rng.uniform() - 0.5) * kPi;
      const double psi = d * std::sin(theta);
      const bool collides = std::any_of(u.psis.begin(), u.psis.end(), [&](double other) {
        return std::abs(other - psi) < kMinPsiSeparation;
      });
      if (collides) continue;
      u.psis.push_back(psi);
      u.thetas.push_back(theta);
    }
  }
  return users;
}

SpatialChannel build_channel(const UserPathSet& paths, std::span<const cd> gains, std::size_t M) {
  if (paths.paths() == 0 || gains.size() != paths.paths())
    throw Error(ErrorKind::invalid_dimension, "build_channel: need one gain per path");
  SpatialChannel ch{ComplexMatrix(M, paths.paths()), CVector(gains.begin(), gains.end()),
                    CVector(M)};
  for (std::size_t p = 0; p < paths.paths(); ++p) {
    const CVector a = steering_vector(paths.psis[p], M);
    std::copy(a.begin(), a.end(), ch.steering.col(p).begin());
  }
  ch.h = ch.steering * std::span<const cd>(ch.gains);
  return ch;
}

SpatialChannel generate_channel(RngStream& rng, const UserPathSet& paths, std::size_t M) {
  if (paths.paths() == 0) throw Error(ErrorKind::invalid_dimension, "generate_channel: no paths");
  const CVector gains = sample_complex_gaussian(rng, paths.paths());
  return build_channel(paths, gains, M);
}

}  // namespace lensfb
