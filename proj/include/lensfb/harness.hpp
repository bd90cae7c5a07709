#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "lensfb/beamspace.hpp"
#include "lensfb/channel.hpp"
#include "lensfb/codebook.hpp"
#include "lensfb/precoding.hpp"

namespace lensfb {

// ---------------------------------------------------------------------------
// Configuration

// Flat key=value text; keys are SystemConfig field names, '#' starts a
// comment. Missing keys keep their defaults. Throws Error(invalid_config).
SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::filesystem::path& path);

// Helpers shared by the config parser and the CLI.
std::vector<double> parse_snr_list(std::string_view text);
std::vector<Scheme> parse_schemes(std::string_view text);
AodGridMode parse_grid_mode(std::string_view text);
BitsRule parse_bits_rule(std::string_view text);

// Feedback bits used at SNR point s.
int bits_for_point(const SystemConfig& cfg, std::size_t s);

// E||h^e||^2 for SNR calibration: P on-grid, otherwise a 10^4-realisation
// pilot estimate drawn from stream (root_seed, kPilotStream).
inline constexpr std::uint64_t kPilotStream = ~std::uint64_t{0};
inline constexpr std::size_t kPilotRealizations = 10000;
double equivalent_norm2(const SystemConfig& cfg);

// ---------------------------------------------------------------------------
// One multi-user realisation: AoDs, gains, beamspace, selector and the
// equivalent channels H^e (N_RF x K).

struct UserScenario {
  UserPathSet paths;
  SpatialChannel spatial;
  CVector beamspace;
  CVector equivalent;
  EffectiveSteering steering;
};

struct Scenario {
  std::vector<UserScenario> users;
  BeamSelector selector;
  ComplexMatrix equivalent_matrix;
};

Scenario draw_scenario(RngStream& rng, const SystemConfig& cfg, const LensMatrix& lens,
                       const kernels::KernelTable& k = kernels::active_kernels());

// ---------------------------------------------------------------------------
// Monte Carlo

// Per-user averages for one (trial, SNR) work unit.
struct TrialOutcome {
  double ideal_rate = 0.0;
  std::optional<double> subspace_rate;
  std::optional<double> rvq_rate;
  std::optional<double> subspace_sin2;
  std::optional<double> rvq_sin2;
};

// Stream layout inside a unit: child(0) draws the scenario, child(1).child(k)
// user k's subspace codebook, child(2).child(k) user k's RVQ codebook.
TrialOutcome run_trial(const SystemConfig& cfg, const LensMatrix& lens, std::size_t trial,
                       std::size_t snr_index, double gamma, int bits, bool with_subspace,
                       bool with_rvq, const kernels::KernelTable& k = kernels::active_kernels());

struct ResultRow {
  double snr_db = 0.0;
  Scheme scheme = Scheme::ideal;
  std::optional<int> bits;       // absent for ideal
  double mean_rate = 0.0;
  double mean_gap = 0.0;         // 0 for ideal
  std::optional<double> bound;   // subspace rows only
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double std_err = 0.0;          // of mean_gap (schemes) or mean_rate (ideal)
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
};

struct RunOptions {
  std::size_t threads = 1;
};

ExperimentResult run_experiment(const SystemConfig& cfg, const RunOptions& opts = {});

// ---------------------------------------------------------------------------
// Output

inline constexpr std::string_view kCsvHeader =
    "snr_db,scheme,bits,mean_rate,mean_gap,bound,trials,seed,std_err";

void emit_csv(const ExperimentResult& result, std::ostream& out);
void emit_csv(const ExperimentResult& result, const std::filesystem::path& path);

}  // namespace lensfb
