#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>
#include <thread>

#include "lensfb/harness.hpp"

namespace lensfb {

int bits_for_point(const SystemConfig& cfg, std::size_t s) {
  const auto& explicit_bits = cfg.bits_rule.explicit_bits;
  if (explicit_bits.empty()) return required_bits_ceil(cfg.P, cfg.K, cfg.snr_grid_db.at(s));
  return explicit_bits.size() == 1 ? explicit_bits.front() : explicit_bits.at(s);
}

Scenario draw_scenario(RngStream& rng, const SystemConfig& cfg, const LensMatrix& lens,
                       const kernels::KernelTable& k) {
  Scenario sc;
  const auto paths = sample_aods(rng, cfg);
  std::vector<CVector> beamspace;
  beamspace.reserve(cfg.K);
  sc.users.reserve(cfg.K);
  for (const auto& p : paths) {
    UserScenario u;
    u.paths = p;
    u.spatial = generate_channel(rng, p, cfg.M);
    u.beamspace = beamspace_transform(lens, u.spatial.h, k);
    beamspace.push_back(u.beamspace);
    sc.users.push_back(std::move(u));
  }
  sc.selector = select_beams(beamspace, cfg.N_RF);
  std::vector<CVector> columns;
  columns.reserve(cfg.K);
  for (auto& u : sc.users) {
    u.equivalent = equivalent_channel(sc.selector, u.beamspace);
    u.steering = effective_steering(sc.selector, lens, u.spatial.steering, k);
    columns.push_back(u.equivalent);
  }
  sc.equivalent_matrix = ComplexMatrix::from_columns(columns);
  return sc;
}

double equivalent_norm2(const SystemConfig& cfg) {
  if (cfg.aod_grid_mode == AodGridMode::on_grid) return static_cast<double>(cfg.P);
  const LensMatrix lens(cfg.M);
  RngStream rng(cfg.root_seed, kPilotStream);
  double total = 0.0;
  for (std::size_t i = 0; i < kPilotRealizations; ++i) {
    const Scenario sc = draw_scenario(rng, cfg, lens);
    double users = 0.0;
    for (const auto& u : sc.users) users += norm2(u.equivalent);
    total += users / static_cast<double>(cfg.K);
  }
  return total / static_cast<double>(kPilotRealizations);
}

namespace {

struct SchemeEval {
  double mean_rate = 0.0;
  double mean_sin2 = 0.0;
};

SchemeEval evaluate_feedback(const Scenario& sc, const std::vector<CVector>& fed_back,
                             double gamma, double sin2_sum) {
  const std::size_t users = sc.users.size();
  const PrecodingMatrix v = zf_precoder(ComplexMatrix::from_columns(fed_back));
  SchemeEval out;
  for (std::size_t k = 0; k < users; ++k)
    out.mean_rate += realized_rate(sc.equivalent_matrix, v, gamma, k).rate;
  out.mean_rate /= static_cast<double>(users);
  out.mean_sin2 = sin2_sum / static_cast<double>(users);
  return out;
}

CVector scaled(const StreamedQuantization& q) {
  CVector out = q.codeword;
  for (auto& z : out) z *= q.quantization.report.magnitude;
  return out;
}

double std_error(const std::vector<double>& values, double mean) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

double mean_of(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;  // ascending trial order
  return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

}  // namespace

TrialOutcome run_trial(const SystemConfig& cfg, const LensMatrix& lens, std::size_t trial,
                       std::size_t snr_index, double gamma, int bits, bool with_subspace,
                       bool with_rvq, const kernels::KernelTable& k) {
  const std::uint64_t unit_id = trial * cfg.snr_grid_db.size() + snr_index;
  const RngStream unit(cfg.root_seed, unit_id);
  RngStream scenario_rng = unit.child(0);
  const Scenario sc = draw_scenario(scenario_rng, cfg, lens, k);

  TrialOutcome out;
  for (const auto& r : ideal_rates(sc.equivalent_matrix, gamma)) out.ideal_rate += r.rate;
  out.ideal_rate /= static_cast<double>(cfg.K);

  if (with_subspace) {
    const RngStream base = unit.child(1);
    const SubspaceSearch mode = cfg.aod_grid_mode == AodGridMode::on_grid
                                    ? SubspaceSearch::fast
                                    : SubspaceSearch::exhaustive;
    std::vector<CVector> fed_back;
    double sin2 = 0.0;
    for (std::size_t u = 0; u < cfg.K; ++u) {
      RngStream rng = base.child(u);
      const auto q = stream_quantize_subspace(rng, sc.users[u].steering, sc.users[u].equivalent,
                                              bits, mode, k);
      sin2 += q.quantization.achieved_sin2;
      fed_back.push_back(scaled(q));
    }
    const SchemeEval e = evaluate_feedback(sc, fed_back, gamma, sin2);
    out.subspace_rate = e.mean_rate;
    out.subspace_sin2 = e.mean_sin2;
  }

  if (with_rvq) {
    const RngStream base = unit.child(2);
    std::vector<CVector> fed_back;
    double sin2 = 0.0;
    for (std::size_t u = 0; u < cfg.K; ++u) {
      RngStream rng = base.child(u);
      const auto q = stream_quantize_rvq(rng, sc.users[u].equivalent, bits, k);
      sin2 += q.quantization.achieved_sin2;
      fed_back.push_back(scaled(q));
    }
    const SchemeEval e = evaluate_feedback(sc, fed_back, gamma, sin2);
    out.rvq_rate = e.mean_rate;
    out.rvq_sin2 = e.mean_sin2;
  }
  return out;
}

ExperimentResult run_experiment(const SystemConfig& cfg, const RunOptions& opts) {
  validate(cfg);
  const LensMatrix lens(cfg.M);
  const double e_norm2 = equivalent_norm2(cfg);
  const std::size_t grid = cfg.snr_grid_db.size();
  const bool want_subspace =
      std::find(cfg.schemes.begin(), cfg.schemes.end(), Scheme::subspace) != cfg.schemes.end();
  const bool want_rvq =
      std::find(cfg.schemes.begin(), cfg.schemes.end(), Scheme::rvq) != cfg.schemes.end();

  std::vector<double> gamma(grid);
  std::vector<int> bits(grid);
  std::vector<std::size_t> rvq_trials(grid, 0);
  for (std::size_t s = 0; s < grid; ++s) {
    gamma[s] = snr_to_power(cfg.snr_grid_db[s], cfg.K, e_norm2);
    bits[s] = bits_for_point(cfg, s);
    if (bits[s] > kMaxCodebookBits)
      throw Error(ErrorKind::resource_limit, "snr " + std::to_string(cfg.snr_grid_db[s]) +
                                                 " dB needs B = " + std::to_string(bits[s]) +
                                                 " bits, above the cap of " +
                                                 std::to_string(kMaxCodebookBits));
    if (want_rvq) {
      const bool capped = cfg.rvq_trial_cap > 0 && bits[s] >= cfg.rvq_cap_min_bits;
      rvq_trials[s] = capped ? std::min(cfg.trials, cfg.rvq_trial_cap) : cfg.trials;
    }
  }

  // Unit u covers trial u / grid at SNR point u % grid (its stream id is u).
  const std::size_t units = cfg.trials * grid;
  std::vector<TrialOutcome> outcomes(units);
  std::vector<std::exception_ptr> errors(units);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) {
      const std::size_t t = u / grid;
      const std::size_t s = u % grid;
      try {
        outcomes[u] = run_trial(cfg, lens, t, s, gamma[s], bits[s], want_subspace,
                                want_rvq && t < rvq_trials[s]);
      } catch (const Error& e) {
        errors[u] = std::make_exception_ptr(
            Error(e.kind(), "trial " + std::to_string(t) + ", snr " +
                                std::to_string(cfg.snr_grid_db[s]) + " dB: " + e.what()));
      } catch (...) {
        errors[u] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(opts.threads, units));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::size_t> order(grid);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cfg.snr_grid_db[a] < cfg.snr_grid_db[b];
  });

  ExperimentResult result;
  for (std::size_t s : order) {
    std::vector<double> ideal;
    for (std::size_t t = 0; t < cfg.trials; ++t) ideal.push_back(outcomes[t * grid + s].ideal_rate);
    const double ideal_mean = mean_of(ideal);
    result.rows.push_back({cfg.snr_grid_db[s], Scheme::ideal, std::nullopt, ideal_mean, 0.0,
                           std::nullopt, cfg.trials, cfg.root_seed, std_error(ideal, ideal_mean)});

    const auto add_scheme = [&](Scheme scheme, std::size_t trials,
                                std::optional<double> TrialOutcome::*field) {
      std::vector<double> rates;
      std::vector<double> gaps;
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialOutcome& o = outcomes[t * grid + s];
        rates.push_back(*(o.*field));
        gaps.push_back(o.ideal_rate - *(o.*field));
      }
      ResultRow row;
      row.snr_db = cfg.snr_grid_db[s];
      row.scheme = scheme;
      row.bits = bits[s];
      row.mean_rate = mean_of(rates);
      row.mean_gap = mean_of(gaps);
      if (scheme == Scheme::subspace)
        row.bound = rate_gap_bound(gamma[s], cfg.K, e_norm2, bits[s], cfg.P);
      row.trials = trials;
      row.seed = cfg.root_seed;
      row.std_err = std_error(gaps, row.mean_gap);
      result.rows.push_back(row);
    };
    if (want_subspace) add_scheme(Scheme::subspace, cfg.trials, &TrialOutcome::subspace_rate);
    if (want_rvq && rvq_trials[s] > 0) add_scheme(Scheme::rvq, rvq_trials[s], &TrialOutcome::rvq_rate);
  }
  return result;
}

}  // namespace lensfb
