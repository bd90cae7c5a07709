// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lensfb/harness.hpp"

using namespace lensfb;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SystemConfig on_grid_scenario(std::size_t P = 3) {
  SystemConfig cfg;
  cfg.M = 128;
  cfg.N_RF = 24;
  cfg.K = 8;
  cfg.P = P;
  return cfg;
}

// Scenarios shared by criteria 1 and 2.
std::vector<Scenario> on_grid_suite(const LensMatrix& lens) {
  const SystemConfig cfg = on_grid_scenario();
  std::vector<Scenario> out;
  for (std::uint64_t s = 0; s < 100; ++s) {
    RngStream rng(11, s);
    out.push_back(draw_scenario(rng, cfg, lens));
  }
  return out;
}

Outcome steering_orthonormal() {
  const LensMatrix lens(128);
  double worst = 0.0;
  for (const auto& sc : on_grid_suite(lens))
    for (const auto& u : sc.users) worst = std::max(worst, orthonormality_defect(u.steering.T));
  return {worst <= 1e-9, fmt("max ||T^H T - I||_F = %.3e over 100 scenarios x 8 users", worst)};
}

Outcome equivalent_norm() {
  const LensMatrix lens(128);
  double worst = 0.0;
  for (const auto& sc : on_grid_suite(lens))
    for (const auto& u : sc.users)
      worst = std::max(worst, std::abs(norm(u.equivalent) - norm(u.spatial.gains)));
  return {worst <= 1e-9, fmt("max | ||h^e|| - ||g|| | = %.3e over 100 scenarios x 8 users", worst)};
}

// Each sample is one user's (channel, codebook) realisation.
Outcome quantization_bound() {
  struct Case {
    std::size_t P;
    int B;
    std::size_t samples;
  };
  // At (2,8) the expected value sits 0.4% under the bound, so 10^4 samples
  // cannot resolve it reliably.
  const std::vector<Case> cases{{2, 4, 10000}, {2, 8, 1000000}, {3, 6, 10000}, {3, 12, 10000}};
  const LensMatrix lens(128);
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    const SystemConfig cfg = on_grid_scenario(c.P);
    const std::size_t scenarios = c.samples / cfg.K;
    double sum = 0.0;
    for (std::size_t t = 0; t < scenarios; ++t) {
      RngStream rng(31 + c.P * 100 + static_cast<std::uint64_t>(c.B), t);
      RngStream scen = rng.child(0);
      const Scenario sc = draw_scenario(scen, cfg, lens);
      for (std::size_t k = 0; k < cfg.K; ++k) {
        RngStream cb = rng.child(1).child(k);
        sum += stream_quantize_subspace(cb, sc.users[k].steering, sc.users[k].equivalent, c.B,
                                        SubspaceSearch::fast)
                   .quantization.achieved_sin2;
      }
    }
    const double mean = sum / static_cast<double>(scenarios * cfg.K);
    const double bound = std::exp2(-static_cast<double>(c.B) / static_cast<double>(c.P - 1));
    const bool case_ok = mean < bound && mean >= 0.5 * bound;
    ok = ok && case_ok;
    detail += fmt("%s(P=%zu,B=%d) %.5f/%.5f=%.3f n=%zu", detail.empty() ? "" : "; ", c.P, c.B,
                  mean, bound, mean / bound, scenarios * cfg.K);
  }
  return {ok, detail};
}

Outcome zf_orthogonality() {
  const LensMatrix lens(128);
  double worst = 0.0;
  for (AodGridMode mode : {AodGridMode::on_grid, AodGridMode::off_grid}) {
    SystemConfig cfg = on_grid_scenario();
    cfg.aod_grid_mode = mode;
    for (std::uint64_t s = 0; s < 100; ++s) {
      RngStream rng(41, s);
      const Scenario sc = draw_scenario(rng, cfg, lens);
      const ComplexMatrix& H = sc.equivalent_matrix;
      const PrecodingMatrix V = zf_precoder(H);
      for (std::size_t k = 0; k < cfg.K; ++k)
        for (std::size_t i = 0; i < cfg.K; ++i)
          if (i != k) worst = std::max(worst, std::abs(inner(H.col(k), V.V.col(i))));
    }
  }
  return {worst <= 1e-9, fmt("max |h_k^H v_i| = %.3e over 100 on-grid + 100 off-grid", worst)};
}

Outcome fast_slow() {
  const LensMatrix lens(128);
  const SystemConfig cfg = on_grid_scenario(3);
  const int B = 8;
  std::size_t mismatches = 0, compared = 0;
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    RngStream rng(51, t);
    RngStream scen = rng.child(0);
    const Scenario sc = draw_scenario(scen, cfg, lens);
    for (std::size_t k = 0; k < cfg.K; ++k) {
      const auto& u = sc.users[k];
      RngStream cbr = rng.child(1).child(k);
      const Codebook cb = gen_subspace_codebook(cbr, u.steering, B);
      const Quantization slow = quantize(u.equivalent, cb);
      const CVector g_tilde = u.steering.T.adjoint() * normalized(u.equivalent);
      const Quantization fast = quantize_fast_subspace(g_tilde, cb, u.steering, norm(u.equivalent));
      ++compared;
      if (slow.report.index != fast.report.index) ++mismatches;
      worst = std::max(worst, std::abs(slow.achieved_sin2 - fast.achieved_sin2));
    }
  }
  return {mismatches == 0 && worst <= 1e-10,
          fmt("%zu/%zu index mismatches, max |d sin^2| = %.3e", mismatches, compared, worst)};
}

// Criterion 6 run, reused by 7 and 8.
struct GapRun {
  ExperimentResult result;
  std::string csv;
};

GapRun* g_gap_run = nullptr;

SystemConfig gap_config() {
  SystemConfig cfg;  // defaults are the reference scenario
  cfg.schemes = {Scheme::subspace, Scheme::rvq};
  return cfg;
}

std::string to_csv(const ExperimentResult& r) {
  std::ostringstream os;
  emit_csv(r, os);
  return os.str();
}

const ResultRow& row_for(const ExperimentResult& r, double snr, Scheme s) {
  for (const auto& row : r.rows)
    if (row.snr_db == snr && row.scheme == s) return row;
  throw Error(ErrorKind::precondition, "missing result row");
}

Outcome gap_structure() {
  static GapRun run;
  const SystemConfig cfg = gap_config();
  run.result = run_experiment(cfg, RunOptions{1});
  run.csv = to_csv(run.result);
  g_gap_run = &run;
  std::ofstream("acceptance_gap.csv") << run.csv;
  std::fputs(run.csv.c_str(), stdout);

  bool a = true, c = true;
  double lo = 1e300, hi = -1e300, prev_rvq = -1e300;
  std::size_t min_sub_trials = ~std::size_t{0}, min_rvq_trials = ~std::size_t{0};
  for (double snr : cfg.snr_grid_db) {
    const ResultRow& sub = row_for(run.result, snr, Scheme::subspace);
    const ResultRow& rvq = row_for(run.result, snr, Scheme::rvq);
    a = a && sub.mean_gap <= 1.0 + 3.0 * sub.std_err;
    lo = std::min(lo, sub.mean_gap);
    hi = std::max(hi, sub.mean_gap);
    c = c && rvq.mean_gap > prev_rvq;
    prev_rvq = rvq.mean_gap;
    if (snr >= 10.0) c = c && rvq.mean_gap > sub.mean_gap;
    min_sub_trials = std::min(min_sub_trials, sub.trials);
    min_rvq_trials = std::min(min_rvq_trials, rvq.trials);
  }
  const bool b = hi - lo < 0.3;
  const bool trials_ok = min_sub_trials >= 500 && min_rvq_trials >= 100;
  return {a && b && c && trials_ok,
          fmt("(a) gap<=1+3se %s; (b) spread %.4f %s; (c) rvq increasing and above %s; "
              "trials sub>=%zu rvq>=%zu",
              a ? "ok" : "FAIL", hi - lo, b ? "ok" : "FAIL", c ? "ok" : "FAIL", min_sub_trials,
              min_rvq_trials)};
}

Outcome bound_dominance() {
  if (!g_gap_run) return {false, "criterion 6 run unavailable"};
  bool ok = true;
  std::string detail;
  for (double snr : gap_config().snr_grid_db) {
    const ResultRow& sub = row_for(g_gap_run->result, snr, Scheme::subspace);
    const bool row_ok = sub.bound && sub.mean_gap <= *sub.bound + 3.0 * sub.std_err;
    ok = ok && row_ok;
    detail += fmt("%s%gdB %.4f<=%.4f", detail.empty() ? "" : "; ", snr, sub.mean_gap,
                  sub.bound.value_or(NAN));
  }
  return {ok, detail};
}

Outcome determinism() {
  if (!g_gap_run) return {false, "criterion 6 run unavailable"};
  const std::string again = to_csv(run_experiment(gap_config(), RunOptions{3}));
  std::ofstream("acceptance_gap_threads3.csv") << again;
  const bool same = again == g_gap_run->csv;
  return {same, fmt("threads=1 vs threads=3: %s (%zu bytes)", same ? "byte-identical" : "DIFFER",
                    again.size())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "orthonormal effective steering", 5, steering_orthonormal},
      {2, "equivalent channel norm", 5, equivalent_norm},
      {3, "subspace quantization error bound", 120, quantization_bound},
      {4, "ZF orthogonality under perfect CSI", 5, zf_orthogonality},
      {5, "fast/slow subspace quantizer equivalence", 30, fast_slow},
      {6, "rate gap structure over the SNR grid", 600, gap_structure},
      {7, "analytic rate gap bound dominance", 600, bound_dominance},
      {8, "determinism across thread counts", 600, determinism},
  };
  std::printf("kernels: %s\n", kernels::active_kernels().name);
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s | %s | %.2fs (limit %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), o.detail.c_str(), secs, c.limit_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
