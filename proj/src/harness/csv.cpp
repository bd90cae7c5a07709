#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "lensfb/harness.hpp"

namespace lensfb {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void emit_csv(const ExperimentResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.rows) {
    out << fmt_double(r.snr_db) << ',' << to_string(r.scheme) << ','
        << (r.bits ? std::to_string(*r.bits) : std::string{}) << ',' << fmt_double(r.mean_rate)
        << ',' << fmt_double(r.mean_gap) << ','
        << (r.bound ? fmt_double(*r.bound) : std::string{}) << ',' << r.trials << ',' << r.seed
        << ',' << fmt_double(r.std_err) << '\n';
  }
}

void emit_csv(const ExperimentResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  emit_csv(result, out);
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write to " + path.string() + " failed");
}

}  // namespace lensfb
