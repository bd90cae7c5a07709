#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "lensfb/harness.hpp"

namespace lensfb {

namespace {

[[noreturn]] void fail(std::string_view key, const std::string& msg) {
  throw Error(ErrorKind::invalid_config, std::string(key) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end)
    fail(key, "cannot parse '" + std::string(text) + "' as a number");
  return value;
}

}  // namespace

std::vector<double> parse_snr_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(parse_number<double>("snr_grid_db", item));
  return out;
}

std::vector<Scheme> parse_schemes(std::string_view text) {
  text = trim(text);
  if (text == "both") return {Scheme::subspace, Scheme::rvq};
  std::vector<Scheme> out;
  for (auto item : split_list(text)) {
    Scheme s;
    if (item == "subspace") s = Scheme::subspace;
    else if (item == "rvq") s = Scheme::rvq;
    else fail("schemes", "unknown scheme '" + std::string(item) + "' (expected subspace, rvq or both)");
    for (Scheme seen : out)
      if (seen == s) fail("schemes", "scheme '" + std::string(item) + "' listed twice");
    out.push_back(s);
  }
  // Canonical order keeps CSV row order independent of how the list was written.
  if (out.size() == 2 && out[0] == Scheme::rvq) std::swap(out[0], out[1]);
  return out;
}

AodGridMode parse_grid_mode(std::string_view text) {
  text = trim(text);
  if (text == "on_grid" || text == "on") return AodGridMode::on_grid;
  if (text == "off_grid" || text == "off") return AodGridMode::off_grid;
  fail("aod_grid_mode", "expected on_grid or off_grid, got '" + std::string(text) + "'");
}

BitsRule parse_bits_rule(std::string_view text) {
  text = trim(text);
  if (text == "formula") return {};
  BitsRule rule;
  for (auto item : split_list(text)) {
    const int b = parse_number<int>("bits_rule", item);
    if (b < 0) fail("bits_rule", "feedback bits must be >= 0");
    rule.explicit_bits.push_back(b);
  }
  return rule;
}

SystemConfig parse_config(std::string_view text) {
  SystemConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::invalid_config,
                  "line " + std::to_string(line_no) + ": expected key=value, got '" +
                      std::string(line) + "'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) fail(key, "duplicate key");

    if (key == "M") cfg.M = parse_number<std::size_t>(key, value);
    else if (key == "N_RF") cfg.N_RF = parse_number<std::size_t>(key, value);
    else if (key == "K") cfg.K = parse_number<std::size_t>(key, value);
    else if (key == "P") cfg.P = parse_number<std::size_t>(key, value);
    else if (key == "d_over_lambda") cfg.d_over_lambda = parse_number<double>(key, value);
    else if (key == "snr_grid_db") cfg.snr_grid_db = parse_snr_list(value);
    else if (key == "trials") cfg.trials = parse_number<std::size_t>(key, value);
    else if (key == "root_seed") cfg.root_seed = parse_number<std::uint64_t>(key, value);
    else if (key == "schemes") cfg.schemes = parse_schemes(value);
    else if (key == "bits_rule") cfg.bits_rule = parse_bits_rule(value);
    else if (key == "aod_grid_mode") cfg.aod_grid_mode = parse_grid_mode(value);
    else if (key == "rvq_trial_cap") cfg.rvq_trial_cap = parse_number<std::size_t>(key, value);
    else if (key == "rvq_cap_min_bits") cfg.rvq_cap_min_bits = parse_number<int>(key, value);
    else fail(key, "unknown key");
  }
  validate(cfg);
  return cfg;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace lensfb
