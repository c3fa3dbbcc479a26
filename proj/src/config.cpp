#include "shakhov/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "shakhov/error.hpp"

namespace shakhov {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view value, int line, std::string_view key) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("line " + std::to_string(line) + ": cannot parse value '" + std::string(value) +
                      "' for key '" + std::string(key) + "'");
  }
  return out;
}

bool parse_bool(std::string_view value, int line, std::string_view key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": cannot parse value '" + std::string(value) +
                    "' for key '" + std::string(key) + "' (expected true or false)");
}

using Setter = std::function<void(SimConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"pr", [](SimConfig& c, std::string_view v, int l) { c.params.pr = parse_number<double>(v, l, "pr"); }},
      {"tau0", [](SimConfig& c, std::string_view v, int l) { c.params.tau0 = parse_number<double>(v, l, "tau0"); }},
      {"eta", [](SimConfig& c, std::string_view v, int l) { c.params.eta = parse_number<double>(v, l, "eta"); }},
      {"w", [](SimConfig& c, std::string_view v, int l) { c.params.w = parse_number<double>(v, l, "w"); }},
      {"n_v", [](SimConfig& c, std::string_view v, int l) { c.n_v = parse_number<int>(v, l, "n_v"); }},
      {"v_max", [](SimConfig& c, std::string_view v, int l) { c.v_max = parse_number<double>(v, l, "v_max"); }},
      {"n_cells", [](SimConfig& c, std::string_view v, int l) { c.n_cells = parse_number<int>(v, l, "n_cells"); }},
      {"domain_length",
       [](SimConfig& c, std::string_view v, int l) { c.domain_length = parse_number<double>(v, l, "domain_length"); }},
      {"dt", [](SimConfig& c, std::string_view v, int l) { c.dt = parse_number<double>(v, l, "dt"); }},
      {"t_end", [](SimConfig& c, std::string_view v, int l) { c.t_end = parse_number<double>(v, l, "t_end"); }},
      {"output_every",
       [](SimConfig& c, std::string_view v, int l) { c.output_every = parse_number<int>(v, l, "output_every"); }},
      {"ic.kind",
       [](SimConfig& c, std::string_view v, int l) {
         try {
           c.ic.kind = initial_kind_from_string(std::string(v));
         } catch (const std::invalid_argument& e) {
           throw ConfigError("line " + std::to_string(l) + ": " + e.what());
         }
       }},
      {"ic.amplitude",
       [](SimConfig& c, std::string_view v, int l) { c.ic.amplitude = parse_number<double>(v, l, "ic.amplitude"); }},
      {"ic.mode", [](SimConfig& c, std::string_view v, int l) { c.ic.mode = parse_number<int>(v, l, "ic.mode"); }},
      {"enforce_third_moment_zero",
       [](SimConfig& c, std::string_view v, int l) {
         c.enforce_third_moment_zero = parse_bool(v, l, "enforce_third_moment_zero");
       }},
      {"output_path", [](SimConfig& c, std::string_view v, int) { c.output_path = std::string(v); }},
      {"seed", [](SimConfig& c, std::string_view v, int l) { c.seed = parse_number<std::uint64_t>(v, l, "seed"); }},
  };
  return table;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SimConfig parse_config(std::string_view text) {
  SimConfig config;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    it->second(config, value, line_no);
  }
  config.validate();
  return config;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const SimConfig& c) {
  std::ostringstream out;
  out << "pr = " << num(c.params.pr) << '\n'
      << "tau0 = " << num(c.params.tau0) << '\n'
      << "eta = " << num(c.params.eta) << '\n'
      << "w = " << num(c.params.w) << '\n'
      << "n_v = " << c.n_v << '\n'
      << "v_max = " << num(c.v_max) << '\n'
      << "n_cells = " << c.n_cells << '\n'
      << "domain_length = " << num(c.domain_length) << '\n'
      << "dt = " << num(c.dt) << '\n'
      << "t_end = " << num(c.t_end) << '\n'
      << "output_every = " << c.output_every << '\n'
      << "ic.kind = " << to_string(c.ic.kind) << '\n'
      << "ic.amplitude = " << num(c.ic.amplitude) << '\n'
      << "ic.mode = " << c.ic.mode << '\n'
      << "enforce_third_moment_zero = " << (c.enforce_third_moment_zero ? "true" : "false") << '\n'
      << "output_path = " << c.output_path << '\n'
      << "seed = " << c.seed << '\n';
  return out.str();
}

}  // namespace shakhov
