#include "serre/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "serre/csv.hpp"

namespace serre {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

constexpr std::array<std::string_view, 13> kConfigKeys = {
    "h0", "h1", "x0", "alpha", "domain_a", "domain_b", "dx",
    "dt_factor", "t_end", "g", "scheme", "out_dir", "snapshot_times"};

}  // namespace

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::D ? "D" : "E";
}

Scheme parse_scheme(std::string_view text) {
  const auto t = trim(text);
  if (t == "D" || t == "d") return Scheme::D;
  if (t == "E" || t == "e") return Scheme::E;
  throw ConfigError("scheme: expected D or E, got '" + std::string(t) + "'");
}

bool SimConfig::x0_is_midpoint() const {
  const double mid = 0.5 * (domain_a + domain_b);
  return std::abs(x0 - mid) <= 1e-12 * std::max(1.0, std::abs(mid));
}

void SimConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(std::isfinite(h0) && h0 > 0.0, "h0 must be > 0");
  require(std::isfinite(h1) && h1 > 0.0, "h1 must be > 0");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
  require(std::isfinite(dx) && dx > 0.0, "dx must be > 0");
  require(std::isfinite(dt_factor) && dt_factor > 0.0, "dt_factor must be > 0");
  require(std::isfinite(g) && g > 0.0, "g must be > 0");
  require(std::isfinite(t_end) && t_end >= 0.0, "t_end must be >= 0");
  require(domain_a < domain_b, "domain_a must be < domain_b");
  require(x0 > domain_a && x0 < domain_b, "x0 must lie strictly inside the domain");
  const double cells = (domain_b - domain_a) / dx;
  require(std::abs(cells - std::round(cells)) <= 1e-9 * std::max(1.0, cells),
          "dx must divide the domain into a whole number of cells");
  require(std::round(cells) >= 5.0, "the domain needs at least 5 cells");
  for (double t : snapshot_times) {
    require(std::isfinite(t) && t >= 0.0, "snapshot_times must be >= 0");
  }
}

double dx_for_level(int k) { return std::ldexp(10.0, -k); }

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("duplicate key: " + key);
    }
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_key_values(buffer.str());
}

double parse_number(std::string_view text, std::string_view key) {
  const auto t = trim(text);
  double value = 0.0;
  if (!parse_double(t, value)) {
    throw ConfigError(std::string(key) + ": not a number: '" + std::string(t) + "'");
  }
  return value;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::string_view rest = trim(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    if (!item.empty()) out.push_back(parse_number(item, "list"));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

SimConfig config_from_key_values(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw ConfigError("unknown key: " + key);
    }
  }
  auto number = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(std::string("missing key: ") + key);
    return parse_number(it->second, key);
  };

  SimConfig c;
  c.h0 = number("h0");
  c.h1 = number("h1");
  c.x0 = number("x0");
  c.alpha = number("alpha");
  c.domain_a = number("domain_a");
  c.domain_b = number("domain_b");
  c.dx = number("dx");
  c.dt_factor = number("dt_factor");
  c.t_end = number("t_end");
  c.g = number("g");
  const auto scheme = kv.find("scheme");
  if (scheme == kv.end()) throw ConfigError("missing key: scheme");
  c.scheme = parse_scheme(scheme->second);
  if (const auto it = kv.find("out_dir"); it != kv.end()) c.out_dir = it->second;
  if (const auto it = kv.find("snapshot_times"); it != kv.end()) {
    c.snapshot_times = parse_number_list(it->second);
  }
  c.validate();
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  return config_from_key_values(read_key_values(path));
}

std::string format_config(const SimConfig& c) {
  std::ostringstream out;
  out << "h0 = " << format_double(c.h0) << '\n'
      << "h1 = " << format_double(c.h1) << '\n'
      << "x0 = " << format_double(c.x0) << '\n'
      << "alpha = " << format_double(c.alpha) << '\n'
      << "domain_a = " << format_double(c.domain_a) << '\n'
      << "domain_b = " << format_double(c.domain_b) << '\n'
      << "dx = " << format_double(c.dx) << '\n'
      << "dt_factor = " << format_double(c.dt_factor) << '\n'
      << "t_end = " << format_double(c.t_end) << '\n'
      << "g = " << format_double(c.g) << '\n'
      << "scheme = " << to_string(c.scheme) << '\n'
      << "out_dir = " << c.out_dir.string() << '\n';
  out << "snapshot_times = ";
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
    if (i) out << ',';
    out << format_double(c.snapshot_times[i]);
  }
  out << '\n';
  return out.str();
}

}  // namespace serre
