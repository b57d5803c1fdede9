#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>

#include "serre/csv.hpp"
#include "serre/snapshot.hpp"

namespace serre {

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_short(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view text, double& value) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

double Snapshot::dx() const {
  if (x.size() < 2) throw std::logic_error("snapshot needs two cells to define dx");
  return (x.back() - x.front()) / static_cast<double>(x.size() - 1);
}

Snapshot take_snapshot(const State& state, const Grid& grid) {
  Snapshot s;
  s.t = state.t;
  s.x = grid.interior_centres();
  const auto h = state.interior_h(grid);
  const auto u = state.interior_u(grid);
  s.h.assign(h.begin(), h.end());
  s.u.assign(u.begin(), u.end());
  return s;
}

void write_snapshot_csv(const Snapshot& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "x,h,u\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_double(s.x[i]) << ',' << format_double(s.h[i]) << ','
        << format_double(s.u[i]) << '\n';
  }
}

Snapshot read_snapshot_csv(const std::filesystem::path& path, double t) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,h,u") {
    throw std::runtime_error(path.string() + ": expected header x,h,u");
  }
  Snapshot s;
  s.t = t;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    double x = 0, h = 0, u = 0;
    if (fields.size() != 3 || !parse_double(fields[0], x) || !parse_double(fields[1], h) ||
        !parse_double(fields[2], u)) {
      throw std::runtime_error(path.string() + ": malformed row " + std::to_string(row));
    }
    s.x.push_back(x);
    s.h.push_back(h);
    s.u.push_back(u);
  }
  return s;
}

}  // namespace serre
