#include "peakon/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "peakon/errors.hpp"

namespace peakon::io {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw FormatError("not a real number: '" + t + "'");
  }
  return v;
}

}  // namespace

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Config parse_config(std::istream& in, Config base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const double v = parse_real(line.substr(eq + 1));
    if (key == "c1") base.c1 = v;
    else if (key == "c2") base.c2 = v;
    else if (key == "t0") base.t0 = v;
    else if (key == "alpha") base.alpha = v;
    else throw FormatError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return base;
}

Config read_config_file(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return parse_config(in, base);
}

void write_config(std::ostream& out, const Config& cfg) {
  out << "c1 = " << number(cfg.c1) << '\n'
      << "c2 = " << number(cfg.c2) << '\n'
      << "t0 = " << number(cfg.t0) << '\n'
      << "alpha = " << number(cfg.alpha) << '\n';
}

void write_profile_csv(std::ostream& out, const LagrangianProfile& p, bool header) {
  if (header) out << kProfileColumns << '\n';
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    out << number(p.t) << ',' << number(p.xi(i)) << ',' << number(p.y(i)) << ','
        << number(p.y_xi(i)) << ',' << number(p.U(i)) << ',' << number(p.U_xi(i)) << ','
        << number(p.h(i)) << ',' << number(p.h_bar(i)) << '\n';
  }
}

LagrangianProfile read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kProfileColumns) {
    throw FormatError(std::string("expected header ") + kProfileColumns);
  }
  std::vector<std::array<double, 8>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::array<double, 8> r{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= r.size()) throw FormatError("too many columns: " + line);
      r[k++] = parse_real(cell);
    }
    if (k != r.size()) throw FormatError("too few columns: " + line);
    if (!rows.empty() && r[0] != rows.front()[0]) throw FormatError("rows with different t");
    rows.push_back(r);
  }
  if (rows.empty()) throw FormatError("no rows");
  Eigen::ArrayXd xi(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) xi(static_cast<Eigen::Index>(i)) = rows[i][1];
  LagrangianProfile p(rows.front()[0], xi, {});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    p.set(static_cast<Eigen::Index>(i), {r[2], r[3], r[4], r[5], r[6], r[7]});
  }
  return p;
}

nlohmann::json profile_to_json(const LagrangianProfile& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    rows.push_back({{"t", p.t}, {"xi", p.xi(i)}, {"y", p.y(i)}, {"y_xi", p.y_xi(i)},
                    {"U", p.U(i)}, {"U_xi", p.U_xi(i)}, {"h", p.h(i)}, {"h_bar", p.h_bar(i)}});
  }
  return rows;
}

void write_trace_rows(std::ostream& out, const LagrangianProfile& p, int stride) {
  if (stride < 1) stride = 1;
  for (Eigen::Index i = 0; i < p.size(); i += stride) {
    out << number(p.t) << ',' << number(p.xi(i)) << ',' << number(p.y(i)) << ','
        << number(p.U(i)) << ',' << number(p.h(i)) << ',' << number(p.h_bar(i)) << '\n';
  }
}

nlohmann::json measure_to_json(const Measure& m, std::span<const double> sample_x) {
  nlohmann::json j;
  j["breakpoints"] = nlohmann::json::array();
  for (double b : m.breakpoints()) j["breakpoints"].push_back(b);
  j["atoms"] = nlohmann::json::array();
  for (const Atom& a : m.atoms()) j["atoms"].push_back({{"x", a.x}, {"mass", a.mass}});
  j["samples"] = nlohmann::json::array();
  for (double x : sample_x) j["samples"].push_back({{"x", x}, {"density", m.density(x)}});
  return j;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_real(cell));
  if (out.empty()) throw FormatError("empty list");
  return out;
}

}  // namespace peakon::io
