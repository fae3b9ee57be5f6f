#ifndef PEAKON_IO_HPP_
#define PEAKON_IO_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "peakon/measures.hpp"
#include "peakon/params.hpp"
#include "peakon/profile.hpp"

namespace peakon::io {

/// "%.17g"
std::string number(double v);

/// `key = value` lines with keys c1, c2, t0, alpha; '#' starts a comment.
/// Missing keys keep their value in `base`. Throws FormatError on unknown
/// keys or unparsable values; the result is not validated.
Config parse_config(std::istream& in, Config base = {});
Config read_config_file(const std::string& path, Config base = {});
void write_config(std::ostream& out, const Config& cfg);

/// Columns t, xi, y, y_xi, U, U_xi, h, h_bar.
inline constexpr const char* kProfileColumns = "t,xi,y,y_xi,U,U_xi,h,h_bar";
void write_profile_csv(std::ostream& out, const LagrangianProfile& p, bool header = true);
/// Reads the rows written by write_profile_csv (all rows must share t).
LagrangianProfile read_profile_csv(std::istream& in);
nlohmann::json profile_to_json(const LagrangianProfile& p);

/// Columns t, xi, y, U, h, h_bar, every `stride`-th node.
inline constexpr const char* kTraceColumns = "t,xi,y,U,h,h_bar";
void write_trace_rows(std::ostream& out, const LagrangianProfile& p, int stride);

/// {breakpoints: [...], atoms: [{x, mass}], samples: [{x, density}]}.
nlohmann::json measure_to_json(const Measure& m, std::span<const double> sample_x);

/// Parses a comma-separated list of reals. Throws FormatError.
std::vector<double> parse_list(const std::string& text);

}  // namespace peakon::io

#endif  // PEAKON_IO_HPP_
