// Command-line front end for the peakon-antipeakon solution.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "peakon/errors.hpp"
#include "peakon/eulerian.hpp"
#include "peakon/io.hpp"
#include "peakon/lagrangian.hpp"
#include "peakon/measures.hpp"
#include "peakon/oracle.hpp"
#include "peakon/params.hpp"
#include "peakon/verification.hpp"

namespace {

using peakon::io::number;
using Json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kInvariantFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunSpec {
  peakon::Config cfg;
  std::string config_file;
  double xmin = -10.0;
  double xmax = 10.0;
  int nx = 401;
  std::string times;
  std::string out;
  std::string format = "csv";
  // oracle-compare
  double dt = 1e-3;
  int nodes = 2000;
  std::string trace;
  int stride = 50;
  // verify
  bool no_oracle = false;
};

peakon::Problem problem_of(const RunSpec& s, const std::vector<std::string>& explicit_keys) {
  peakon::Config c = peakon::reference_problem().cfg;
  if (!s.config_file.empty()) c = peakon::io::read_config_file(s.config_file, c);
  for (const std::string& k : explicit_keys) {
    if (k == "c1") c.c1 = s.cfg.c1;
    if (k == "c2") c.c2 = s.cfg.c2;
    if (k == "t0") c.t0 = s.cfg.t0;
    if (k == "alpha") c.alpha = s.cfg.alpha;
  }
  return peakon::Problem(peakon::make_config(c.c1, c.c2, c.t0, c.alpha));
}

std::vector<double> times_of(const RunSpec& s) {
  if (s.times.empty()) throw UsageError("--times must list at least one time");
  std::vector<double> t;
  try {
    t = peakon::io::parse_list(s.times);
  } catch (const peakon::FormatError& e) {
    throw UsageError(std::string("--times: ") + e.what());
  }
  if (!std::is_sorted(t.begin(), t.end())) throw UsageError("--times must be sorted");
  return t;
}

Eigen::ArrayXd grid_of(const RunSpec& s) {
  if (s.nx < 2) throw UsageError("--nx must be at least 2");
  if (!std::isfinite(s.xmin) || !std::isfinite(s.xmax) || !(s.xmax > s.xmin)) {
    throw UsageError("--xmin/--xmax must be finite with xmin < xmax");
  }
  return Eigen::ArrayXd::LinSpaced(s.nx, s.xmin, s.xmax);
}

void check_format(const RunSpec& s) {
  if (s.format != "csv" && s.format != "json") throw UsageError("--format is csv or json");
}

// Writes to --out, or stdout when it is empty.
void emit(const RunSpec& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + s.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

int cmd_eval_u(const RunSpec& s, const peakon::Problem& pb) {
  check_format(s);
  const auto ts = times_of(s);
  const Eigen::ArrayXd x = grid_of(s);
  std::ostringstream os;
  Json rows = Json::array();
  if (s.format == "csv") os << "t,x,u,u_x\n";
  for (double t : ts) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double u = peakon::eval_u(pb, t, x(i)), ux = peakon::eval_ux(pb, t, x(i));
      if (s.format == "csv") {
        os << number(t) << ',' << number(x(i)) << ',' << number(u) << ',' << number(ux) << '\n';
      } else {
        rows.push_back({{"t", t}, {"x", x(i)}, {"u", u}, {"u_x", ux}});
      }
    }
  }
  emit(s, s.format == "csv" ? os.str() : dump(rows));
  return kOk;
}

int cmd_eval_lagrangian(const RunSpec& s, const peakon::Problem& pb) {
  check_format(s);
  const auto ts = times_of(s);
  const Eigen::ArrayXd xi = grid_of(s);
  std::ostringstream os;
  Json rows = Json::array();
  bool header = true;
  for (double t : ts) {
    const peakon::LagrangianProfile p = peakon::closed_form_profile(pb, t, xi);
    if (s.format == "csv") {
      peakon::io::write_profile_csv(os, p, header);
      header = false;
    } else {
      for (auto& r : peakon::io::profile_to_json(p)) rows.push_back(r);
    }
  }
  emit(s, s.format == "csv" ? os.str() : dump(rows));
  return kOk;
}

int cmd_measures(const RunSpec& s, const peakon::Problem& pb) {
  check_format(s);
  const auto ts = times_of(s);
  const Eigen::ArrayXd x = grid_of(s);
  const std::vector<double> xs(x.data(), x.data() + x.size());
  std::ostringstream os;
  Json all = Json::array();
  if (s.format == "csv") os << "t,kind,x,mu,nu\n";
  for (double t : ts) {
    const peakon::Measure mu = peakon::mu_at(pb, t), nu = peakon::nu_at(pb, t);
    if (s.format == "json") {
      all.push_back({{"t", t},
                     {"mu", peakon::io::measure_to_json(mu, xs)},
                     {"nu", peakon::io::measure_to_json(nu, xs)}});
      continue;
    }
    for (double xv : xs) {
      os << number(t) << ",density," << number(xv) << ',' << number(mu.density(xv)) << ','
         << number(nu.density(xv)) << '\n';
    }
    for (const peakon::Atom& a : nu.atoms()) {
      double m = 0.0;
      for (const peakon::Atom& b : mu.atoms()) {
        if (b.x == a.x) m = b.mass;
      }
      os << number(t) << ",atom," << number(a.x) << ',' << number(m) << ',' << number(a.mass)
         << '\n';
    }
  }
  emit(s, s.format == "csv" ? os.str() : dump(all));
  return kOk;
}

int cmd_verify(const RunSpec& s, const peakon::Problem& pb) {
  check_format(s);
  peakon::VerifyOptions opt;
  opt.include_oracle = !s.no_oracle;
  const std::vector<peakon::Check> checks = peakon::verify_all(pb, opt);
  int failed = 0;
  std::ostringstream os;
  Json rows = Json::array();
  if (s.format == "csv") os << "suite,name,measured,tolerance,status\n";
  for (const peakon::Check& c : checks) {
    failed += c.passed ? 0 : 1;
    std::printf("%s  [%s] %s: measured %.3e, tolerance %.1e\n", c.passed ? "PASS" : "FAIL",
                c.suite.c_str(), c.name.c_str(), c.measured, c.tolerance);
    if (s.format == "csv") {
      os << c.suite << ",\"" << c.name << "\"," << number(c.measured) << ','
         << number(c.tolerance) << ',' << (c.passed ? "pass" : "fail") << '\n';
    } else {
      rows.push_back({{"suite", c.suite}, {"name", c.name}, {"measured", c.measured},
                      {"tolerance", c.tolerance}, {"passed", c.passed}});
    }
  }
  const double atom = -4.0 * pb.cfg.c1 * pb.cfg.c2;
  std::printf("E2 = %s, E2tilde = %s, atom at t0 = %s, removed = %s\n", number(pb.k.E2).c_str(),
              number(pb.k.E2tilde).c_str(), number(atom).c_str(),
              number(pb.cfg.alpha * atom).c_str());
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  if (!s.out.empty()) emit(s, s.format == "csv" ? os.str() : dump(rows));
  return failed == 0 ? kOk : kInvariantFailure;
}

int cmd_oracle_compare(const RunSpec& s, const peakon::Problem& pb) {
  check_format(s);
  if (!(s.dt > 0.0)) throw UsageError("--dt must be positive");
  if (s.nodes < 16) throw UsageError("--nodes must be at least 16");
  const double t0 = pb.cfg.t0;
  struct Leg {
    const char* name;
    peakon::LegSpec spec;
  };
  const Leg legs[] = {
      {"pre", {0.0, t0 - 0.05, 0.0, s.dt, s.nodes}},
      {"post", {t0, t0 + 1.0, t0 + 0.05, s.dt, s.nodes}},
  };
  std::ofstream trace;
  if (!s.trace.empty()) {
    trace.open(s.trace, std::ios::binary);
    if (!trace) throw UsageError("cannot write " + s.trace);
    trace << peakon::io::kTraceColumns << '\n';
  }
  std::ostringstream os;
  Json rows = Json::array();
  if (s.format == "csv") os << "leg,t_start,t_end,steps,max_err_y,max_err_U,energy_drift\n";
  bool ok = true;
  for (const Leg& leg : legs) {
    const peakon::LegReport r = peakon::run_leg(pb, leg.spec);
    if (trace.is_open()) {
      peakon::LegSpec spec = leg.spec;
      const Eigen::ArrayXd xi = peakon::oracle_grid(pb, spec);
      peakon::LagrangianProfile start =
          spec.t_start == t0
              ? peakon::apply_breaking(peakon::breaking_limit(pb, xi), pb.cfg.alpha)
              : peakon::closed_form_profile(pb, 0.0, xi);
      long step = 0;
      peakon::io::write_trace_rows(trace, start, 10);
      peakon::integrate(start, spec.t_end, spec.dt, spec.t_start == t0,
                        [&](const peakon::LagrangianProfile& p) {
                          if (++step % s.stride == 0) peakon::io::write_trace_rows(trace, p, 10);
                        });
    }
    ok = ok && r.max_err_y <= 1e-4 && r.max_err_U <= 1e-4;
    if (s.format == "csv") {
      os << leg.name << ',' << number(leg.spec.t_start) << ',' << number(leg.spec.t_end) << ','
         << r.steps << ',' << number(r.max_err_y) << ',' << number(r.max_err_U) << ','
         << number(r.energy_drift) << '\n';
    } else {
      rows.push_back({{"leg", leg.name}, {"t_start", leg.spec.t_start}, {"t_end", leg.spec.t_end},
                      {"steps", r.steps}, {"max_err_y", r.max_err_y}, {"max_err_U", r.max_err_U},
                      {"energy_drift", r.energy_drift}});
    }
  }
  emit(s, s.format == "csv" ? os.str() : dump(rows));
  if (!ok) std::fprintf(stderr, "oracle error above 1e-4\n");
  return ok ? kOk : kInvariantFailure;
}

int cmd_figures(const RunSpec& s, const peakon::Problem& pb) {
  namespace fs = std::filesystem;
  const fs::path dir = s.out.empty() ? fs::path("figures") : fs::path(s.out);
  fs::create_directories(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw UsageError("cannot write " + (dir / name).string());
    f << text;
  };
  const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(1601, -8.0, 8.0);

  std::ostringstream u;
  u << "t,x,u\n";
  for (double t : {-1.5, 1.0, 3.0}) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      u << number(t) << ',' << number(x(i)) << ',' << number(peakon::eval_u(pb, t, x(i))) << '\n';
    }
  }
  write("u.csv", u.str());

  std::ostringstream U;
  U << "t,xi,U\n";
  for (double t : {-0.8, 1.0, 2.0}) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      U << number(t) << ',' << number(x(i)) << ','
        << number(peakon::lagrangian_at(pb, t, x(i)).U) << '\n';
    }
  }
  write("U.csv", U.str());

  std::ostringstream y;
  y << "xi,t,y\n";
  const double labels[] = {-1.0, 0.6, 1.0, 1.4, 3.0};
  for (double xi : labels) {
    for (int k = 0; k <= 700; ++k) {
      const double t = -3.0 + 0.01 * k;
      y << number(xi) << ',' << number(t) << ',' << number(peakon::lagrangian_at(pb, t, xi).y)
        << '\n';
    }
  }
  write("characteristics.csv", y.str());

  std::ostringstream m;
  m << "t,kind,x,mu,nu\n";
  for (double t : {-3.0, 4.0}) {
    const peakon::Measure mu = peakon::mu_at(pb, t), nu = peakon::nu_at(pb, t);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      m << number(t) << ",density," << number(x(i)) << ',' << number(mu.density(x(i))) << ','
        << number(nu.density(x(i))) << '\n';
    }
    for (const peakon::Atom& a : nu.atoms()) {
      m << number(t) << ",atom," << number(a.x) << ",0," << number(a.mass) << '\n';
    }
  }
  write("measures.csv", m.str());
  std::printf("wrote u.csv, U.csv, characteristics.csv, measures.csv to %s\n",
              dir.string().c_str());
  return kOk;
}

constexpr const char* kColumns = R"(
CSV columns:
  eval-u           t,x,u,u_x
  eval-lagrangian  t,xi,y,y_xi,U,U_xi,h,h_bar
  measures         t,kind,x,mu,nu   (kind = density: densities at x;
                                     kind = atom: masses of the atoms at x)
  verify           suite,name,measured,tolerance,status
  oracle-compare   leg,t_start,t_end,steps,max_err_y,max_err_U,energy_drift
                   (--trace: t,xi,y,U,h,h_bar)
  figures          u.csv t,x,u; U.csv t,xi,U; characteristics.csv xi,t,y;
                   measures.csv t,kind,x,mu,nu
JSON output holds one object per CSV row with the same keys.
Exit status: 0 ok, 1 invariant failure, 2 usage error.
Environment: PEAKON_LAB_THREADS caps the number of worker threads.)";

}  // namespace

int main(int argc, char** argv) {
  RunSpec spec;
  CLI::App app{"Peakon-antipeakon collision: closed forms, measures and an ODE oracle."};
  app.footer(kColumns);
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", spec.config_file, "key = value file with c1, c2, t0, alpha");
  auto* o_c1 = app.add_option("--c1", spec.cfg.c1, "peakon speed (> 0)");
  auto* o_c2 = app.add_option("--c2", spec.cfg.c2, "antipeakon speed (< 0)");
  auto* o_t0 = app.add_option("--t0", spec.cfg.t0, "collision time (> 0)");
  auto* o_alpha = app.add_option("--alpha", spec.cfg.alpha, "fraction of energy removed, in [0, 1]");
  app.add_option("--xmin", spec.xmin, "grid start (x or xi)");
  app.add_option("--xmax", spec.xmax, "grid end");
  app.add_option("--nx", spec.nx, "grid node count");
  app.add_option("--times", spec.times, "comma-separated sorted times");
  app.add_option("--out", spec.out, "output file (directory for figures); stdout if empty");
  app.add_option("--format", spec.format, "csv or json");

  auto* eval_u = app.add_subcommand("eval-u", "u and u_x on an x grid");
  auto* eval_l = app.add_subcommand("eval-lagrangian", "closed-form Lagrangian profile on a xi grid");
  auto* meas = app.add_subcommand("measures", "mu and nu densities and atoms");
  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  verify->add_flag("--no-oracle", spec.no_oracle, "skip the ODE oracle suite");
  auto* oracle = app.add_subcommand("oracle-compare", "integrate the Lagrangian system and compare");
  oracle->add_option("--dt", spec.dt, "time step");
  oracle->add_option("--nodes", spec.nodes, "label grid size");
  oracle->add_option("--trace", spec.trace, "trace CSV path");
  oracle->add_option("--stride", spec.stride, "trace every n-th step");
  auto* figures = app.add_subcommand("figures", "CSV series for the four reference plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::vector<std::string> keys;
  if (o_c1->count()) keys.push_back("c1");
  if (o_c2->count()) keys.push_back("c2");
  if (o_t0->count()) keys.push_back("t0");
  if (o_alpha->count()) keys.push_back("alpha");

  try {
    const peakon::Problem pb = problem_of(spec, keys);
    if (eval_u->parsed()) return cmd_eval_u(spec, pb);
    if (eval_l->parsed()) return cmd_eval_lagrangian(spec, pb);
    if (meas->parsed()) return cmd_measures(spec, pb);
    if (verify->parsed()) return cmd_verify(spec, pb);
    if (oracle->parsed()) return cmd_oracle_compare(spec, pb);
    if (figures->parsed()) return cmd_figures(spec, pb);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const peakon::SignError& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kUsage;
  } catch (const peakon::RangeError& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kUsage;
  } catch (const peakon::SymmetricCaseError& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kUsage;
  } catch (const peakon::FormatError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const peakon::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvariantFailure;
  }
  return kUsage;
}
