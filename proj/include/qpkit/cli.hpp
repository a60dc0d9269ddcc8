#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qpkit/json_io.hpp"
#include "qpkit/selftest.hpp"
#include "qpkit/torus.hpp"

namespace qpkit {

// One parsed invocation; every knob has a documented default and a fixed
// seed fully determines any randomized run.
struct RunConfig {
  std::string command;

  std::string matrix_path;
  std::string poly_path;
  std::string parent_path;
  std::string out_path;   // empty: stdout
  std::string emit_path;  // meyer CSV target; empty: same as out

  double q = 2.0;
  int r = 2;
  double eta = 0.5;
  double s = 4.0;
  std::string mode = "sobolev";
  int grid = 0;  // 0: alias-free default
  double tol = 1e-12;
  double radius = 1000.0;
  std::vector<double> T_list{10.0, 100.0, 1000.0};
  std::vector<double> y;
  double range_from = 0.0;
  double range_to = 1.0;
  int samples = 1000;
  bool discrete = false;
  std::string window = "-1/2:1/2";
  std::vector<int> probe_orders{0, 1};
  std::uint64_t seed = 42;
  std::string format;  // "json" | "csv"; per-command default when empty
};

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw usage_error("malformed JSON in " + path + " at line " + std::to_string(line) +
                      ", column " + std::to_string(col) + ": " + e.what());
  }
}

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// "lo:hi" with exact rational endpoints, e.g. "-1/2:1/2".
inline Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw usage_error("window must be 'lo:hi', got '" + text + "'");
  return Window::make(FieldScalar(parse_rat(text.substr(0, colon))),
                      FieldScalar(parse_rat(text.substr(colon + 1))));
}

inline TorusPoint point_or_origin(const std::vector<double>& y, int n) {
  if (y.empty()) return TorusPoint::make(std::vector<double>(n, 0.0));
  if (static_cast<int>(y.size()) != n)
    throw usage_error("--y needs " + std::to_string(n) + " coordinates");
  return TorusPoint::make(y);
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* os = nullptr;

  explicit OutputTarget(const std::string& path) {
    if (path.empty()) {
      os = &std::cout;
      return;
    }
    file.open(path, std::ios::binary);
    if (!file) throw usage_error("cannot open output file: " + path);
    os = &file;
  }
  std::ostream& stream() { return *os; }
};

inline int run_ergodicity(const RunConfig& cfg) {
  const FrequencyMatrix p = frequency_matrix_from_json(parse_json_file(cfg.matrix_path));
  OutputTarget out(cfg.out_path);
  out.stream() << to_json(ergodicity_report(p)).dump(2) << "\n";
  return 0;
}

inline int run_weyl(const RunConfig& cfg) {
  const FrequencyMatrix p = frequency_matrix_from_json(parse_json_file(cfg.matrix_path));
  const ParentSpectrum F = parent_spectrum_from_json(parse_json_file(cfg.parent_path));
  const TorusPoint y = point_or_origin(cfg.y, p.cols());
  OutputTarget out(cfg.out_path);
  const Complex mean = F.mean();
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (double T : cfg.T_list) {
      const Complex a = cfg.discrete
                            ? weyl_average_discrete(F, p, y, static_cast<long long>(T))
                            : weyl_average_continuous(F, p, y, T);
      rows.push_back(Json{{"T", T}, {"re", a.real()}, {"im", a.imag()},
                          {"abs_error", std::abs(a - mean)}});
    }
    out.stream() << rows.dump(2) << "\n";
    return 0;
  }
  out.stream() << "T,re,im,abs_error\n";
  for (double T : cfg.T_list) {
    const Complex a = cfg.discrete ? weyl_average_discrete(F, p, y, static_cast<long long>(T))
                                   : weyl_average_continuous(F, p, y, T);
    out.stream() << fmt(T) << "," << fmt(a.real()) << "," << fmt(a.imag()) << ","
                 << fmt(std::abs(a - mean)) << "\n";
  }
  return 0;
}

inline int run_orbit(const RunConfig& cfg) {
  const FrequencyMatrix p = frequency_matrix_from_json(parse_json_file(cfg.matrix_path));
  const TorusPoint y = point_or_origin(cfg.y, p.cols());
  const auto points = orbit_segment(p, y, cfg.range_from, cfg.range_to, cfg.samples);
  OutputTarget out(cfg.out_path);
  out.stream() << "x";
  for (int j = 1; j <= p.cols(); ++j) out.stream() << ",y" << j;
  out.stream() << "\n";
  for (int i = 0; i < cfg.samples; ++i) {
    const double x = cfg.range_from + (cfg.range_to - cfg.range_from) * i / (cfg.samples - 1);
    out.stream() << fmt(x);
    for (double c : points[i].coords) out.stream() << "," << fmt(c);
    out.stream() << "\n";
  }
  return 0;
}

inline int run_lift(const RunConfig& cfg) {
  const TrigPolynomial f = trig_polynomial_from_json(parse_json_file(cfg.poly_path));
  OutputTarget out(cfg.out_path);
  out.stream() << to_json(lift(f)).dump(2) << "\n";
  return 0;
}

inline int run_project(const RunConfig& cfg) {
  const ParentSpectrum F = parent_spectrum_from_json(parse_json_file(cfg.parent_path));
  const FrequencyMatrix p = frequency_matrix_from_json(parse_json_file(cfg.matrix_path));
  OutputTarget out(cfg.out_path);
  out.stream() << to_json(project(F, p)).dump(2) << "\n";
  return 0;
}

inline int run_norm(const RunConfig& cfg) {
  const TrigPolynomial f = trig_polynomial_from_json(parse_json_file(cfg.poly_path));
  OutputTarget out(cfg.out_path);
  Json j{{"q", cfg.q},
         {"besicovitch", besicovitch_norm(f, cfg.q, cfg.grid)},
         {"wiener", wiener_norm(f)}};
  const Interval sup = sup_norm(lift(f), cfg.grid);
  j["sup"] = Json{{"lo", sup.lo}, {"hi", sup.hi}};
  out.stream() << j.dump(2) << "\n";
  return 0;
}

inline int run_invert(const RunConfig& cfg) {
  const TrigPolynomial f = trig_polynomial_from_json(parse_json_file(cfg.poly_path));
  const WienerInversion inv = wiener_inverse(f, cfg.grid, cfg.tol);
  OutputTarget out(cfg.out_path);
  Json j = to_json(inv.inverse);
  j["residual"] = inv.residual;
  j["grid_min"] = inv.grid_min;
  j["slack"] = inv.slack;
  out.stream() << j.dump(2) << "\n";
  return 0;
}

inline int run_hy(const RunConfig& cfg) {
  const TrigPolynomial f = trig_polynomial_from_json(parse_json_file(cfg.poly_path));
  const HYReport rep = hausdorff_young_check(f, cfg.q, cfg.grid);
  OutputTarget out(cfg.out_path);
  out.stream() << to_json(rep).dump(2) << "\n";
  return rep.holds ? 0 : 1;  // a violation would mean a bug somewhere
}

inline int run_regularity(const RunConfig& cfg) {
  const TrigPolynomial f = trig_polynomial_from_json(parse_json_file(cfg.poly_path));
  RegularityVerdict v;
  if (cfg.mode == "holder")
    v = parent_regularity_verdict_holder(f, cfg.r, cfg.eta);
  else if (cfg.mode == "sobolev")
    v = parent_regularity_verdict_sobolev(f, cfg.s, cfg.q);
  else
    throw usage_error("--mode must be 'holder' or 'sobolev'");
  OutputTarget out(cfg.out_path);
  out.stream() << to_json(v).dump(2) << "\n";
  return 0;
}

inline int run_meyer(const RunConfig& cfg) {
  const Window w = parse_window(cfg.window);
  const BandSet band = enumerate_band(w, cfg.radius);
  OutputTarget out(cfg.emit_path.empty() ? cfg.out_path : cfg.emit_path);
  out.stream() << "m,n,physical,internal\n";
  for (const auto& pt : band.points)
    out.stream() << pt.m << "," << pt.n << "," << fmt(BandSet::physical(pt)) << ","
                 << fmt(BandSet::internal(pt)) << "\n";
  return 0;
}

inline int run_pathology(const RunConfig& cfg) {
  const Window w = parse_window(cfg.window);
  const BandSet band = enumerate_band(w, cfg.radius);
  const ParentSpectrum parent = pathological_parent(band);
  const std::vector<double> radii{cfg.radius / 100.0, cfg.radius / 10.0, cfg.radius};
  const ComparabilityBounds cb = golden_comparability(band);

  OutputTarget out(cfg.out_path);
  if (cfg.format == "csv") {
    out.stream() << "order,radius,partial_sum,convergent\n";
    for (int m : cfg.probe_orders)
      for (const auto& row : derivative_series_probe(parent, m, radii))
        out.stream() << m << "," << fmt(row.radius) << "," << fmt(row.partial_sum) << ","
                     << (row.convergent ? 1 : 0) << "\n";
    return 0;
  }
  Json series = Json::array();
  for (int m : cfg.probe_orders)
    for (const auto& row : derivative_series_probe(parent, m, radii))
      series.push_back(Json{{"order", m},
                            {"radius", row.radius},
                            {"partial_sum", row.partial_sum},
                            {"convergent", row.convergent}});
  Json j{{"radius", cfg.radius},
         {"band_points", band.points.size()},
         {"series", std::move(series)},
         {"comparability", Json{{"c_low", cb.c_low}, {"c_high", cb.c_high}}}};
  out.stream() << j.dump(2) << "\n";
  return 0;
}

inline int run_selftest_cmd(const RunConfig& cfg) {
  OutputTarget out(cfg.out_path);
  return run_selftest(cfg.seed, out.stream()) ? 0 : 1;
}

}  // namespace cli_detail

// Executes exactly one subcommand; returns the process exit status
// (0 success, 1 negative verdict / non-convergence, 2 usage errors).
inline int dispatch(const RunConfig& cfg) {
  try {
    if (cfg.command == "ergodicity") return cli_detail::run_ergodicity(cfg);
    if (cfg.command == "weyl") return cli_detail::run_weyl(cfg);
    if (cfg.command == "orbit") return cli_detail::run_orbit(cfg);
    if (cfg.command == "lift") return cli_detail::run_lift(cfg);
    if (cfg.command == "project") return cli_detail::run_project(cfg);
    if (cfg.command == "norm") return cli_detail::run_norm(cfg);
    if (cfg.command == "invert") return cli_detail::run_invert(cfg);
    if (cfg.command == "hy") return cli_detail::run_hy(cfg);
    if (cfg.command == "regularity") return cli_detail::run_regularity(cfg);
    if (cfg.command == "meyer") return cli_detail::run_meyer(cfg);
    if (cfg.command == "pathology") return cli_detail::run_pathology(cfg);
    if (cfg.command == "selftest") return cli_detail::run_selftest_cmd(cfg);
    std::cerr << "qpkit: unknown command '" << cfg.command << "'\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "qpkit: " << e.what() << "\n";
    return 2;
  } catch (const convergence_error& e) {
    std::cerr << "qpkit: " << e.what() << "\n";
    return 1;
  } catch (const precondition_error& e) {
    std::cerr << "qpkit: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    // negative numeric verdict (e.g. nonvanishing certificate failed)
    std::cerr << "qpkit: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qpkit: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qpkit
