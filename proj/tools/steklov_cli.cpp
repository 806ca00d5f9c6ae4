// steklov: Steklov spectra of geodesic balls in rank-one symmetric spaces,
// weighted isoperimetric checks, and the spherical-strip counterexample.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "steklov/base_point.hpp"
#include "steklov/inequalities.hpp"
#include "steklov/radial_series.hpp"
#include "steklov/star_domain.hpp"
#include "steklov/strip.hpp"

namespace {

using namespace steklov;

struct RunConfig {
  std::string command;
  std::string space = "RH";
  int n = 2;
  double R = 1.0;
  int grid_order = 12;
  int seeds = 100;
  int p_max = 12;
  std::string out;
  std::string format = "csv";
  bool find_crossing_flag = false;
};

Family family_from_tag(const std::string& tag) {
  if (tag == "E") return Family::Euclidean;
  if (tag == "RH") return Family::RealHyperbolic;
  if (tag == "CH") return Family::ComplexHyperbolic;
  if (tag == "HH") return Family::QuaternionicHyperbolic;
  if (tag == "OH") return Family::OctonionicHyperbolic;
  if (tag == "S") return Family::RoundSphere;
  throw std::invalid_argument("unknown space tag: " + tag);
}

nlohmann::json config_json(const RunConfig& c) {
  return nlohmann::json{{"command", c.command}, {"space", c.space},
                        {"n", c.n},            {"R", c.R},
                        {"grid_order", c.grid_order}, {"seeds", c.seeds},
                        {"p_max", c.p_max},    {"format", c.format}};
}

void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
  f << body;
}

int cmd_spectrum(const RunConfig& cfg) {
  ModelSpace sp = ModelSpace::make(family_from_tag(cfg.space), cfg.n);
  if (!(cfg.R > 0) || (sp.compact() && cfg.R >= sp.diam)) {
    std::cerr << "spectrum: R outside (0, diam)\n";
    return 2;
  }
  std::ostringstream os;
  os.precision(17);
  if (cfg.format == "json") os << "{\"config\":" << config_json(cfg).dump() << ",\n\"rows\":[\n";
  else os << "# " << config_json(cfg).dump() << "\np,R,sigma_series,sigma_ode,discrepancy\n";
  bool first = true;
  for (int p = 1; p <= cfg.p_max; ++p) {
    ModeSpec spec;
    try {
      spec = make_mode(sp, p);
    } catch (const unsupported_mode&) {
      break;  // only p <= 1 available beyond constant curvature
    }
    auto mode = build_profile_auto(sp, spec, std::min(cfg.R, 2.8), 1e-7);
    double s_series = sigma_value(mode, cfg.R);
    double s_ode = sigma_ode_integrate(sp, spec, cfg.R);
    double disc = std::abs(s_series - s_ode);
    if (cfg.format == "json") {
      if (!first) os << ",\n";
      os << nlohmann::json{{"p", p}, {"R", cfg.R}, {"sigma_series", s_series},
                           {"sigma_ode", s_ode}, {"discrepancy", disc}}.dump();
    } else {
      os << p << ',' << cfg.R << ',' << s_series << ',' << s_ode << ',' << disc << '\n';
    }
    first = false;
  }
  if (cfg.format == "json") os << "\n]}\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  ModelSpace sp = ModelSpace::make(family_from_tag(cfg.space), cfg.n);
  if (sp.compact()) {
    std::cerr << "verify: compact spaces are out of scope here\n";
    return 2;
  }
  auto rows = falsification_sweep(sp, cfg.grid_order, cfg.seeds);
  std::ostringstream os;
  os << "# " << config_json(cfg).dump() << '\n';
  write_sweep_csv(os, rows);
  emit(cfg, os.str());
  for (const auto& r : rows)
    if (!r.all_pass()) return 1;
  return 0;
}

int cmd_strip(const RunConfig& cfg) {
  int m = cfg.n;
  if (m < 2) {
    std::cerr << "strip: need m >= 2\n";
    return 2;
  }
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i)
    grid.push_back(0.5 * M_PI + (0.5 * M_PI - 0.02) * i / 50.5);
  auto rows = counterexample_scan(m, grid, cfg.p_max);
  std::ostringstream os;
  os.precision(17);
  os << "# " << config_json(cfg).dump() << '\n';
  os << "m,R,sigma1_strip,S,sigma1_ball,ratio\n";
  for (const auto& r : rows)
    os << r.m << ',' << r.R << ',' << r.sigma1_strip << ',' << r.S << ','
       << r.sigma1_ball << ',' << r.ratio << '\n';
  if (cfg.find_crossing_flag) {
    auto [lo, hi] = find_crossing(m);
    os << "# crossing_bracket," << lo << ',' << hi << '\n';
  }
  emit(cfg, os.str());
  return 0;
}

int cmd_basepoint(const RunConfig& cfg) {
  ModelSpace sp = ModelSpace::make(family_from_tag(cfg.space), cfg.n);
  if (sp.d != 1 || sp.compact()) {
    std::cerr << "basepoint: Euclidean or RH^m only\n";
    return 2;
  }
  SphereGrid grid(sp.m, cfg.grid_order);
  StarDomain dom = random_star_domain(sp, grid, cfg.R, cfg.seeds);
  auto sample = boundary_sample(dom);
  BasePointContext ctx(sp, 6.0 * std::max(cfg.R, 1.0));
  auto y = find_base_point(sample, ctx);
  double gn = gradient_B(sample, y, ctx).norm();
  nlohmann::json j;
  j["config"] = config_json(cfg);
  j["domain"] = to_json(dom);
  j["base_point"] = to_json(y, gn, sample.total_weight());
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_measure(const RunConfig& cfg) {
  ModelSpace sp = ModelSpace::make(family_from_tag(cfg.space), cfg.n);
  SphereGrid grid(sp.m, cfg.grid_order);
  StarDomain dom = random_star_domain(sp, grid, cfg.R, cfg.seeds,
                                      sp.compact() ? 0.1 : 0.3);
  auto rep = measure_domain(dom);
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::json j;
    j["config"] = config_json(cfg);
    j["report"] = to_json(rep);
    os << j.dump(2) << '\n';
  } else {
    os.precision(17);
    os << "# " << config_json(cfg).dump() << '\n'
       << "volume,weighted_perimeter,energy,sym_diff,ball_radius,R_ext,R_int\n"
       << rep.volume << ',' << rep.weighted_perimeter << ',' << rep.energy << ','
       << rep.sym_diff << ',' << rep.ball_radius << ',' << rep.R_ext << ','
       << rep.R_int << '\n';
  }
  emit(cfg, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Steklov spectra and weighted isoperimetry on ROSS"};
  app.add_option("--command", cfg.command, "spectrum|verify|strip|basepoint|measure")
      ->required();
  app.add_option("--space", cfg.space, "E|RH|CH|HH|OH|S");
  app.add_option("--n", cfg.n, "field dimension (m for E and S)");
  app.add_option("--R", cfg.R, "radius / base radius");
  app.add_option("--grid-order", cfg.grid_order, "spherical grid order");
  app.add_option("--seeds", cfg.seeds, "seed count (verify) or seed (others)");
  app.add_option("--p-max", cfg.p_max, "highest mode degree");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", cfg.format, "csv|json");
  app.add_flag("--find-crossing", cfg.find_crossing_flag,
               "refine the strip/ball crossing by bisection");
  CLI11_PARSE(app, argc, argv);

  try {
    if (cfg.format != "csv" && cfg.format != "json") {
      std::cerr << "unknown format: " << cfg.format << '\n';
      return 2;
    }
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "strip") return cmd_strip(cfg);
    if (cfg.command == "basepoint") return cmd_basepoint(cfg);
    if (cfg.command == "measure") return cmd_measure(cfg);
    std::cerr << "unknown command: " << cfg.command << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  }
}
