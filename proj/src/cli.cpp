#include "hdrc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hdrc/channel_sim.hpp"
#include "hdrc/core_dmt.hpp"
#include "hdrc/curve_io.hpp"
#include "hdrc/errors.hpp"
#include "hdrc/solvers.hpp"
#include "hdrc/verify.hpp"
#include "json.hpp"

namespace hdrc::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  int m = 1;
  int k = 1;
  int n = 1;
  std::string r_spec;
  bool r_given = false;
  std::string variants = "hd-dynamic";
  std::string snr_db = "15:35:5";
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string format = "json";
  std::string out_path;
  bool conjectures = false;
  std::string fault;
};

double parse_number(std::string_view s) {
  const std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + str + "'");
  }
  if (used != str.size() || !std::isfinite(v)) throw ConfigError("not a number: '" + str + "'");
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<Variant> parse_variants(const std::string& spec) {
  std::vector<Variant> out;
  for (const auto& name : split(spec, ',')) {
    const auto v = parse_variant(name);
    if (!v) throw ConfigError("unknown variant '" + name + "'");
    out.push_back(*v);
  }
  return out;
}

ExecPolicy exec_of(const RunConfig& rc) {
  if (rc.workers < 0) throw ConfigError("--workers must be >= 0");
  return {rc.workers != 1, rc.workers};
}

io::Format format_of(const RunConfig& rc) {
  const auto f = io::parse_format(rc.format);
  if (!f) throw ConfigError("--format must be json or csv");
  return *f;
}

// r grid for a variant: the user's grid, or 21 points across the variant domain.
std::vector<double> r_grid_for(const RunConfig& rc, const AntennaConfig& c, Variant v) {
  if (rc.r_given) return parse_grid(rc.r_spec);
  const Interval dom = variant_domain(c, v);
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(dom.lo + dom.width() * i / 20.0);
  g.back() = dom.hi;
  return g;
}

void emit(const RunConfig& rc, const std::string& content, std::ostream& out) {
  if (rc.out_path.empty()) {
    out << content;
  } else {
    io::write_atomic(rc.out_path, content);
  }
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

int cmd_curve(const RunConfig& rc, std::ostream& out) {
  const AntennaConfig c(rc.m, rc.k, rc.n);
  const auto variants = parse_variants(rc.variants);
  const auto format = format_of(rc);
  TwoVarOptions so;
  so.exec = exec_of(rc);
  for (Variant v : variants) check_variant_applicable(c, v);
  std::vector<DmtCurve> curves;
  for (Variant v : variants) {
    const auto grid = r_grid_for(rc, c, v);
    curves.push_back(dmt_curve(c, v, grid, so));
  }
  emit(rc, io::render(curves, format), out);
  return kOk;
}

int cmd_compare(const RunConfig& rc, std::ostream& out) {
  const AntennaConfig c(rc.m, rc.k, rc.n);
  const auto variants = parse_variants(rc.variants);
  if (variants.size() < 2) throw ConfigError("compare needs at least two variants");
  const auto format = format_of(rc);
  TwoVarOptions so;
  so.exec = exec_of(rc);
  for (Variant v : variants) check_variant_applicable(c, v);
  const auto grid = r_grid_for(rc, c, variants.front());
  std::vector<DmtCurve> curves;
  for (Variant v : variants) curves.push_back(dmt_curve(c, v, grid, so));

  struct Gap {
    std::size_t a, b;
    double gap = 0.0;
    double at_r = 0.0;
  };
  std::vector<Gap> gaps;
  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      Gap g{a, b, 0.0, grid.front()};
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = std::abs(curves[a].points[i].d - curves[b].points[i].d);
        if (d > g.gap) {
          g.gap = d;
          g.at_r = grid[i];
        }
      }
      gaps.push_back(g);
    }
  }

  std::string text;
  if (format == io::Format::json) {
    json doc;
    doc["config"] = {{"m", c.m()}, {"k", c.k()}, {"n", c.n()}};
    doc["variants"] = json::array();
    for (Variant v : variants) doc["variants"].push_back(std::string(to_string(v)));
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      json vals;
      for (const auto& cv : curves) vals[std::string(to_string(cv.variant))] = cv.points[i].d;
      doc["rows"].push_back({{"r", grid[i]}, {"values", vals}});
    }
    doc["max_gaps"] = json::array();
    for (const auto& g : gaps) {
      doc["max_gaps"].push_back({{"a", std::string(to_string(variants[g.a]))},
                                 {"b", std::string(to_string(variants[g.b]))},
                                 {"max_gap", g.gap},
                                 {"at_r", g.at_r}});
    }
    text = doc.dump(2) + "\n";
  } else {
    text = "r";
    for (Variant v : variants) text += "," + std::string(to_string(v));
    text += "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      text += num(grid[i]);
      for (const auto& cv : curves) text += "," + num(cv.points[i].d);
      text += "\n";
    }
    text += "\nvariant_a,variant_b,max_gap,at_r\n";
    for (const auto& g : gaps) {
      text += std::string(to_string(variants[g.a])) + "," + std::string(to_string(variants[g.b])) +
              "," + num(g.gap) + "," + num(g.at_r) + "\n";
    }
  }
  emit(rc, text, out);
  return kOk;
}

int cmd_simulate(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const AntennaConfig c(rc.m, rc.k, rc.n);
  const auto format = format_of(rc);
  const auto rs = parse_grid(rc.r_spec);
  if (rs.size() != 1) throw ConfigError("simulate takes a single --r value");
  const double r = rs.front();
  if (!(r > 0.0 && r < c.max_rate()))
    throw ConfigError("simulate needs 0 < r < min(m,n)");
  if (rc.samples < 1000) throw ConfigError("simulate needs --samples >= 1000");
  const auto snr_db = parse_grid(rc.snr_db);
  std::vector<double> rho;
  for (double db : snr_db) {
    if (!(db > 0.0)) throw ConfigError("--snr-db values must be positive");
    rho.push_back(sim::db_to_linear(db));
  }
  const auto exec = exec_of(rc);
  const auto est = sim::outage_sweep(c, rho, r, rc.samples, rc.seed, exec);
  TwoVarOptions so;
  so.exec = exec;
  const double analytic = solve_two_var(c, r, so).d;

  std::optional<sim::SlopeFit> fit;
  std::string fit_error;
  try {
    fit = sim::diversity_fit(est);
  } catch (const InsufficientData& e) {
    fit_error = e.what();
  }

  std::string text;
  if (format == io::Format::json) {
    json doc;
    doc["config"] = {{"m", c.m()}, {"k", c.k()}, {"n", c.n()}};
    doc["r"] = r;
    doc["seed"] = rc.seed;
    doc["samples"] = rc.samples;
    doc["analytic_d"] = analytic;
    doc["estimates"] = json::array();
    for (std::size_t i = 0; i < est.size(); ++i) {
      doc["estimates"].push_back({{"snr_db", snr_db[i]},
                                  {"rho", est[i].rho},
                                  {"p_out", est[i].p_out},
                                  {"ci_half_width", est[i].ci_half_width},
                                  {"outages", est[i].outages},
                                  {"n_samples", est[i].n_samples}});
    }
    if (fit) {
      doc["fit"] = {{"slope", fit->slope}, {"stderr", fit->std_error}, {"rho_grid", fit->rho_grid}};
    } else {
      doc["fit"] = nullptr;
      doc["fit_error"] = fit_error;
    }
    text = doc.dump(2) + "\n";
  } else {
    text = "snr_db,rho,r,p_out,ci_half_width,outages,n_samples\n";
    for (std::size_t i = 0; i < est.size(); ++i) {
      text += num(snr_db[i]) + "," + num(est[i].rho) + "," + num(r) + "," + num(est[i].p_out) + "," +
              num(est[i].ci_half_width) + "," + std::to_string(est[i].outages) + "," +
              std::to_string(est[i].n_samples) + "\n";
    }
    text += "\nslope,stderr,analytic_d\n";
    text += (fit ? num(fit->slope) + "," + num(fit->std_error) : std::string("nan,nan")) + "," +
            num(analytic) + "\n";
  }
  emit(rc, text, out);
  if (!fit) {
    err << "error: " << fit_error << "\n";
    return kInsufficientData;
  }
  return kOk;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  verify::Options opt;
  opt.conjectures = rc.conjectures;
  opt.solver.exec = exec_of(rc);
  if (rc.fault == "phi") {
    opt.fault = verify::Fault::phi;
  } else if (!rc.fault.empty()) {
    throw ConfigError("unknown fault '" + rc.fault + "'");
  }
  const auto report = verify::run(opt);
  out << verify::format_report(report);
  return report.hard_ok() ? kOk : kVerifyFailed;
}

void add_config_options(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--m", rc.m, "source antennas")->required();
  cmd->add_option("--k", rc.k, "relay antennas")->required();
  cmd->add_option("--n", rc.n, "destination antennas")->required();
  cmd->add_option("--workers", rc.workers, "worker threads (0 = all)");
}

void add_output_options(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--format", rc.format, "json or csv");
  cmd->add_option("--out", rc.out_path, "output file (default stdout)");
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  if (spec.empty()) throw ConfigError("empty grid");
  std::vector<double> out;
  if (spec.find(':') != std::string_view::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:stop:step");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!(step > 0.0)) throw ConfigError("range step must be positive");
    if (stop < start) throw ConfigError("range stop precedes start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (count > 10'000'000) throw ConfigError("range has too many points");
    for (long i = 0; i <= count; ++i) out.push_back(start + step * static_cast<double>(i));
    if (std::abs(out.back() - stop) < 1e-9 * std::max(1.0, std::abs(stop))) out.back() = stop;
  } else {
    for (const auto& p : split(spec, ',')) out.push_back(parse_number(p));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"DMT of the (m,k,n) MIMO half-duplex relay channel", "hdrc"};
  app.require_subcommand(1);

  auto* curve = app.add_subcommand("curve", "DMT curves for one or more variants");
  add_config_options(curve, rc);
  curve->add_option("--variants", rc.variants, "comma-separated variants");
  curve->add_option("--r", rc.r_spec, "r grid: start:stop:step or a,b,c");
  add_output_options(curve, rc);

  auto* compare = app.add_subcommand("compare", "tabulate variants and their pairwise gaps");
  add_config_options(compare, rc);
  compare->add_option("--variants", rc.variants, "comma-separated variants (>= 2)")->required();
  compare->add_option("--r", rc.r_spec, "r grid: start:stop:step or a,b,c");
  add_output_options(compare, rc);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo outage and diversity slope");
  add_config_options(simulate, rc);
  simulate->add_option("--r", rc.r_spec, "multiplexing gain")->required();
  simulate->add_option("--snr-db", rc.snr_db, "SNR grid in dB");
  simulate->add_option("--samples", rc.samples, "channel draws per SNR");
  simulate->add_option("--seed", rc.seed, "RNG seed");
  add_output_options(simulate, rc);

  auto* verify_cmd = app.add_subcommand("verify", "run the cross-check battery");
  verify_cmd->add_flag("--conjectures", rc.conjectures, "also report conjecture diagnostics");
  verify_cmd->add_option("--workers", rc.workers, "worker threads (0 = all)");
  verify_cmd->add_option("--inject-fault", rc.fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadConfig;
  }

  for (auto* cmd : {curve, compare, simulate}) {
    if (*cmd && cmd->get_option("--r")->count() > 0) rc.r_given = true;
  }

  try {
    if (*curve) return cmd_curve(rc, out);
    if (*compare) return cmd_compare(rc, out);
    if (*simulate) return cmd_simulate(rc, out, err);
    if (*verify_cmd) return cmd_verify(rc, out);
  } catch (const SolverRefusal& e) {
    err << "error: " << e.what() << "\n";
    return kSolverRefused;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << "\n";
    return kInsufficientData;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kBadConfig;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace hdrc::cli
