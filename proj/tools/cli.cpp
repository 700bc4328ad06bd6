#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "nprk/errors.hpp"
#include "nprk/order.hpp"
#include "nprk/problems.hpp"
#include "nprk/serialize.hpp"

namespace nprk::cli {

namespace {

namespace fs = std::filesystem;

double parse_number(std::string_view text, const std::string& what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InvalidConfig("cannot parse " + what + " from '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip_prefix(const std::string& s, const std::string& prefix) {
  return s.starts_with(prefix) ? s.substr(prefix.size()) : s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest manifest_for(const std::string& command) {
  RunManifest m;
  m.command = command;
  m.version = NPRK_VERSION;
  m.timestamp = utc_timestamp();
  return m;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidConfig("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw InvalidConfig("failed writing '" + path.string() + "'");
}

fs::path manifest_path_for(const fs::path& csv) {
  return fs::path(csv.string() + ".manifest.json");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string convergence_csv(const ConvergenceTable& t, bool with_order) {
  std::ostringstream s;
  s << (with_order ? "method,h,error,order,diverged\n" : "method,h,error,diverged\n");
  for (const auto& r : t.rows) {
    s << r.method << ',' << format_real(r.h) << ',' << format_real(r.error) << ',';
    if (with_order) s << format_real(t.order_of(r.method)) << ',';
    s << bool_text(r.diverged) << '\n';
  }
  return s.str();
}

void print_orders(std::ostream& out, const ConvergenceTable& t) {
  for (const auto& [name, slope] : t.orders) {
    out << "  " << std::left << std::setw(24) << name << " observed order " << std::setprecision(4)
        << slope << '\n';
  }
}

struct Options {
  std::string dump_name;
  std::optional<std::string> verify_method;
  std::optional<double> verify_tol;
  std::string verify_csv;
  std::string method;
  std::string slice;
  std::string wedge;
  std::string grid = "-5,5,-5,5,101";
  std::string out;
  std::string problem = "dahlquist";
  std::vector<std::string> methods;
  std::string h_spec = "0.125/2^6";
  std::optional<double> t_final;
  double lambda1 = -1.0;
  double lambda2 = -3.0;
  double epsilon = 1.0 / 200.0;
  int n = 200;
  std::string which;
  int burgers_n = 0;
};

int cmd_methods_list(std::ostream& out) {
  out << std::left << std::setw(32) << "name" << std::setw(7) << "stages" << std::setw(6)
      << "order" << std::setw(7) << "solves" << std::setw(22) << "class" << std::setw(4) << "SA"
      << std::setw(4) << "SI" << std::setw(11) << "coupled-z2" << "L-stable-z1\n";
  for (const auto& e : catalog()) {
    std::string coupled = "-";
    if (e.coupled_stiff_z2_stable) coupled = *e.coupled_stiff_z2_stable ? "stable" : "unstable";
    out << std::left << std::setw(32) << e.name() << std::setw(7) << e.method.stages()
        << std::setw(6) << e.design_order << std::setw(7) << e.implicit_solves << std::setw(22)
        << to_string(e.method.sparsity_class()) << std::setw(4) << (e.stiffly_accurate ? "y" : "n")
        << std::setw(4) << (e.singly_implicit ? "y" : "n") << std::setw(11) << coupled
        << (e.l_stable_z1 ? "y" : "n") << '\n';
  }
  return kExitOk;
}

int cmd_methods_dump(const Options& o, std::ostream& out) {
  out << method_to_json(find_method(o.dump_name).method) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<VerificationRow> rows;
  if (o.verify_method) {
    rows.push_back(verify_method(find_method(*o.verify_method), o.verify_tol));
  } else {
    rows = verify_catalog(o.verify_tol);
  }
  bool all = true;
  std::ostringstream csv;
  csv << "method,condition,order,residual,tol,satisfied\n";
  for (const auto& r : rows) {
    all = all && r.report.satisfied;
    out << r.name << "  order " << r.design_order << "  via " << r.route << "  max|res| "
        << std::scientific << std::setprecision(3) << r.report.max_abs_residual << "  tol "
        << r.tol << "  " << (r.report.satisfied ? "PASS" : "FAIL") << '\n';
    for (const auto& c : r.report.conditions) {
      out << "    " << std::left << std::setw(14) << c.id << c.order << "  " << std::setw(11)
          << c.residual << '\n';
      csv << r.name << ',' << c.id << ',' << c.order << ',' << format_real(c.residual) << ','
          << format_real(r.tol) << ','
          << bool_text(std::abs(c.residual) <= r.tol) << '\n';
    }
    if (r.residual3) {
      out << "    order-3 residual norm " << std::setprecision(6) << std::fixed
          << r.residual3->norm2 << '\n';
    }
    out << std::defaultfloat;
  }
  if (!o.verify_csv.empty()) {
    const fs::path p(o.verify_csv);
    write_text(p, csv.str());
    RunManifest m = manifest_for("verify");
    if (o.verify_method) m.parameters["method"] = *o.verify_method;
    if (o.verify_tol) m.parameters["tol"] = format_real(*o.verify_tol);
    m.outputs.push_back(p.string());
    write_text(manifest_path_for(p), m.to_json());
  }
  return all ? kExitOk : kExitNumerical;
}

int cmd_stability(const Options& o, std::ostream& out) {
  if (o.slice.empty() == o.wedge.empty()) {
    throw InvalidConfig("stability: give exactly one of --slice and --wedge");
  }
  const auto model = build_stability_model(find_method(o.method).method);
  const GridSpec grid = parse_grid(o.grid);
  const RegionSlice slice = o.slice.empty() ? wedge_slice(model, parse_wedge(o.wedge), grid)
                                            : region_slice(model, parse_slice(o.slice), grid);
  std::ostringstream csv;
  csv << "re(z2),im(z2),value\n";
  for (int i = 0; i < grid.n; ++i) {
    for (int j = 0; j < grid.n; ++j) {
      const Complex z = grid.point(i, j);
      csv << format_real(z.real()) << ',' << format_real(z.imag()) << ','
          << format_real(slice.at(i, j)) << '\n';
    }
  }
  if (o.out.empty()) {
    out << csv.str();
    return kExitOk;
  }
  const fs::path p(o.out);
  write_text(p, csv.str());
  RunManifest m = manifest_for("stability");
  m.parameters = {{"method", o.method}, {"grid", o.grid}};
  if (!o.slice.empty()) m.parameters["slice"] = o.slice;
  if (!o.wedge.empty()) m.parameters["wedge"] = o.wedge;
  m.outputs.push_back(p.string());
  write_text(manifest_path_for(p), m.to_json());
  out << "wrote " << p.string() << '\n';
  return kExitOk;
}

int cmd_beta(const Options& o, std::ostream& out) {
  const auto beta = beta_infinity(build_stability_model(find_method(o.method).method));
  out << "power,coefficient\n";
  for (std::size_t k = 0; k < beta.coeffs.size(); ++k) {
    out << k << ',' << format_real(beta.coeffs[k]) << '\n';
  }
  return kExitOk;
}

int cmd_gamma(const Options& o, std::ostream& out) {
  const auto model = build_stability_model(find_method(o.method).method);
  const CosineSeries g = gamma_series(model);
  const CoupledStiffResult r = coupled_stiff_z2_stable(model);
  out << "n,d_n\n";
  for (std::size_t k = 0; k < g.d.size(); ++k) out << k << ',' << format_real(g.d[k]) << '\n';
  out << "gamma(0)," << format_real(g(0.0)) << '\n';
  out << "gamma(pi)," << format_real(g(std::numbers::pi)) << '\n';
  out << "max_gamma," << format_real(r.max_gamma) << '\n';
  out << "theta_at_max," << format_real(r.theta_at_max) << '\n';
  out << "coupled_stiff_z2_stable," << bool_text(r.stable) << '\n';
  return kExitOk;
}

int cmd_converge(const Options& o, std::ostream& out) {
  if (o.methods.empty()) throw InvalidConfig("converge: --methods is required");
  const std::vector<double> hs = parse_h_spec(o.h_spec);
  std::vector<NamedMethod> methods;
  for (const auto& name : o.methods) methods.push_back(resolve_method(name));

  std::unique_ptr<NonlinearPartitionProblem> problem;
  double t_final = 1.0;
  if (o.problem == "dahlquist") {
    problem = std::make_unique<DahlquistProblem>(o.lambda1, o.lambda2);
  } else if (o.problem == "burgers-non-conservative" || o.problem == "burgers-conservative") {
    BurgersSpec s;
    s.epsilon = o.epsilon;
    s.n = o.n;
    s.partition = o.problem == "burgers-conservative" ? BurgersPartition::Conservative
                                                      : BurgersPartition::NonConservative;
    problem = std::make_unique<BurgersProblem>(s);
    t_final = 0.6;
  } else {
    throw InvalidConfig("converge: unknown problem '" + o.problem + "'");
  }
  if (o.t_final) t_final = *o.t_final;
  const Vector y0 = *problem->initial_state();
  Vector ref;
  if (problem->has_exact_solution()) {
    ref = problem->exact_solution(t_final, y0, 0.0);
  } else {
    const double h_min = *std::min_element(hs.begin(), hs.end());
    ref = reference_solution(*problem, find_method("IMEX-NPRK3[54]-Sa").method, y0, 0.0, t_final,
                             h_min / 32);
  }
  const ConvergenceTable table = convergence_study(*problem, methods, y0, 0.0, t_final, hs, ref);
  out << o.problem << " to t = " << t_final << '\n';
  print_orders(out, table);
  if (!o.out.empty()) {
    const fs::path p(o.out);
    write_text(p, convergence_csv(table, true));
    RunManifest m = manifest_for("converge");
    std::string joined;
    for (const auto& name : o.methods) joined += (joined.empty() ? "" : ",") + name;
    m.parameters = {{"problem", o.problem}, {"methods", joined}, {"h", o.h_spec},
                    {"t_final", format_real(t_final)}};
    if (o.problem == "dahlquist") {
      m.parameters["lambda1"] = format_real(o.lambda1);
      m.parameters["lambda2"] = format_real(o.lambda2);
    } else {
      m.parameters["epsilon"] = format_real(o.epsilon);
      m.parameters["n"] = std::to_string(o.n);
    }
    m.outputs.push_back(p.string());
    write_text(manifest_path_for(p), m.to_json());
  }
  return kExitOk;
}

int cmd_burgers(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw InvalidConfig("burgers: --out is required");
  const BurgersExperiment e = burgers_experiment(o.which, o.burgers_n);
  const auto results = run_burgers_experiment(e);
  const fs::path dir(o.out);
  RunManifest m = manifest_for("burgers");
  m.parameters = {{"which", o.which},
                  {"n", std::to_string(e.studies.front().problem->spec().n)},
                  {"t_final", format_real(e.t_final)},
                  {"reference", e.reference_method + " at h_min/" + std::to_string(e.ref_divisor)}};
  for (const auto& r : results) {
    const fs::path p = dir / (r.label + ".csv");
    write_text(p, convergence_csv(r.table, false));
    m.outputs.push_back(p.string());
    out << r.label << '\n';
    print_orders(out, r.table);
  }
  write_text(dir / "manifest.json", m.to_json());
  return kExitOk;
}

}  // namespace

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["version"] = version;
  j["timestamp"] = timestamp;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

std::vector<double> parse_h_spec(const std::string& spec) {
  const auto slash = spec.find('/');
  const auto caret = spec.find('^');
  if (slash == std::string::npos || caret == std::string::npos || caret < slash) {
    throw InvalidConfig("h spec must look like h0/r^k, got '" + spec + "'");
  }
  const double h0 = parse_number(std::string_view(spec).substr(0, slash), "h0");
  const double r = parse_number(std::string_view(spec).substr(slash + 1, caret - slash - 1), "r");
  const double kd = parse_number(std::string_view(spec).substr(caret + 1), "k");
  if (!(h0 > 0.0) || !(r > 1.0) || kd < 1.0 || kd != std::floor(kd) || kd > 60.0) {
    throw InvalidConfig("h spec needs h0 > 0, r > 1 and an integer k in [1, 60]");
  }
  std::vector<double> hs;
  for (int k = 0; k <= static_cast<int>(kd); ++k) hs.push_back(h0 / std::pow(r, k));
  return hs;
}

GridSpec parse_grid(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 5) throw InvalidConfig("grid must be re0,re1,im0,im1,n");
  GridSpec g;
  g.re0 = parse_number(parts[0], "re0");
  g.re1 = parse_number(parts[1], "re1");
  g.im0 = parse_number(parts[2], "im0");
  g.im1 = parse_number(parts[3], "im1");
  const double n = parse_number(parts[4], "n");
  if (n < 1.0 || n != std::floor(n) || n > 1e5) throw InvalidConfig("grid n must be a positive integer");
  g.n = static_cast<int>(n);
  return g;
}

Complex parse_slice(const std::string& spec) {
  const auto parts = split(strip_prefix(spec, "z1="), ',');
  if (parts.size() != 2) throw InvalidConfig("slice must be z1=RE,IM");
  return {parse_number(parts[0], "Re z1"), parse_number(parts[1], "Im z1")};
}

double parse_wedge(const std::string& spec) {
  return parse_number(strip_prefix(spec, "theta="), "theta");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinearly partitioned Runge-Kutta methods: catalog, analysis and studies",
               "nprk"};
  app.require_subcommand(1);
  Options o;

  auto* methods = app.add_subcommand("methods", "Catalog listing and JSON dumps");
  methods->require_subcommand(1);
  auto* mlist = methods->add_subcommand("list", "Table of catalog methods");
  auto* mdump = methods->add_subcommand("dump", "JSON form of one method");
  mdump->add_option("name", o.dump_name, "Catalog name")->required();

  auto* verify = app.add_subcommand("verify", "Check design-order conditions");
  verify->add_option("--method", o.verify_method, "Single catalog method");
  verify->add_option("--tol", o.verify_tol, "Residual tolerance override");
  verify->add_option("--csv", o.verify_csv, "Write residuals to this CSV");

  auto* stability = app.add_subcommand("stability", "Linear stability region slices");
  stability->add_option("--method", o.method, "Catalog name")->required();
  stability->add_option("--slice", o.slice, "Fixed z1: z1=RE,IM");
  stability->add_option("--wedge", o.wedge, "Wedge angle: theta=T (radians)");
  stability->add_option("--grid", o.grid, "z2 grid: re0,re1,im0,im1,n")->capture_default_str();
  stability->add_option("--out", o.out, "CSV path (default: standard output)");

  auto* beta = app.add_subcommand("beta", "Coupled stiff limit polynomial beta_inf(eps)");
  beta->add_option("--method", o.method, "Catalog name")->required();

  auto* gamma = app.add_subcommand("gamma", "Cosine series gamma(theta) and its maximum");
  gamma->add_option("--method", o.method, "Catalog name")->required();

  auto* converge = app.add_subcommand("converge", "Convergence study on a test problem");
  // --h is the step-size option here, so help is long-form only.
  converge->set_help_flag("--help", "Print this help message and exit");
  converge
      ->add_option("--problem", o.problem,
                   "dahlquist | burgers-non-conservative | burgers-conservative")
      ->capture_default_str();
  converge->add_option("--methods", o.methods, "Comma-separated method names")
      ->delimiter(',')
      ->required();
  converge->add_option("--h", o.h_spec, "Step sizes h0/r^k")->capture_default_str();
  converge->add_option("--out", o.out, "CSV path");
  converge->add_option("--t-final", o.t_final, "Final time");
  converge->add_option("--lambda1", o.lambda1, "Dahlquist rate of the first argument")
      ->capture_default_str();
  converge->add_option("--lambda2", o.lambda2, "Dahlquist rate of the second argument")
      ->capture_default_str();
  converge->add_option("--epsilon", o.epsilon, "Burgers viscosity")->capture_default_str();
  converge->add_option("--n", o.n, "Burgers interior grid points")->capture_default_str();

  auto* burgers = app.add_subcommand("burgers", "Preconfigured Burgers convergence studies");
  burgers->add_option("--which", o.which, "fig1-eps200 | fig1-eps10000 | fig3")
      ->required()
      ->check(CLI::IsMember(burgers_experiment_names()));
  burgers->add_option("--out", o.out, "Output directory")->required();
  burgers->add_option("--n", o.burgers_n, "Grid points (default 1000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mlist->parsed()) return cmd_methods_list(out);
    if (mdump->parsed()) return cmd_methods_dump(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (stability->parsed()) return cmd_stability(o, out);
    if (beta->parsed()) return cmd_beta(o, out);
    if (gamma->parsed()) return cmd_gamma(o, out);
    if (converge->parsed()) return cmd_converge(o, out);
    if (burgers->parsed()) return cmd_burgers(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"nprk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace nprk::cli
