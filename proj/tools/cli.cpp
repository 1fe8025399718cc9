#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpent/cluster.hpp"
#include "qpent/errors.hpp"
#include "qpent/io.hpp"
#include "qpent/qtorus.hpp"
#include "qpent/specfun.hpp"
#include "qpent/suites.hpp"

namespace qpent::cli {

using nlohmann::json;

namespace {

constexpr const char* kFooter = R"(Config file (--config FILE):
  key=value lines, '#' comments. Top-level keys mirror the global flags
  (hbar=0.5,0.8  grid=4096x40  tol=1e-10  seed=7  format=md  output=out
  timing=true); subcommand flags are written as <subcommand>.<flag>, e.g.
  cluster.range=8. Flags given on the command line override the file.

Output formats (--format):
  json  {criteria: [{suite, criterion_id, name, measured, threshold, pass,
        detail, runtime_ms?}], pass}; runtime_ms only with --timing.
  csv   suite,criterion_id,name,measured,threshold,pass[,runtime_ms]
        (pass is 1 or 0).
  md    one table row per criterion.

Other CSV files:
  phi --table                 x,re_phi,im_phi,abs_phi
  pentagon (with --output)    pentagon_residual_vs_hbar.csv: hbar,max_fit_residual
  qtorus --matrix N           N rows of 2N columns re,im,re,im,... holding the
                              clock-shift matrix of I^q(--point).

Exit codes:
  0   every selected check passed
  1-7 first failing suite: phi, intertwine, pentagon, cluster, qtorus,
      moduli, report
  64  malformed flags or config file
  65  numerical nonconvergence
  70  other library error

Environment: QPENT_WORKERS overrides the worker thread count.)";

kop::GridSpec parse_grid(const std::string& text) {
  static const std::regex re(R"(^\s*(\d+)\s*[xX]\s*([0-9]*\.?[0-9]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("grid must look like 4096x40, got \"" + text + "\"");
  kop::GridSpec g{std::stod(m[2].str()), static_cast<std::size_t>(std::stoull(m[1].str()))};
  g.validate();
  return g;
}

cluster::TropicalPoint parse_point(const std::string& text) {
  static const std::regex re(R"(^\s*(-?\d+)\s*,\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("point must look like a,b, got \"" + text + "\"");
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

struct Options {
  std::string config;
  std::vector<double> hbar;
  std::string grid;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  bool timing = false;

  std::vector<std::string> eval;
  bool table = false;
  double table_range = 5.0;
  int table_points = 101;

  int cluster_range = -1, gamma_range = -1, multiply_range = -1;
  bool cluster_dump = false;
  int qtorus_range = -1;
  bool qtorus_dump = false;
  int matrix_n = 0;
  std::string point = "1,0";
  int degree = -1;
};

class Emitter {
 public:
  Emitter(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  // Writes `text` to <output>/<name>, or to the stream without --output.
  void write(const std::string& name, const std::string& text) const {
    if (o_.output.empty()) {
      out_ << text;
      if (!text.empty() && text.back() != '\n') out_ << '\n';
      return;
    }
    std::filesystem::create_directories(o_.output);
    const auto path = std::filesystem::path(o_.output) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
    out_ << "wrote " << path.string() << '\n';
  }

  void report(const std::string& command, const suites::Results& results) const {
    if (o_.format == "csv")
      write(command + ".csv", suites::to_csv(results, o_.timing));
    else if (o_.format == "md")
      write(command + ".md", suites::to_markdown(results, o_.timing));
    else
      write(command + ".json", suites::to_json(results, o_.timing).dump(2));
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

int exit_code(const suites::Results& results) {
  for (const auto& r : results) {
    bool ok = r.pass;
    if (r.detail.contains("general_pass")) ok = ok && r.detail["general_pass"].get<bool>();
    if (!ok) return suites::suite_index(r.suite);
  }
  return 0;
}

suites::RunConfig run_config(const Options& o, const std::string& command) {
  suites::RunConfig cfg;
  if (!o.hbar.empty()) {
    if (command == "phi")
      cfg.phi_hbars = o.hbar;
    else if (command == "intertwine")
      cfg.unitarity_hbars = cfg.identity_hbars = o.hbar;
    else
      cfg.hbars = o.hbar;
  }
  if (!o.grid.empty()) cfg.grid = parse_grid(o.grid);
  if (o.tol != 0.0) cfg.quad_tol = o.tol;
  if (o.seed != 0) cfg.seed = o.seed;
  if (o.cluster_range >= 0) cfg.cluster_range = o.cluster_range;
  if (o.gamma_range >= 0) cfg.gamma_range = o.gamma_range;
  if (o.multiply_range >= 0) cfg.multiply_range = o.multiply_range;
  if (o.qtorus_range >= 0) cfg.qtorus_range = o.qtorus_range;
  if (o.degree >= 0) cfg.moduli_degree = o.degree;
  cfg.timing = o.timing;
  cfg.validate();
  return cfg;
}

int cmd_phi_eval(const Options& o, const Emitter& emit) {
  const std::vector<double> hbars = o.hbar.empty() ? std::vector<double>{1.0} : o.hbar;
  if (o.table) {
    if (o.table_points < 2 || !(o.table_range > 0.0))
      throw std::invalid_argument("--table-points must be >= 2 and --table-range positive");
    for (double h : hbars) {
      const specfun::PhiParams P(h);
      std::ostringstream os;
      os << std::setprecision(17) << "x,re_phi,im_phi,abs_phi\n";
      for (int k = 0; k < o.table_points; ++k) {
        const double x = -o.table_range + 2.0 * o.table_range * k / (o.table_points - 1);
        const auto v = specfun::phi_integral(x, P);
        os << x << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << '\n';
      }
      std::ostringstream name;
      name << "phi_table_hbar_" << h << ".csv";
      emit.write(name.str(), os.str());
    }
  }
  if (!o.eval.empty()) {
    json rows = json::array();
    for (const auto& e : o.eval) {
      const auto eq = e.find('=');
      if (eq == std::string::npos || e.substr(0, eq) != "z")
        throw std::invalid_argument("--eval expects z=<complex>, got \"" + e + "\"");
      const std::complex<double> z = parse_complex(e.substr(eq + 1));
      for (double h : hbars) {
        const specfun::PhiParams P(h);
        json row = {{"z", complex_json(z)}, {"hbar", h}};
        const auto v = specfun::phi_integral(z, P);
        row["phi"] = complex_json(v);
        row["abs_phi"] = std::abs(v);
        auto residual = [&](auto fn) -> json {
          try {
            return fn();
          } catch (const StripViolation&) {
            return nullptr;  // shifted point leaves the strip
          }
        };
        row["residuals"] = {
            {"shift_hbar", residual([&] { return specfun::shift_residual_hbar(z, P); })},
            {"shift_unit", residual([&] { return specfun::shift_residual_unit(z, P); })},
            {"duality", residual([&] { return specfun::duality_residual(z, h); })}};
        rows.push_back(std::move(row));
      }
    }
    emit.write("phi_eval.json", rows.dump(2));
  }
  return 0;
}

int cmd_cluster_dump(const Options& o, const Emitter& emit) {
  const int R = o.cluster_range >= 0 ? o.cluster_range : 8;
  std::ostringstream os;
  for (int a = -R; a <= R; ++a)
    for (int b = -R; b <= R; ++b) os << cluster::dump_line({a, b}, cluster::canonical_IA({a, b})) << '\n';
  emit.write("cluster_basis.txt", os.str());
  return 0;
}

int cmd_qtorus_dump(const Options& o, const Emitter& emit) {
  const int R = o.qtorus_range >= 0 ? o.qtorus_range : 6;
  std::ostringstream os;
  for (int a = -R; a <= R; ++a)
    for (int b = -R; b <= R; ++b) os << qtorus::dump_line({a, b}, qtorus::canonical_IAq({a, b})) << '\n';
  emit.write("qtorus_basis.txt", os.str());
  return 0;
}

int cmd_qtorus_matrix(const Options& o, const Emitter& emit) {
  if (o.matrix_n < 3 || o.matrix_n % 2 == 0)
    throw std::invalid_argument("--matrix needs an odd N >= 3, got " + std::to_string(o.matrix_n));
  const auto p = parse_point(o.point);
  const auto m = qtorus::clock_shift_model(qtorus::canonical_IAq(p), o.matrix_n);
  emit.write("clock_shift_N" + std::to_string(o.matrix_n) + ".csv", qtorus::matrix_to_csv(m));
  return 0;
}

void write_pentagon_plot(const suites::Results& results, const Emitter& emit, const Options& o) {
  if (o.output.empty() || results.empty()) return;
  std::ostringstream os;
  os << std::setprecision(17) << "hbar,max_fit_residual\n";
  for (const auto& e : results.front().detail["per_hbar"])
    os << e["hbar"].get<double>() << ',' << e["residuals"]["max_fit_residual"].get<double>() << '\n';
  emit.write("pentagon_residual_vs_hbar.csv", os.str());
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  static const std::string num = R"([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)";
  static const std::regex real_only("^([+-]?" + num + ")$");
  static const std::regex imag_only("^([+-]?)(" + num + ")?i$");
  static const std::regex both("^([+-]?" + num + ")([+-])(" + num + ")?i$");
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::smatch m;
  if (std::regex_match(s, m, real_only)) return {std::stod(m[1].str()), 0.0};
  if (std::regex_match(s, m, imag_only)) {
    const double mag = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -mag : mag};
  }
  if (std::regex_match(s, m, both)) {
    const double mag = m[3].matched ? std::stod(m[3].str()) : 1.0;
    return {std::stod(m[1].str()), m[2].str() == "-" ? -mag : mag};
  }
  throw std::invalid_argument("not a complex number: \"" + text + "\"");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Numerical and exact verification of the quantum pentagon operator and its cluster structures",
               "qpent"};
  app.fallthrough();
  app.require_subcommand(1);
  app.footer(kFooter);
  app.set_config("--config", "", "key=value configuration file");
  app.add_option("--hbar", o.hbar, "Planck constants, comma separated")->delimiter(',');
  app.add_option("--grid", o.grid, "grid for the fifth-power check as NxL (points x half-width)");
  app.add_option("--tol", o.tol, "quadrature tolerance (default 1e-10)");
  app.add_option("--seed", o.seed, "seed for random sampling (default 20240601)");
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_option("--output", o.output, "directory for report files (default: stdout)");
  app.add_flag("--timing", o.timing, "include runtime_ms in reports");

  auto* phi = app.add_subcommand("phi", "Phi: evaluate values and tables, or run criteria 1-5");
  phi->add_option("--eval", o.eval, "evaluate at z=<complex>, e.g. z=0.5+1i (repeatable)");
  phi->add_flag("--table", o.table, "emit a CSV table of Phi on [-R, R]");
  phi->add_option("--table-range", o.table_range, "R for --table (default 5)");
  phi->add_option("--table-points", o.table_points, "number of table rows (default 101)");

  app.add_subcommand("intertwine", "unitarity and intertwining identities (criteria 6-7)");
  app.add_subcommand("pentagon", "fifth power of K and its grid refinement (criterion 8)");

  auto* cl = app.add_subcommand("cluster", "classical cluster checks (criterion 9)");
  cl->add_option("--range", o.cluster_range, "box half-width for the canonical-basis sweeps (default 8)");
  cl->add_option("--gamma-range", o.gamma_range, "box half-width for the tropical order-5 sweep (default 50)");
  cl->add_option("--multiply-range", o.multiply_range, "box half-width for basis multiplication (default 5)");
  cl->add_flag("--dump", o.cluster_dump, "write the canonical basis on the box instead of checking");

  auto* qt = app.add_subcommand("qtorus", "quantum torus checks (criterion 10)");
  qt->add_option("--range", o.qtorus_range, "box half-width (default 6)");
  qt->add_flag("--dump", o.qtorus_dump, "write the quantum canonical basis on the box instead of checking");
  qt->add_option("--matrix", o.matrix_n, "write the clock-shift matrix of I^q(--point) for odd N >= 3");
  qt->add_option("--point", o.point, "tropical point a,b for --matrix (default 1,0)");

  auto* mo = app.add_subcommand("moduli", "cross-ratio, Pluecker and independence checks (criterion 11)");
  mo->add_option("--degree", o.degree, "degree bound of the independence check (default 2)");

  app.add_subcommand("report", "every suite twice, plus the determinism check (criteria 1-12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const suites::RunConfig cfg = run_config(o, command);
    const Emitter emit(o, out);
    if (command == "phi" && (!o.eval.empty() || o.table)) return cmd_phi_eval(o, emit);
    if (command == "cluster" && o.cluster_dump) return cmd_cluster_dump(o, emit);
    if (command == "qtorus" && o.qtorus_dump) return cmd_qtorus_dump(o, emit);
    if (command == "qtorus" && o.matrix_n != 0) return cmd_qtorus_matrix(o, emit);

    const suites::Results results = suites::run_suite(command, cfg);
    emit.report(command, results);
    if (command == "pentagon") write_pentagon_plot(results, emit, o);
    return exit_code(results);
  } catch (const std::invalid_argument& e) {
    err << "qpent: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "qpent: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "qpent: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace qpent::cli
