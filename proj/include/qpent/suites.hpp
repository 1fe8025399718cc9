#pragma once

// Verification suites shared by the command-line tool, the acceptance test
// and the Python module. Each suite evaluates a fixed set of numbered
// criteria and reports the measured value against its threshold.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpent/kop.hpp"

namespace qpent::suites {

struct RunConfig {
  /// Planck constants for the fifth-power check.
  std::vector<double> hbars{1.0};
  /// Planck constants for the functional-equation checks of Phi.
  std::vector<double> phi_hbars{0.3, 1.0, 2.7};
  /// Planck constants for the unitarity check.
  std::vector<double> unitarity_hbars{0.5, 1.0, 1.7};
  /// Planck constants for the intertwining identities.
  std::vector<double> identity_hbars{0.5, 0.8, 1.3};
  kop::GridSpec grid{40.0, 4096};
  /// Tolerance of Phi and of the K quadrature.
  double quad_tol = 1e-10;
  /// Box half-widths of the exhaustive exact sweeps.
  int gamma_range = 50;
  int cluster_range = 8;
  int multiply_range = 5;
  int qtorus_range = 6;
  int moduli_degree = 2;
  std::uint64_t seed = 20240601;
  /// Include wall-clock times in reports (they make reports non-reproducible).
  bool timing = false;

  /// Throws std::invalid_argument on a non-positive tolerance, an empty list
  /// or a negative range.
  void validate() const;
};

struct CriterionResult {
  std::string suite;
  int criterion_id = 0;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  /// Extra values worth reporting (per-hbar tables, arg lambda, counts).
  nlohmann::json detail = nlohmann::json::object();
};

using Results = std::vector<CriterionResult>;

/// Criteria 1-5: functional equations, unit modulus, product formula,
/// modular duality, semiclassical limit.
Results phi_suite(const RunConfig& cfg);
/// Criteria 6-7: unitarity and the three basic intertwining identities.
Results intertwine_suite(const RunConfig& cfg);
/// Criterion 8: fifth power of the normalized K, and its refinement trend.
Results pentagon_suite(const RunConfig& cfg);
/// Criterion 9: classical cluster checks.
Results cluster_suite(const RunConfig& cfg);
/// Criterion 10: quantum torus checks.
Results qtorus_suite(const RunConfig& cfg);
/// Criterion 11: moduli checks.
Results moduli_suite(const RunConfig& cfg);
/// Criteria 1-11, then criterion 12: a second full run must serialize to the
/// same bytes.
Results report_suite(const RunConfig& cfg);

/// Suite names in the fixed aggregation order; the position plus one is the
/// suite's exit code when it fails.
const std::vector<std::string>& suite_names();
/// Runs a suite by name; throws std::invalid_argument for an unknown name.
Results run_suite(const std::string& name, const RunConfig& cfg);
/// 1-based position in suite_names(), 0 if unknown.
int suite_index(const std::string& name);

/// {criteria: [{suite, criterion_id, name, measured, threshold, pass, detail,
/// runtime_ms?}], pass}
nlohmann::json to_json(const Results& results, bool timing);
std::string to_markdown(const Results& results, bool timing);
/// suite,criterion_id,name,measured,threshold,pass[,runtime_ms]
std::string to_csv(const Results& results, bool timing);

/// The WVectors used by a suite, drawn from the seed.
std::vector<wspace::WVector> sample_vectors(std::uint64_t seed, std::size_t count);

}  // namespace qpent::suites
