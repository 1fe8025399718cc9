// Acceptance run: every numbered criterion at its stated tolerance, printed
// one per line. Criterion 12 reruns criteria 1-11 and compares the
// serialized reports byte for byte. An optional argument names a file that
// receives the JSON report.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "qpent/suites.hpp"

int main(int argc, char** argv) {
  using namespace qpent::suites;
  const RunConfig cfg;
  Results results;
  try {
    results = run_suite("report", cfg);
  } catch (const std::exception& e) {
    std::cerr << "acceptance run aborted: " << e.what() << '\n';
    return 2;
  }

  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s criterion %2d [%s] %s: measured %.3e, threshold %.1e\n", r.pass ? "PASS" : "FAIL",
                r.criterion_id, r.suite.c_str(), r.name.c_str(), r.measured, r.threshold);
    failed += !r.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());

  if (argc > 1) std::ofstream(argv[1]) << to_json(results, false).dump(2) << '\n';
  return failed == 0 ? 0 : 1;
}
