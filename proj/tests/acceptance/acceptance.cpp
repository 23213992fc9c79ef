// Runs every acceptance criterion at its stated tolerance and prints one line per criterion.
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "hylab/cli.hpp"

using namespace hylab::cli;

int main(int argc, char** argv) {
  std::string report_path;
  std::vector<std::string> filter;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--report") == 0 && i + 1 < argc) {
      report_path = argv[++i];
    } else {
      filter.emplace_back(argv[i]);
    }
  }

  const RunConfig cfg;
  const VerificationReport rep = run_suite(cfg, filter);

  for (const CriterionSpec& c : criteria()) {
    if (!rep.criterion_seconds.count(c.id)) continue;
    const double secs = rep.criterion_seconds.at(c.id);
    const bool in_time = secs <= c.time_limit_s;
    const bool ok = rep.criterion_pass(c.id) && in_time;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << "  " << c.title << "  ["
              << std::fixed << std::setprecision(2) << secs << " s of " << c.time_limit_s << " s]\n";
    for (const CheckResult& r : rep.checks) {
      if (r.criterion != c.id || r.pass) continue;
      std::cout << "      failed " << r.check_id << ": value " << format_number(r.value) << ", reference "
                << format_number(r.reference) << ", tolerance " << format_number(r.tolerance) << " ("
                << to_string(r.semantics) << ")";
      if (!r.detail.empty()) std::cout << "; " << r.detail;
      std::cout << "\n";
    }
    if (!in_time) std::cout << "      exceeded the time limit\n";
  }
  std::cout << "wall time " << std::fixed << std::setprecision(2) << rep.wall_seconds << " s\n";

  if (!report_path.empty()) {
    std::ofstream f(report_path);
    f << report_json(rep);
  }
  bool all = true;
  for (const CriterionSpec& c : criteria()) {
    if (rep.criterion_seconds.count(c.id)) {
      all = all && rep.criterion_pass(c.id) && rep.criterion_seconds.at(c.id) <= c.time_limit_s;
    }
  }
  return all ? 0 : 1;
}
