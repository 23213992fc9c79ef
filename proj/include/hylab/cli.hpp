#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hylab/common/execution.hpp"
#include "hylab/scattering.hpp"

namespace hylab::cli {

/// Every knob of a pipeline run. Keys in a config file carry a section prefix
/// (scatter., lattice., thermo., exp., hy., fock., run.).
struct RunConfig {
  // scatter.*
  std::string potential_kind = "square-well";
  double strength = 1.0;
  double range = 1.0;
  std::string potential_table;  // two-column file for the tabulated kind
  double ellL = 20.0;
  // lattice.*
  double L = 8.0;
  double kmax = 8.0;
  double kF = 1.0;
  double p_interior = 2.0;
  // thermo.*
  double beta = 1.0;
  double mu = 1.0;
  int q = 2;
  double kappa = 0.1;
  // exp.*
  double d = 1.0 / 9.0;
  std::optional<double> alpha1;
  double rho0 = 0.05;
  // hy.*
  std::string method = "deterministic";
  std::uint64_t samples = 2'000'000;
  double budget = 1e-2;
  // fock.*
  int fock_modes = 8;
  double fock_L = 6.283185307179586;
  double fock_kF = 0.6;
  double fock_rho0 = 0.8;
  int fock_states = 50;
  // run.*
  std::uint64_t seed = 20240917;
  Execution exec = Execution::parallel;
};

/// Applies one key=value assignment; unknown keys and malformed values throw invalid-input.
void set_option(RunConfig& cfg, const std::string& key, const std::string& value);
/// Parses a key=value file ('#' starts a comment).
RunConfig load_config(const std::string& path, RunConfig base = {});
RunConfig parse_config(const std::string& text, RunConfig base = {});
/// All recognised keys, in the order used by the documentation.
std::vector<std::string> config_keys();

scattering::RadialPotential make_potential(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Tables and emission

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };
Format parse_format(const std::string& name);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double x);
std::string to_csv(const Table& t);
std::string to_json(const Table& t);
/// Writes the table to `path`, or to stdout when path is empty or "-".
void emit(const Table& t, Format format, const std::string& path);
/// Parses CSV produced by to_csv (RFC 4180 quoting); used by round-trip tests.
Table parse_csv(const std::string& text);

// ---------------------------------------------------------------------------
// Verification suite

enum class Semantics { absolute, relative, interval, upper_bound, boolean };
std::string to_string(Semantics s);

struct CheckResult {
  std::string check_id;
  int criterion = 0;
  std::string module;
  std::string anchor;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  Semantics semantics = Semantics::absolute;
  bool pass = false;
  std::string detail;
};

/// |v - r| <= tol (absolute, interval), <= tol |r| (relative), v <= r + tol (upper bound),
/// v == r (boolean).
bool evaluate(Semantics s, double value, double reference, double tolerance);

class Recorder {
 public:
  Recorder(int criterion, std::string module) : criterion_(criterion), module_(std::move(module)) {}
  void check(const std::string& id, const std::string& anchor, double value, double reference,
             double tolerance, Semantics s, std::string detail = {});
  void table(const std::string& name, Table t) { tables_[name] = std::move(t); }
  std::vector<CheckResult>& results() { return results_; }
  std::map<std::string, Table>& tables() { return tables_; }

 private:
  int criterion_;
  std::string module_;
  std::vector<CheckResult> results_;
  std::map<std::string, Table> tables_;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::map<std::string, Table> tables;
  std::map<int, double> criterion_seconds;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;

  bool all_pass() const;
  bool criterion_pass(int criterion) const;
};

struct CriterionSpec {
  int id = 0;
  std::string module;
  std::string title;
  double time_limit_s = 0.0;
  std::function<void(const RunConfig&, Recorder&)> run;
};

/// Criteria 1 through 10 in order.
const std::vector<CriterionSpec>& criteria();

/// Runs every criterion whose id ("c3"), number ("3") or module name matches one of
/// the filter tags; an empty filter runs everything. Library errors become failed checks.
VerificationReport run_suite(const RunConfig& cfg, const std::vector<std::string>& filter = {});

/// Report as JSON; the "checks" array is deterministic for a fixed config and seed.
std::string report_json(const VerificationReport& r);
Table report_table(const VerificationReport& r);

// Criterion bodies, split by module family.
void check_huang_yang_constant(const RunConfig& cfg, Recorder& rec);
void check_q2_identity(const RunConfig& cfg, Recorder& rec);
void check_scattering(const RunConfig& cfg, Recorder& rec);
void check_free_gas(const RunConfig& cfg, Recorder& rec);
void check_mu_tilde(const RunConfig& cfg, Recorder& rec);
void check_lattice(const RunConfig& cfg, Recorder& rec);
void check_fock_exactness(const RunConfig& cfg, Recorder& rec);
void check_renormalizers(const RunConfig& cfg, Recorder& rec);
void check_entropy_chain(const RunConfig& cfg, Recorder& rec);
void check_constant_sums(const RunConfig& cfg, Recorder& rec);

/// Parameters of the constant-sum convergence study.
struct ConstantSumStudy {
  double rho0 = 0.05;
  std::vector<double> fermi_widths{3.0, 4.0, 5.0};  // kF L / 2 pi
  std::size_t mode_budget = 100'000;
};
Table constant_sum_trend(const RunConfig& cfg, const ConstantSumStudy& study);

// ---------------------------------------------------------------------------
// Entry point

/// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 resource limit.
int run_cli(int argc, char** argv);

}  // namespace hylab::cli
