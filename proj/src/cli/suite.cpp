#include <algorithm>
#include <chrono>
#include <cmath>

#include "hylab/cli.hpp"
#include "hylab/common/errors.hpp"
#include "json.hpp"

namespace hylab::cli {

std::string to_string(Semantics s) {
  switch (s) {
    case Semantics::absolute: return "absolute";
    case Semantics::relative: return "relative";
    case Semantics::interval: return "interval";
    case Semantics::upper_bound: return "upper-bound";
    case Semantics::boolean: return "boolean";
  }
  return "unknown";
}

bool evaluate(Semantics s, double value, double reference, double tolerance) {
  if (!std::isfinite(value)) return false;
  switch (s) {
    case Semantics::absolute:
    case Semantics::interval:
      return std::abs(value - reference) <= tolerance;
    case Semantics::relative:
      return std::abs(value - reference) <= tolerance * std::abs(reference);
    case Semantics::upper_bound:
      return value <= reference + tolerance;
    case Semantics::boolean:
      return value == reference;
  }
  return false;
}

void Recorder::check(const std::string& id, const std::string& anchor, double value,
                     double reference, double tolerance, Semantics s, std::string detail) {
  CheckResult r;
  r.check_id = "c" + std::to_string(criterion_) + "." + id;
  r.criterion = criterion_;
  r.module = module_;
  r.anchor = anchor;
  r.value = value;
  r.reference = reference;
  r.tolerance = tolerance;
  r.semantics = s;
  r.pass = evaluate(s, value, reference, tolerance);
  r.detail = std::move(detail);
  results_.push_back(std::move(r));
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool VerificationReport::criterion_pass(int criterion) const {
  bool seen = false;
  for (const CheckResult& c : checks) {
    if (c.criterion != criterion) continue;
    seen = true;
    if (!c.pass) return false;
  }
  return seen;
}

const std::vector<CriterionSpec>& criteria() {
  static const std::vector<CriterionSpec> list = {
      {1, "huangyang", "Huang-Yang constant from the limiting integral", 300.0, check_huang_yang_constant},
      {2, "huangyang", "q=2 reduction to the classical formula", 1.0, check_q2_identity},
      {3, "scattering", "scattering length and Neumann asymptotics", 60.0, check_scattering},
      {4, "freegas", "free Fermi gas thermodynamics", 30.0, check_free_gas},
      {5, "freegas", "mu-tilde fixed point", 1.0, check_mu_tilde},
      {6, "lattice", "lattice counting and discrete scattering identity", 120.0, check_lattice},
      {7, "focklab", "Fock space exactness", 300.0, check_fock_exactness},
      {8, "focklab", "renormalizer identities", 300.0, check_renormalizers},
      {9, "focklab", "relative entropy chain", 300.0, check_entropy_chain},
      {10, "huangyang", "constant-sum convergence", 900.0, check_constant_sums},
  };
  return list;
}

namespace {

bool selected(const CriterionSpec& c, const std::vector<std::string>& filter) {
  if (filter.empty()) return true;
  for (const std::string& tag : filter) {
    if (tag == "c" + std::to_string(c.id) || tag == std::to_string(c.id) || tag == c.module) return true;
    if (tag == "fock" && c.module == "focklab") return true;
    if (tag == "free-gas" && c.module == "freegas") return true;
    if (tag == "hy" && c.module == "huangyang") return true;
  }
  return false;
}

}  // namespace

VerificationReport run_suite(const RunConfig& cfg, const std::vector<std::string>& filter) {
  using clock = std::chrono::steady_clock;
  VerificationReport rep;
  rep.seed = cfg.seed;
  const auto t0 = clock::now();
  for (const CriterionSpec& c : criteria()) {
    if (!selected(c, filter)) continue;
    Recorder rec(c.id, c.module);
    const auto start = clock::now();
    try {
      c.run(cfg, rec);
    } catch (const Error& e) {
      rec.check("error", "plumbing", 0.0, 1.0, 0.0, Semantics::boolean, e.what());
    } catch (const std::exception& e) {
      rec.check("error", "plumbing", 0.0, 1.0, 0.0, Semantics::boolean, e.what());
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    rep.criterion_seconds[c.id] = secs;
    if (rec.results().empty()) {
      rec.check("no_checks", "plumbing", 0.0, 1.0, 0.0, Semantics::boolean, "criterion produced no checks");
    }
    for (CheckResult& r : rec.results()) rep.checks.push_back(std::move(r));
    for (auto& [name, t] : rec.tables()) rep.tables[name] = std::move(t);
  }
  rep.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return rep;
}

std::string report_json(const VerificationReport& r) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::ordered_json j;
    j["check_id"] = c.check_id;
    j["criterion"] = c.criterion;
    j["module"] = c.module;
    j["anchor"] = c.anchor;
    j["value"] = std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nlohmann::ordered_json(nullptr);
    j["reference"] = c.reference;
    j["tolerance"] = c.tolerance;
    j["semantics"] = to_string(c.semantics);
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["seed"] = r.seed;
  out["all_pass"] = r.all_pass();
  out["checks"] = std::move(checks);
  nlohmann::ordered_json timing = nlohmann::ordered_json::object();
  for (const auto& [id, s] : r.criterion_seconds) timing["c" + std::to_string(id)] = s;
  out["criterion_seconds"] = std::move(timing);
  out["wall_seconds"] = r.wall_seconds;
  return out.dump(2) + "\n";
}

Table report_table(const VerificationReport& r) {
  Table t;
  t.header = {"check_id", "criterion", "module", "anchor", "value", "reference", "tolerance",
              "semantics", "pass", "detail"};
  for (const CheckResult& c : r.checks) {
    t.rows.push_back({c.check_id, std::int64_t{c.criterion}, c.module, c.anchor, c.value, c.reference,
                      c.tolerance, to_string(c.semantics), std::string(c.pass ? "true" : "false"),
                      c.detail});
  }
  return t;
}

}  // namespace hylab::cli
