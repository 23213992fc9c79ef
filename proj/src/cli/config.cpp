#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hylab/cli.hpp"
#include "hylab/common/errors.hpp"

namespace hylab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == v.size() && !v.empty() && std::isfinite(x), ErrorKind::InvalidInput,
          "value of " + key + " is not a finite number: '" + v + "'");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  require(ec == std::errc() && ptr == v.data() + v.size() && !v.empty(), ErrorKind::InvalidInput,
          "value of " + key + " is not an unsigned integer: '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const std::uint64_t x = to_u64(key, v);
  require(x <= 1'000'000'000ull, ErrorKind::InvalidInput, "value of " + key + " is too large");
  return static_cast<int>(x);
}

using Setter = void (*)(RunConfig&, const std::string&, const std::string&);

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"scatter.kind", [](RunConfig& c, const std::string&, const std::string& v) {
         scattering::parse_potential_kind(v);
         c.potential_kind = v;
       }},
      {"scatter.strength", [](RunConfig& c, const std::string& k, const std::string& v) { c.strength = to_double(k, v); }},
      {"scatter.range", [](RunConfig& c, const std::string& k, const std::string& v) { c.range = to_double(k, v); }},
      {"scatter.table", [](RunConfig& c, const std::string&, const std::string& v) { c.potential_table = v; }},
      {"scatter.ellL", [](RunConfig& c, const std::string& k, const std::string& v) { c.ellL = to_double(k, v); }},
      {"lattice.L", [](RunConfig& c, const std::string& k, const std::string& v) { c.L = to_double(k, v); }},
      {"lattice.kmax", [](RunConfig& c, const std::string& k, const std::string& v) { c.kmax = to_double(k, v); }},
      {"lattice.kF", [](RunConfig& c, const std::string& k, const std::string& v) { c.kF = to_double(k, v); }},
      {"lattice.p_interior", [](RunConfig& c, const std::string& k, const std::string& v) { c.p_interior = to_double(k, v); }},
      {"thermo.beta", [](RunConfig& c, const std::string& k, const std::string& v) { c.beta = to_double(k, v); }},
      {"thermo.mu", [](RunConfig& c, const std::string& k, const std::string& v) { c.mu = to_double(k, v); }},
      {"thermo.q", [](RunConfig& c, const std::string& k, const std::string& v) { c.q = to_int(k, v); }},
      {"thermo.kappa", [](RunConfig& c, const std::string& k, const std::string& v) { c.kappa = to_double(k, v); }},
      {"exp.d", [](RunConfig& c, const std::string& k, const std::string& v) { c.d = to_double(k, v); }},
      {"exp.alpha1", [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha1 = to_double(k, v); }},
      {"exp.rho0", [](RunConfig& c, const std::string& k, const std::string& v) { c.rho0 = to_double(k, v); }},
      {"hy.method", [](RunConfig& c, const std::string&, const std::string& v) {
         require(v == "deterministic" || v == "monte-carlo" || v == "mc", ErrorKind::InvalidInput,
                 "hy.method must be deterministic or monte-carlo");
         c.method = v;
       }},
      {"hy.samples", [](RunConfig& c, const std::string& k, const std::string& v) { c.samples = to_u64(k, v); }},
      {"hy.budget", [](RunConfig& c, const std::string& k, const std::string& v) { c.budget = to_double(k, v); }},
      {"fock.modes", [](RunConfig& c, const std::string& k, const std::string& v) { c.fock_modes = to_int(k, v); }},
      {"fock.L", [](RunConfig& c, const std::string& k, const std::string& v) { c.fock_L = to_double(k, v); }},
      {"fock.kF", [](RunConfig& c, const std::string& k, const std::string& v) { c.fock_kF = to_double(k, v); }},
      {"fock.rho0", [](RunConfig& c, const std::string& k, const std::string& v) { c.fock_rho0 = to_double(k, v); }},
      {"fock.states", [](RunConfig& c, const std::string& k, const std::string& v) { c.fock_states = to_int(k, v); }},
      {"run.seed", [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = to_u64(k, v); }},
      {"run.exec", [](RunConfig& c, const std::string&, const std::string& v) {
         require(v == "serial" || v == "parallel", ErrorKind::InvalidInput,
                 "run.exec must be serial or parallel");
         c.exec = v == "serial" ? Execution::serial : Execution::parallel;
       }},
  };
  return table;
}

}  // namespace

void set_option(RunConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& [name, fn] : setters()) {
    if (name == key) {
      fn(cfg, key, trim(value));
      return;
    }
  }
  fail(ErrorKind::InvalidInput, "unknown configuration key '" + key + "'");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& entry : setters()) keys.push_back(entry.first);
  return keys;
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorKind::InvalidInput,
            "line " + std::to_string(lineno) + ": expected key=value");
    set_option(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  require(f.good(), ErrorKind::IoError, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

scattering::RadialPotential make_potential(const RunConfig& cfg) {
  using scattering::RadialPotential;
  switch (scattering::parse_potential_kind(cfg.potential_kind)) {
    case scattering::PotentialKind::SquareWell:
      return RadialPotential::square_well(cfg.strength, cfg.range);
    case scattering::PotentialKind::GaussianBump:
      return RadialPotential::gaussian_bump(cfg.strength, cfg.range);
    case scattering::PotentialKind::Tabulated: {
      require(!cfg.potential_table.empty(), ErrorKind::InvalidInput,
              "tabulated potential needs scatter.table");
      std::ifstream f(cfg.potential_table);
      require(f.good(), ErrorKind::IoError, "cannot open potential table '" + cfg.potential_table + "'");
      std::vector<double> r, v;
      std::string line;
      while (std::getline(f, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (char& ch : line) {
          if (ch == ',') ch = ' ';
        }
        std::istringstream ls(line);
        double a = 0.0, b = 0.0;
        if (!(ls >> a)) continue;
        require(static_cast<bool>(ls >> b), ErrorKind::InvalidInput, "potential table rows need two columns");
        r.push_back(a);
        v.push_back(b);
      }
      return RadialPotential::tabulated(std::move(r), std::move(v));
    }
  }
  fail(ErrorKind::InvalidInput, "unknown potential kind");
}

}  // namespace hylab::cli
