#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hylab/cli.hpp"
#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/focklab.hpp"
#include "hylab/freegas.hpp"
#include "hylab/huangyang.hpp"
#include "hylab/lattice.hpp"
#include "json.hpp"

namespace hylab::cli {

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::vector<std::string> overrides;
  bool serial = false;
};

struct Sweep {
  double a = 0.0, b = 0.0;
  int n = 1;
  std::vector<double> points() const {
    std::vector<double> p;
    for (int i = 0; i < n; ++i) p.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return p;
  }
};

// "a:b:n", optionally prefixed by "name=".
Sweep parse_sweep(std::string text, const std::string& expected_name = {}) {
  if (const auto eq = text.find('='); eq != std::string::npos) {
    require(expected_name.empty() || text.substr(0, eq) == expected_name, ErrorKind::InvalidInput,
            "sweep must be over " + expected_name);
    text = text.substr(eq + 1);
  }
  Sweep s;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  in >> s.a >> c1 >> s.b >> c2 >> s.n;
  require(in && c1 == ':' && c2 == ':' && s.n >= 1 && in.peek() == EOF, ErrorKind::InvalidInput,
          "sweep must look like a:b:n");
  return s;
}

void write_text(const std::string& body, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  require(f.good(), ErrorKind::IoError, "cannot open '" + path + "' for writing");
  f << body;
  require(f.good(), ErrorKind::IoError, "write to '" + path + "' failed");
}

// A single record, written as a JSON object or a one-row CSV.
void emit_record(const nlohmann::ordered_json& obj, const std::string& format, const std::string& path) {
  if (format.empty() || format == "json") {
    write_text(obj.dump(2) + "\n", path);
    return;
  }
  Table t;
  std::vector<Cell> row;
  for (const auto& [k, v] : obj.items()) {
    t.header.push_back(k);
    if (v.is_number_unsigned()) {
      row.emplace_back(static_cast<std::int64_t>(v.get<std::uint64_t>()));
    } else if (v.is_number_integer()) {
      row.emplace_back(v.get<std::int64_t>());
    } else if (v.is_number()) {
      row.emplace_back(v.get<double>());
    } else {
      row.emplace_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  t.rows.push_back(std::move(row));
  emit(t, parse_format(format), path);
}

void emit_table(const Table& t, const std::string& format, const std::string& path) {
  emit(t, format.empty() ? Format::csv : parse_format(format), path);
}

// A potential file holds the scatter.* block; bare keys are read as scatter.<key>.
void apply_potential_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  require(f.good(), ErrorKind::IoError, "cannot open potential file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = nlohmann::json::parse(text);
    for (const auto& [k, v] : j.items()) {
      const std::string key = k.find('.') == std::string::npos ? "scatter." + k : k;
      set_option(cfg, key, v.is_string() ? v.get<std::string>() : v.dump());
    }
    return;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      require(line.find_first_not_of(" \t\r") == std::string::npos, ErrorKind::InvalidInput,
              "potential file lines must be key=value");
      continue;
    }
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key.find('.') == std::string::npos) key = "scatter." + key;
    set_option(cfg, key, line.substr(eq + 1));
  }
}

RunConfig resolve(const Globals& g) {
  RunConfig cfg;
  if (!g.config.empty()) cfg = load_config(g.config, cfg);
  for (const std::string& kv : g.overrides) {
    const auto eq = kv.find('=');
    require(eq != std::string::npos, ErrorKind::InvalidInput, "--set expects key=value");
    set_option(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (g.seed) cfg.seed = *g.seed;
  if (g.serial) cfg.exec = Execution::serial;
  return cfg;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::IoError:
      return 2;
    case ErrorKind::ResourceLimit:
      return 3;
    default:
      return 1;
  }
}

void print_summary(const VerificationReport& rep) {
  for (const CriterionSpec& c : criteria()) {
    if (!rep.criterion_seconds.count(c.id)) continue;
    std::cerr << (rep.criterion_pass(c.id) ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.title
              << "  (" << format_number(std::round(rep.criterion_seconds.at(c.id) * 100.0) / 100.0) << " s)\n";
  }
}

int write_report(const VerificationReport& rep, const std::string& format, const std::string& path) {
  if (format.empty() || format == "json") {
    write_text(report_json(rep), path);
  } else {
    emit(report_table(rep), parse_format(format), path);
  }
  print_summary(rep);
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Dilute Fermi gas toolkit: scattering, lattice sums, free gas, Huang-Yang constants, Fock space checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--config", g.config, "key=value configuration file");
  app.add_option("--seed", g.seed, "64-bit seed for every random stream");
  app.add_option("--out", g.out, "output path ('-' for stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--set", g.overrides, "configuration override key=value (repeatable)");
  app.add_flag("--serial", g.serial, "use the serial reference kernels");

  std::function<int()> action;

  // scatter
  auto* scatter = app.add_subcommand("scatter", "Neumann scattering solutions");
  std::string potential_file;
  std::optional<double> ellL;
  std::string sweep_text;
  scatter->add_option("--potential", potential_file, "potential block file (kind, strength, range)");
  scatter->add_option("--ellL", ellL, "ball radius");
  scatter->add_option("--sweep", sweep_text, "ellL sweep a:b:n");
  scatter->callback([&] {
    action = [&] {
      RunConfig cfg = resolve(g);
      if (!potential_file.empty()) apply_potential_file(cfg, potential_file);
      const auto v = make_potential(cfg);
      const double a0 = scattering::scattering_length(v);
      const std::vector<double> radii =
          sweep_text.empty() ? std::vector<double>{ellL.value_or(cfg.ellL)} : parse_sweep(sweep_text).points();
      Table t;
      t.header = {"ellL", "lambda", "a0", "residual", "int_vf", "int_w"};
      for (double R : radii) {
        const auto s = scattering::solve_neumann(v, R);
        const auto [vf, w] = scattering::integrals_vf_w(s, v);
        t.rows.push_back({R, s.lambda_ell, a0, s.residual, vf, w});
      }
      emit_table(t, g.format, g.out);
      return 0;
    };
  });

  // lattice
  auto* lat = app.add_subcommand("lattice", "eta, W and vhat on the momentum lattice");
  std::optional<double> lat_L, lat_kmax, lat_ellL;
  lat->add_option("--L", lat_L, "box side");
  lat->add_option("--kmax", lat_kmax, "momentum cutoff");
  lat->add_option("--ellL", lat_ellL, "scattering ball radius (default 3L/8)");
  lat->add_option("--potential", potential_file, "potential block file");
  lat->callback([&] {
    action = [&] {
      RunConfig cfg = resolve(g);
      if (!potential_file.empty()) apply_potential_file(cfg, potential_file);
      const double L = lat_L.value_or(cfg.L);
      const double kmax = lat_kmax.value_or(cfg.kmax);
      const lattice::MomentumLattice ml(L, kmax);
      const auto v = make_potential(cfg);
      const auto sol = scattering::solve_neumann(v, lat_ellL.value_or(0.375 * L));
      const auto tab = lattice::build_tables(sol, v, L, kmax, cfg.exec);
      Table t;
      t.header = {"nx", "ny", "nz", "|k|", "eta", "W", "vhat"};
      for (const auto& n : ml.modes()) {
        t.rows.push_back({std::int64_t{n.x}, std::int64_t{n.y}, std::int64_t{n.z}, ml.norm(n), tab.eta(n),
                          tab.W(n), tab.vhat(n)});
      }
      emit_table(t, g.format, g.out);
      return 0;
    };
  });

  // free-gas
  auto* fg = app.add_subcommand("free-gas", "ideal Fermi gas thermodynamics");
  std::optional<double> beta, mu, kappa, a0_opt;
  std::optional<int> q;
  fg->add_option("--beta", beta);
  fg->add_option("--mu", mu);
  fg->add_option("--q", q);
  fg->add_option("--kappa", kappa);
  fg->callback([&] {
    action = [&] {
      RunConfig cfg = resolve(g);
      const freegas::ThermoState st{beta.value_or(cfg.beta), mu.value_or(cfg.mu), q.value_or(cfg.q)};
      st.validate();
      nlohmann::ordered_json j;
      j["P0"] = freegas::pressure0(st);
      j["rho0"] = freegas::density0(st);
      j["drho0_dmu"] = freegas::density0_dmu(st);
      j["mu_tilde"] = st.mu > 0.0 ? freegas::solve_mu_tilde(st.mu, kappa.value_or(cfg.kappa)) : st.mu;
      j["z"] = st.fugacity();
      emit_record(j, g.format, g.out);
      return 0;
    };
  });

  // hy
  auto* hy = app.add_subcommand("hy", "Huang-Yang coefficient, integral, pressure and constant sums");
  hy->require_subcommand(1);
  auto* hy_coeff = hy->add_subcommand("coeff", "closed-form coefficient");
  hy_coeff->add_option("--q", q);
  hy_coeff->callback([&] {
    action = [&] {
      RunConfig cfg = resolve(g);
      nlohmann::ordered_json j;
      j["value"] = huangyang::hy_coefficient(q.value_or(cfg.q));
      j["error_estimate"] = 0.0;
      j["seed"] = cfg.seed;
      emit_record(j, g.format, g.out);
      return 0;
    };
  });
  auto* hy_int = hy->add_subcommand("integral", "the limiting six-dimensional integral");
  std::optional<double> kF, eps0;
  std::optional<std::string> method;
  std::optional<std::uint64_t> samples;
  hy_int->add_option("--kF", kF);
  hy_int->add_option("--epsilon0", eps0, "regulator in the denominator (default 0)");
  hy_int->add_option("--method", method)->check(CLI::IsMember({"deterministic", "mc"}));
  hy_int->add_option("--samples", samples);
  hy_int->callback([&] {
    action = [&] {
      RunConfig cfg = resolve(g);
      huangyang::IntegralOptions o;
      o.method = huangyang::parse_method(method.value_or(cfg.method));
      o.samples = samples.value_or(cfg.samples);
      o.seed = cfg.seed;
      o.budget = cfg.budget;
      o.exec = cfg.exec;
      const auto r = huangyang::hy_integral(kF.value_or(cfg.kF), eps0.value_or(0.0), o);
      nlohmann::ordered_json j;
      j["value"] = r.value;
      j["error_estimate"] = r.error_estimate;
      j["seed"] = cfg.seed;
      emit_record(j, g.format, g.out);
      return 0;
    };
  });
  auto* hy_p = hy->add_subcommand("pressure", "low-density pressure expansion");
  hy_p->add_option("--beta", beta);
  hy_p->add_option("--mu", mu);
  hy_p->add_option("--q", q);
  hy_p->add_option("--a0", a0_opt, "scattering length (default: from the configured potential)");
  hy_p->callback([&] {
    action = [&] {
      RunConfig cfg = resolve(g);
      const freegas::ThermoState st{beta.value_or(cfg.beta), mu.value_or(cfg.mu), q.value_or(cfg.q)};
      const double a0 = a0_opt ? *a0_opt : scattering::scattering_length(make_potential(cfg));
      const auto e = huangyang::pressure_expansion(st, a0);
      nlohmann::ordered_json j;
      j["value"] = e.leading + e.first_order + e.second_order + e.temperature_correction;
      j["P0"] = e.leading;
      j["first_order"] = e.first_order;
      j["huang_yang"] = e.second_order;
      j["temperature_correction"] = e.temperature_correction;
      j["remainder"] = e.remainder_order;
      j["seed"] = cfg.seed;
      emit_record(j, g.format, g.out);
      return 0;
    };
  });
  auto* hy_c = hy->add_subcommand("constants", "finite-box renormalisation constants");
  std::optional<double> box_L;
  hy_c->add_option("--L", box_L, "box side (default 8 pi / kF)");
  hy_c->callback([&] {
    action = [&] {
      RunConfig cfg = resolve(g);
      const double rho = cfg.rho0;
      const double kFv = std::cbrt(6.0 * pi * pi * rho / cfg.q);
      ConstantSumStudy study;
      study.rho0 = rho;
      study.fermi_widths = {box_L ? *box_L * kFv / (2.0 * pi) : 4.0};
      emit_table(constant_sum_trend(cfg, study), g.format, g.out);
      return 0;
    };
  });

  // fock
  auto* fock = app.add_subcommand("fock", "exact checks on a truncated Fock space");
  fock->require_subcommand(1);
  auto* fv = fock->add_subcommand("verify", "run the Fock space criteria");
  std::optional<int> modes;
  std::optional<double> fL, fkF;
  std::string report;
  fv->add_option("--modes", modes);
  fv->add_option("--L", fL);
  fv->add_option("--kF", fkF);
  fv->add_option("--potential", potential_file);
  fv->add_option("--beta", beta);
  fv->add_option("--mu", mu);
  fv->add_option("--q", q);
  fv->add_option("--report", report, "report format (json or csv)")->check(CLI::IsMember({"csv", "json"}));
  auto fock_cfg = [&] {
    RunConfig cfg = resolve(g);
    if (!potential_file.empty()) apply_potential_file(cfg, potential_file);
    if (modes) cfg.fock_modes = *modes;
    if (fL) cfg.fock_L = *fL;
    if (fkF) cfg.fock_kF = *fkF;
    if (beta) cfg.beta = *beta;
    if (mu) cfg.mu = *mu;
    if (q) cfg.q = *q;
    return cfg;
  };
  fv->callback([&] {
    action = [&] {
      const RunConfig cfg = fock_cfg();
      return write_report(run_suite(cfg, {"fock"}), report.empty() ? g.format : report, g.out);
    };
  });
  auto* fp = fock->add_subcommand("pressure", "interacting Gibbs pressure over a mu sweep");
  fp->add_option("--modes", modes);
  fp->add_option("--L", fL);
  fp->add_option("--kF", fkF);
  fp->add_option("--potential", potential_file);
  fp->add_option("--beta", beta);
  fp->add_option("--q", q);
  fp->add_option("--sweep", sweep_text, "mu=a:b:n")->required();
  fp->callback([&] {
    action = [&] {
      const RunConfig cfg = fock_cfg();
      require(cfg.fock_modes % cfg.q == 0, ErrorKind::InvalidInput, "fock.modes must be a multiple of q");
      static const std::vector<lattice::IntVec> pool{{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {2, 0, 0},
                                                     {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      const auto n = static_cast<std::size_t>(cfg.fock_modes / cfg.q);
      require(n >= 1 && n <= pool.size(), ErrorKind::InvalidInput, "fock.modes is out of range");
      focklab::ModeBasis basis(cfg.fock_L, cfg.fock_kF, cfg.q, {pool.begin(), pool.begin() + static_cast<long>(n)});
      double reach = 0.0;
      for (const auto& a : basis.momenta()) {
        for (const auto& b : basis.momenta()) reach = std::max(reach, std::sqrt(double((a - b).norm2())));
      }
      const auto v = make_potential(cfg);
      const auto sol = scattering::solve_neumann(v, std::min(3.0, 0.45 * cfg.fock_L));
      const auto tab = lattice::build_tables(sol, v, cfg.fock_L, reach * lattice::lattice_unit(cfg.fock_L) + 1e-9, cfg.exec);
      const auto h = focklab::build_hamiltonian(basis, tab);
      const auto H = h.H();
      Table t;
      t.header = {"mu", "pressure", "free_pressure", "mean_N"};
      for (double m : parse_sweep(sweep_text, "mu").points()) {
        const auto gr = focklab::gibbs(H, h.N, cfg.beta, m, cfg.fock_L);
        t.rows.push_back({m, gr.pressure, focklab::free_pressure(basis, cfg.beta, m), gr.mean_N});
      }
      emit_table(t, g.format, g.out);
      return 0;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance suite and write the report");
  std::vector<std::string> filter;
  verify->add_option("--filter", filter, "criterion ids (c3 or 3) or module names");
  verify->callback([&] {
    action = [&] { return write_report(run_suite(resolve(g), filter), g.format, g.out); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hylab::cli
