// jop: solve, verify, and cross-check jointly orthogonal polynomial systems
// from declarative problem configs.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "jop/classical.hpp"
#include "jop/config.hpp"
#include "jop/errors.hpp"
#include "jop/gs.hpp"
#include "jop/log.hpp"
#include "jop/serialize.hpp"

namespace fs = std::filesystem;
using namespace jop;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitResidual = 4;

struct CliOptions {
  std::string config_path;
  std::string system_path;
  std::string out_dir = ".";
  std::string format;
  std::string preset;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int n = -1;
  int k = -1;
};

ProblemConfig resolve_config(const CliOptions& cli) {
  ProblemConfig cfg;
  if (!cli.config_path.empty()) cfg = load_config(cli.config_path);
  if (!cli.preset.empty()) cfg.preset.name = cli.preset;
  if (cli.n >= 0) cfg.n = cli.n;
  if (cli.k >= 0) cfg.k = cli.k;
  if (cli.seed_set) cfg.solver.seed = cli.seed;
  if (!cli.format.empty()) cfg.format = cli.format;
  if (!cfg.has_preset() && cfg.measures.empty())
    throw ConfigError("no problem given: pass --config or --preset");
  return cfg;
}

void write_report(const std::string& out_dir, const std::string& name, const std::string& body) {
  fs::create_directories(out_dir);
  write_text_file((fs::path(out_dir) / name).string(), body);
}

struct CheckTable {
  std::ostringstream body;
  bool all_pass = true;
  void add(const std::string& name, bool pass, double value, double tol) {
    body << (pass ? "PASS  " : "FAIL  ") << name << "  value=" << fmt17(value)
         << "  tol=" << fmt17(tol) << "\n";
    if (!pass) all_pass = false;
  }
  void note(const std::string& line) { body << line << "\n"; }
};

double lambda_formula_angle(const InnerProductFamily& fam, const JointSystem& sys) {
  double worst = 0.0;
  for (const auto& m : sys.members)
    worst = std::max(worst, ray_angle(m.lambda, eigenvalue_formula(fam, m.vector)));
  return worst;
}

int cmd_solve(const CliOptions& cli) {
  ProblemConfig cfg = resolve_config(cli);
  const int n = cfg.n >= 0 ? cfg.n : cfg.degree();
  CheckTable table;
  int code = 0;
  try {
    InnerProductFamily fam = cfg.family(n);
    JointSystem sys = solve_joint_system(fam, n, cfg.solver);
    const long expected = binomial(n + fam.k() - 1, fam.k() - 1);

    table.note("jop solve: k=" + std::to_string(fam.k()) + " n=" + std::to_string(n) +
               " seed=" + std::to_string(cfg.solver.seed));
    table.add("member count == C(n+k-1, k-1) = " + std::to_string(expected),
              static_cast<long>(sys.members.size()) == expected,
              static_cast<double>(sys.members.size()), static_cast<double>(expected));
    double maxres = 0.0;
    for (const auto& m : sys.members) maxres = std::max(maxres, m.residual);
    table.add("max MEP residual", maxres <= 1e-9, maxres, 1e-9);
    table.add("max deleted-form orthogonality residual", sys.max_orthogonality_residual < 1e-8,
              sys.max_orthogonality_residual, 1e-8);
    const double angle = lambda_formula_angle(fam, sys);
    table.add("eigenvalue-formula collinearity angle", angle < 1e-8, angle, 1e-8);
    table.add("min lambda-ray angle above dedup threshold",
              sys.members.size() < 2 || sys.min_lambda_angle > cfg.solver.dedup_angle,
              sys.min_lambda_angle, cfg.solver.dedup_angle);

    fs::create_directories(cli.out_dir);
    write_text_file((fs::path(cli.out_dir) / "system.json").string(),
                    system_to_json(sys, cfg).dump(2) + "\n");
    if (!table.all_pass) code = kExitResidual;
  } catch (const IncompleteSystem& e) {
    table.note(std::string("FAIL  ") + e.what());
    code = kExitIncomplete;
  }
  write_report(cli.out_dir, "report.txt", table.body.str());
  return code;
}

int cmd_verify(const CliOptions& cli) {
  ProblemConfig cfg = resolve_config(cli);
  ParsedSystem parsed = read_system_json(cli.system_path);
  const int n = parsed.n;
  InnerProductFamily fam = cfg.family(std::max(n, 1));
  CheckTable table;
  table.note("jop verify: " + cli.system_path);

  const long expected = binomial(n + fam.k() - 1, fam.k() - 1);
  table.add("member count", static_cast<long>(parsed.vectors.size()) == expected,
            static_cast<double>(parsed.vectors.size()), static_cast<double>(expected));

  // Definition-1 orthogonality: all deleted forms, all pairs.
  double worst_del = 0.0;
  for (size_t a = 0; a < parsed.vectors.size(); ++a)
    for (size_t b = 0; b < parsed.vectors.size(); ++b) {
      if (a == b) continue;
      for (int j = 1; j <= fam.k(); ++j)
        worst_del = std::max(worst_del, deleted_residual(fam, j, parsed.vectors[a], parsed.vectors[b]));
    }
  table.add("deleted-form orthogonality", worst_del < 1e-8, worst_del, 1e-8);

  // Rank-one orthogonality to lower degrees (random sample) and mutually.
  std::mt19937_64 rng(cfg.solver.seed + 1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst_low = 0.0;
  if (n >= 1) {
    for (int t = 0; t < 50; ++t) {
      std::vector<double> c(static_cast<size_t>(n), 0.0); // degree <= n-1
      for (double& v : c) v = dist(rng);
      Polynomial q{std::move(c)};
      if (q.is_zero()) continue;
      for (const auto& v : parsed.vectors)
        worst_low = std::max(worst_low, rank_one_residual(fam, v, q));
    }
  }
  table.add("rank-one orthogonality to V_{n-1}", worst_low < 1e-8, worst_low, 1e-8);
  double worst_mutual = 0.0;
  for (size_t a = 0; a < parsed.vectors.size(); ++a)
    for (size_t b = a + 1; b < parsed.vectors.size(); ++b)
      worst_mutual = std::max(worst_mutual, rank_one_residual(fam, parsed.vectors[a], parsed.vectors[b]));
  table.add("mutual rank-one orthogonality", worst_mutual < 1e-8, worst_mutual, 1e-8);

  double worst_angle = 0.0;
  for (size_t a = 0; a < parsed.vectors.size(); ++a)
    worst_angle = std::max(worst_angle,
                           ray_angle(parsed.lambdas[a], eigenvalue_formula(fam, parsed.vectors[a])));
  table.add("eigenvalue-formula collinearity", worst_angle < 1e-8, worst_angle, 1e-8);

  // Preset-specific ODE residuals.
  if (cfg.has_preset()) {
    JointSystem sys = system_from_vectors(fam, n, parsed.vectors);
    if (cfg.preset.name == "ince") {
      const double a1 = cfg.preset.a.size() == 2 ? cfg.preset.a[0] : 0.5;
      const double a2 = cfg.preset.a.size() == 2 ? cfg.preset.a[1] : 0.5;
      InceSpec spec(cfg.preset.alpha, a1, a2, n);
      std::vector<double> thetas;
      for (int i = 0; i < 24; ++i) thetas.push_back(0.15 + i * (M_PI / 2 - 0.3) / 23.0);
      const double r = ince_check(spec, sys, thetas);
      table.add("Whittaker-Hill ODE residual", r < 1e-7, r, 1e-7);
    } else if (cfg.preset.name == "sextic") {
      SexticSpec spec(cfg.preset.ell, n);
      std::vector<double> rs;
      for (int i = 0; i < 24; ++i) rs.push_back(0.3 + i * 2.2 / 23.0);
      const double r = sextic_check(spec, sys, rs);
      table.add("sextic ODE residual", r < 1e-7, r, 1e-7);
    } else if (cfg.preset.name == "heine-stieltjes" || cfg.preset.name == "heun" ||
               cfg.preset.name == "lame") {
      std::vector<double> e = cfg.preset.e;
      std::vector<double> m = cfg.preset.m;
      if (cfg.preset.name != "heine-stieltjes") {
        if (e.empty()) e = {0.0, 1.0, 2.0};
        if (m.empty()) {
          m = cfg.preset.a.empty() ? std::vector<double>{0.5, 0.5, 0.5} : cfg.preset.a;
        }
      } else if (m.empty()) {
        if (e.empty()) e = {0.0, 1.0, 2.0, 3.0};
        m.assign(e.size(), 1.0);
      }
      HeineStieltjesSpec spec(e, m, n);
      HeineStieltjesResult res = heine_stieltjes_solve(spec, cfg.solver);
      table.add("Heine-Stieltjes ODE residual", res.max_ode_residual < 1e-7, res.max_ode_residual,
                1e-7);
    }
  }

  write_report(cli.out_dir, "verify_report.txt", table.body.str());
  std::cout << table.body.str();
  return table.all_pass ? 0 : kExitResidual;
}

int cmd_gs(const CliOptions& cli) {
  ProblemConfig cfg = resolve_config(cli);
  const int n_max = cfg.n_max >= 0 ? cfg.n_max : cfg.degree();
  CheckTable table;
  int code = 0;
  try {
    InnerProductFamily fam = cfg.family(n_max);
    GSLedger ledger = gs_drive(fam, n_max, cfg.solver);
    table.note("jop gs: k=" + std::to_string(fam.k()) + " n_max=" + std::to_string(n_max));
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "gs_ledger";
    j["max_gs_residual"] = fmt17(ledger.max_residual);
    j["max_refine_shift"] = fmt17(ledger.max_refine_shift);
    auto degrees = nlohmann::ordered_json::array();
    for (size_t d = 0; d < ledger.systems.size(); ++d) {
      nlohmann::ordered_json entry;
      entry["degree"] = d;
      entry["count"] = ledger.systems[d].members.size();
      ProblemConfig sub = cfg;
      entry["system"] = system_to_json(ledger.systems[d], sub);
      degrees.push_back(entry);
    }
    j["degrees"] = degrees;
    fs::create_directories(cli.out_dir);
    write_text_file((fs::path(cli.out_dir) / "gs_ledger.json").string(), j.dump(2) + "\n");
    for (size_t d = 0; d < ledger.systems.size(); ++d) {
      const long expect = binomial(static_cast<int>(d) + fam.k() - 1, fam.k() - 1);
      table.add("degree " + std::to_string(d) + " count",
                static_cast<long>(ledger.systems[d].members.size()) == expect,
                static_cast<double>(ledger.systems[d].members.size()), static_cast<double>(expect));
    }
    table.add("max GS residual", ledger.max_residual <= 1e-8, ledger.max_residual, 1e-8);
    if (!table.all_pass) code = kExitResidual;
  } catch (const IncompleteSystem& e) {
    table.note(std::string("FAIL  ") + e.what());
    code = kExitIncomplete;
  }
  write_report(cli.out_dir, "report.txt", table.body.str());
  return code;
}

int cmd_classical(const CliOptions& cli) {
  ProblemConfig cfg = resolve_config(cli);
  if (!cfg.has_preset()) throw ConfigError("classical: needs a preset");
  const int n = cfg.n >= 0 ? cfg.n : cfg.degree();
  CheckTable table;
  table.note("jop classical: preset=" + cfg.preset.name + " n=" + std::to_string(n));

  if (cfg.preset.name == "heun" || cfg.preset.name == "lame") {
    std::array<double, 3> e{0.0, 1.0, 2.0}, a{0.5, 0.5, 0.5};
    if (cfg.preset.e.size() == 3) std::copy(cfg.preset.e.begin(), cfg.preset.e.end(), e.begin());
    if (cfg.preset.a.size() == 3) std::copy(cfg.preset.a.begin(), cfg.preset.a.end(), a.begin());
    if (cfg.preset.name == "lame") {
      const int nu = cfg.preset.nu >= 0 ? cfg.preset.nu : n;
      LameCatalog cat = lame_catalog(e, nu);
      table.add("Lame census 2nu+1", static_cast<int>(cat.entries.size()) == 2 * nu + 1,
                static_cast<double>(cat.entries.size()), 2.0 * nu + 1.0);
      for (const auto& entry : cat.entries)
        table.note("  species " + std::to_string(1 + entry.eps[0] + entry.eps[1] + entry.eps[2]) +
                   " eps=" + std::to_string(entry.eps[0]) + std::to_string(entry.eps[1]) +
                   std::to_string(entry.eps[2]) + " inner degree " +
                   std::to_string(entry.inner_degree) + " eigenvalue " + fmt17(entry.eigenvalue));
    } else {
      HeunSpec spec(e, a, n);
      HeunSolution sol = heun_solve(spec);
      InnerProductFamily fam = spec.family();
      JointSystem mepsys = solve_k2(build(fam, n), fam);
      double worst = 0.0;
      for (size_t i = 0; i < sol.system.members.size(); ++i)
        for (int c = 0; c <= n; ++c)
          worst = std::max(worst, std::abs(sol.system.members[i].vector.coeff(c) -
                                           mepsys.members[i].vector.coeff(c)));
      table.add("Heun eigenbasis vs MEP solver", worst < 1e-7, worst, 1e-7);
      const Eigen::MatrixXd L = heun_matrix(spec);
      for (int j = 1; j <= 2; ++j) {
        const double r = selfadjointness_residual(fam, L, j);
        table.add("self-adjointness residual, product " + std::to_string(j), r < 1e-8, r, 1e-8);
      }
      for (int i = 0; i < sol.operator_eigenvalues.size(); ++i)
        table.note("  operator eigenvalue " + fmt17(sol.operator_eigenvalues(i)));
    }
  } else if (cfg.preset.name == "ince") {
    const double a1 = cfg.preset.a.size() == 2 ? cfg.preset.a[0] : 0.5;
    const double a2 = cfg.preset.a.size() == 2 ? cfg.preset.a[1] : 0.5;
    InceSpec spec(cfg.preset.alpha, a1, a2, n);
    InnerProductFamily fam = spec.family();
    JointSystem sys = solve_k2(build(fam, n), fam);
    std::vector<double> thetas;
    for (int i = 0; i < 24; ++i) thetas.push_back(0.15 + i * (M_PI / 2 - 0.3) / 23.0);
    const double r = ince_check(spec, sys, thetas);
    table.add("Whittaker-Hill ODE residual", r < 1e-7, r, 1e-7);
    const double p = ince_periodicity_residual(spec, sys, thetas);
    table.add("periodicity class residual", p < 1e-8, p, 1e-8);
    const Eigen::MatrixXd L = ince_matrix(spec);
    for (int j = 1; j <= 2; ++j) {
      const double sr = selfadjointness_residual(fam, L, j);
      table.add("self-adjointness residual, product " + std::to_string(j), sr < 1e-8, sr, 1e-8);
    }
  } else if (cfg.preset.name == "sextic") {
    SexticSpec spec(cfg.preset.ell, n);
    InnerProductFamily fam = spec.family();
    JointSystem sys = solve_k2(build(fam, n), fam);
    std::vector<double> rs;
    for (int i = 0; i < 24; ++i) rs.push_back(0.3 + i * 2.2 / 23.0);
    const double r = sextic_check(spec, sys, rs);
    table.add("sextic ODE residual", r < 1e-7, r, 1e-7);
    const Eigen::MatrixXd L = sextic_matrix(spec);
    for (int j = 1; j <= 2; ++j) {
      const double sr = selfadjointness_residual(fam, L, j);
      table.add("self-adjointness residual, product " + std::to_string(j), sr < 1e-8, sr, 1e-8);
    }
  } else if (cfg.preset.name == "heine-stieltjes") {
    std::vector<double> e = cfg.preset.e.empty() ? std::vector<double>{0.0, 1.0, 2.0, 3.0}
                                                 : cfg.preset.e;
    std::vector<double> m = cfg.preset.m.empty() ? std::vector<double>(e.size(), 1.0)
                                                 : cfg.preset.m;
    HeineStieltjesSpec spec(e, m, n);
    HeineStieltjesResult res = heine_stieltjes_solve(spec, cfg.solver);
    table.add("ODE residual", res.max_ode_residual < 1e-7, res.max_ode_residual, 1e-7);
    table.add("division remainder", res.max_division_remainder < 1e-8,
              res.max_division_remainder, 1e-8);
    double lead_err = 0.0;
    for (const auto& V : res.van_vleck)
      lead_err = std::max(lead_err, std::abs(V.coeff(spec.k() - 1) - spec.van_vleck_leading()) /
                                        std::abs(spec.van_vleck_leading()));
    if (n == 0)
      table.note("degree 0: Van Vleck leading-coefficient check vacuous");
    else
      table.add("Van Vleck leading coefficient", lead_err < 1e-8, lead_err, 1e-8);
    InnerProductFamily fam = spec.family();
    const Eigen::MatrixXd L = heine_stieltjes_opmatrix(spec);
    for (int j = 1; j <= spec.k(); ++j) {
      const double sr = selfadjointness_residual(fam, L, j);
      table.add("self-adjointness residual, product " + std::to_string(j), sr < 1e-8, sr, 1e-8);
    }
  } else {
    throw ConfigError("classical: unknown preset '" + cfg.preset.name + "'");
  }

  write_report(cli.out_dir, "report.txt", table.body.str());
  std::cout << table.body.str();
  return table.all_pass ? 0 : kExitResidual;
}

int cmd_appendix_b(const CliOptions& cli) {
  const int n = cli.n, k = cli.k;
  if (n < 0 || k < 2) throw ConfigError("appendix-b: needs --n >= 0 and --k >= 2");
  std::vector<ClosedFormPair> pairs = appendix_b_enumerate(n, k);
  CheckTable table;
  const long expected = binomial(n + k - 1, k - 1);
  table.note("jop appendix-b: n=" + std::to_string(n) + " k=" + std::to_string(k));
  table.add("pair count C(n+k-1, k-1)", static_cast<long>(pairs.size()) == expected,
            static_cast<double>(pairs.size()), static_cast<double>(expected));
  double worst = 0.0;
  for (const auto& p : pairs) worst = std::max(worst, p.residual);
  table.add("max template residual", worst < 1e-12, worst, 1e-12);
  bool distinct = true;
  double minang = M_PI;
  for (size_t a = 0; a < pairs.size(); ++a)
    for (size_t b = a + 1; b < pairs.size(); ++b) {
      Eigen::VectorXcd la = pairs[a].lambda, lb = pairs[b].lambda;
      la.normalize();
      lb.normalize();
      const double overlap = std::abs(la.dot(lb));
      minang = std::min(minang, std::acos(std::min(1.0, overlap)));
      if (overlap > 1.0 - 1e-9) distinct = false;
    }
  table.add("pairwise distinct eigenvalues", distinct, minang, 0.0);
  for (const auto& p : pairs) {
    std::ostringstream row;
    row << "  choice {";
    for (size_t i = 0; i < p.choice.size(); ++i) row << (i ? "," : "") << p.choice[i];
    row << "}  lambda = [";
    for (int i = 0; i < p.lambda.size(); ++i) {
      row << (i ? ", " : "") << fmt17(p.lambda(i).real());
      if (std::abs(p.lambda(i).imag()) > 1e-14) row << "+" << fmt17(p.lambda(i).imag()) << "i";
    }
    row << "]  residual=" << fmt17(p.residual) << (p.real ? "  (real)" : "  (complex)");
    table.note(row.str());
  }
  if (k == 2)
    table.note("k=2: eigenvectors are the discrete Fourier vectors (zeta^{j+1})_{j=0..n}");

  write_report(cli.out_dir, "report.txt", table.body.str());
  std::cout << table.body.str();
  return table.all_pass ? 0 : kExitResidual;
}

int cmd_plotdata(const CliOptions& cli) {
  ProblemConfig cfg = resolve_config(cli);
  const int n = cfg.n >= 0 ? cfg.n : cfg.degree();
  InnerProductFamily fam = cfg.family(n);
  JointSystem sys = solve_joint_system(fam, n, cfg.solver);

  double lo = fam.table(1).measure().lower();
  double hi = fam.table(fam.k()).measure().upper();
  if (!std::isfinite(lo)) lo = std::min(-4.0, std::isfinite(hi) ? hi - 8.0 : -4.0);
  if (!std::isfinite(hi)) hi = std::max(4.0, lo + 8.0);
  const int grid = 201;

  fs::create_directories(cli.out_dir);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "plotdata";
    auto xs = nlohmann::ordered_json::array();
    for (int i = 0; i < grid; ++i) {
      const double x = lo + (hi - lo) * i / (grid - 1);
      nlohmann::ordered_json row;
      row["x"] = fmt17(x);
      auto vals = nlohmann::ordered_json::array();
      for (const auto& m : sys.members) vals.push_back(fmt17(m.vector(x)));
      row["E"] = vals;
      xs.push_back(row);
    }
    j["rows"] = xs;
    write_text_file((fs::path(cli.out_dir) / "plot.json").string(), j.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "x";
    for (size_t i = 1; i <= sys.members.size(); ++i) csv << ",E_" << i;
    csv << "\n";
    for (int i = 0; i < grid; ++i) {
      const double x = lo + (hi - lo) * i / (grid - 1);
      csv << fmt17(x);
      for (const auto& m : sys.members) csv << "," << fmt17(m.vector(x));
      csv << "\n";
    }
    write_text_file((fs::path(cli.out_dir) / "plot.csv").string(), csv.str());
  }

  // Conjugated eigenfunctions for the transformed presets.
  if (cfg.preset.name == "ince" || cfg.preset.name == "sextic") {
    std::ostringstream csv;
    const bool ince = cfg.preset.name == "ince";
    csv << (ince ? "theta" : "r");
    for (size_t i = 1; i <= sys.members.size(); ++i) csv << ",psi_" << i;
    csv << "\n";
    const double a = ince ? 0.05 : 0.05, b = ince ? M_PI - 0.05 : 3.0;
    for (int i = 0; i < grid; ++i) {
      const double t = a + (b - a) * i / (grid - 1);
      csv << fmt17(t);
      for (const auto& m : sys.members) {
        double psi;
        if (ince) {
          const double a1 = cfg.preset.a.size() == 2 ? cfg.preset.a[0] : 0.5;
          const double a2 = cfg.preset.a.size() == 2 ? cfg.preset.a[1] : 0.5;
          const int e1 = a1 > 1.0 ? 1 : 0, e2 = a2 > 1.0 ? 1 : 0;
          const double u = std::cos(2.0 * t);
          psi = std::pow(std::sin(t), e1) * std::pow(std::cos(t), e2) *
                std::exp(cfg.preset.alpha * u) * m.vector(u);
        } else {
          psi = std::pow(t, cfg.preset.ell + 1.0) * std::exp(-0.25 * t * t * t * t) *
                m.vector(t * t);
        }
        csv << "," << fmt17(psi);
      }
      csv << "\n";
    }
    write_text_file((fs::path(cli.out_dir) / "psi.csv").string(), csv.str());
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"jointly orthogonal polynomial systems: solve, verify, cross-check"};
  app.require_subcommand(1);

  CliOptions cli;
  auto add_common = [&](CLI::App* sub, bool with_system = false) {
    sub->add_option("--config", cli.config_path, "problem config file (key-value or JSON)");
    sub->add_option("--out", cli.out_dir, "output directory");
    sub->add_option("--seed", cli.seed, "solver RNG seed")->each([&](const std::string&) {
      cli.seed_set = true;
    });
    sub->add_option("--format", cli.format, "output format (json|csv)");
    sub->add_option("--n", cli.n, "polynomial degree");
    sub->add_option("--k", cli.k, "number of inner products");
    sub->add_option("--preset", cli.preset, "preset name");
    if (with_system) sub->add_option("--system", cli.system_path, "system.json to verify")->required();
  };

  auto* solve = app.add_subcommand("solve", "solve a joint system and write system.json");
  add_common(solve);
  auto* verify = app.add_subcommand("verify", "re-check a solved system against its config");
  add_common(verify, true);
  auto* gs = app.add_subcommand("gs", "run the degree-by-degree Gram-Schmidt driver");
  add_common(gs);
  auto* classical = app.add_subcommand("classical", "run a classical preset and its checks");
  add_common(classical);
  auto* appb = app.add_subcommand("appendix-b", "closed-form banded problem table");
  add_common(appb);
  auto* plot = app.add_subcommand("plotdata", "emit CSV/JSON of the solved polynomials on a grid");
  add_common(plot);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(cli);
    if (verify->parsed()) return cmd_verify(cli);
    if (gs->parsed()) return cmd_gs(cli);
    if (classical->parsed()) return cmd_classical(cli);
    if (appb->parsed()) return cmd_appendix_b(cli);
    if (plot->parsed()) return cmd_plotdata(cli);
  } catch (const ConfigError& e) {
    log_error(e.what());
    write_report(cli.out_dir, "report.txt", std::string("FAIL  config: ") + e.what() + "\n");
    return kExitConfig;
  } catch (const IncompleteSystem& e) {
    log_error(e.what());
    write_report(cli.out_dir, "report.txt", std::string("FAIL  incomplete: ") + e.what() + "\n");
    return kExitIncomplete;
  } catch (const Error& e) {
    log_error(e.what());
    write_report(cli.out_dir, "report.txt", std::string("FAIL  ") + e.what() + "\n");
    return kExitResidual;
  } catch (const std::exception& e) {
    log_error(e.what());
    return 1;
  }
  return 0;
}
