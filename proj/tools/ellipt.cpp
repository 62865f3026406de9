// Command line front end: solution landscapes of -Lap u = lambda f(u) with
// zero Dirichlet data. Subcommands: catalog, eig, solve-monotone, branch, mp.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "ell/barriers.hpp"
#include "ell/branch.hpp"
#include "ell/errors.hpp"
#include "ell/log.hpp"
#include "ell/minimax.hpp"
#include "ell/problems.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ell;

namespace {

struct GlobalOptions {
  int n = 100;
  int dim = 1;
  double tol = 1e-8;
  std::string out = ".";
  std::uint64_t seed = 1;
  std::string problem = "gelfand";
  std::vector<std::string> params;
  double lambda = 1.0;
};

ParamMap parse_params(const std::vector<std::string>& kvs) {
  ParamMap map;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ParamOutOfRange("--param expects KEY=VALUE, got '" + kv + "'");
    map[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return map;
}

Grid make_grid(const GlobalOptions& g) {
  return g.dim == 2 ? Grid::unit_square(g.n) : Grid::interval(g.n);
}

void validate(const GlobalOptions& g, int m = 32) {
  std::vector<std::string> errors;
  if (g.n < 3) errors.push_back("--n must be at least 3");
  if (g.dim != 1 && g.dim != 2) errors.push_back("--dim must be 1 or 2");
  if (!(g.tol > 0.0)) errors.push_back("--tol must be positive");
  if (g.lambda < 0.0) errors.push_back("--lambda must be nonnegative");
  if (m < 8) errors.push_back("--m must be at least 8");
  if (!errors.empty()) {
    for (const std::string& e : errors) std::cerr << "config error: " << e << "\n";
    std::exit(2);
  }
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  os << content;
}

void emit_summary(const GlobalOptions& g, const json& summary) {
  fs::create_directories(g.out);
  std::ofstream os(fs::path(g.out) / "summary.json", std::ios::binary);
  os << summary.dump(2) << "\n";
  std::cout << summary.dump(2) << "\n";
}

void write_field_csv(const GlobalOptions& g, const std::string& name,
                     const Field& u) {
  std::ostringstream os;
  write_csv(os, u);
  write_file(fs::path(g.out) / name, os.str());
}

int run_catalog() {
  std::printf("%-10s %-22s %s\n", "name", "params", "description");
  for (const CatalogInfo& info : catalog_list())
    std::printf("%-10s %-22s %s\n", info.name.c_str(), info.params.c_str(),
                info.description.c_str());
  std::printf("\nmetadata:\n");
  const std::vector<std::pair<std::string, ParamMap>> samples = {
      {"gelfand", {}},
      {"affine", {{"a", 1.0}, {"b", 1.0}}},
      {"power", {{"p", 3.0}}},
      {"cubic", {{"c", 9.8696}, {"p", 3.0}}},
      {"asym_neg", {{"a", 2.0}, {"l", -0.5}}},
  };
  for (const auto& [name, params] : samples) {
    const NonlinearityMeta m = catalog(name, params).meta();
    std::printf("  %-10s convex=%d positive=%d f0=%g f'0=%g", name.c_str(),
                m.convex, m.positive, m.f0, m.fprime0);
    if (m.slope_a) std::printf(" slope_a=%g", *m.slope_a);
    if (m.offset_l) std::printf(" offset_l=%g", *m.offset_l);
    if (m.ar) std::printf(" ar=(mu=%g, r=%g)", m.ar->mu, m.ar->r);
    std::printf("\n");
  }
  return 0;
}

int run_eig(const GlobalOptions& g) {
  validate(g);
  Grid grid = make_grid(g);
  EigenPair p = smallest_eigenpair(ShiftedLaplacian::laplacian(grid));
  write_field_csv(g, "eigenvector.csv", p.vector);
  json summary{{"command", "eig"},
               {"n", g.n},
               {"dim", g.dim},
               {"lambda1", p.value},
               {"residual", p.residual},
               {"iterations", p.iterations},
               {"seed", g.seed}};
  emit_summary(g, summary);
  return 0;
}

int run_solve_monotone(const GlobalOptions& g, const std::string& direction) {
  validate(g);
  Grid grid = make_grid(g);
  ProblemSpec p = make_problem(grid, catalog(g.problem, parse_params(g.params)));
  BarrierPair pair = default_barriers(p, g.lambda);
  const Direction dir =
      direction == "sub" ? Direction::FromSub : Direction::FromSuper;
  MonotoneOptions opt;
  opt.tol = g.tol;
  MonotoneResult r = monotone_iterate(p, g.lambda, pair, dir, opt);
  StabilityReport rep = stability_classify(p, g.lambda, r.solution);
  write_field_csv(g, "solution.csv", r.solution);
  json summary{{"command", "solve-monotone"},
               {"problem", g.problem},
               {"lambda", g.lambda},
               {"sup_norm", norm_inf(r.solution)},
               {"residual", r.residual},
               {"lambda1_lin", rep.lambda1_lin},
               {"tag", to_string(rep.tag)},
               {"iterations", r.iterations},
               {"seed", g.seed}};
  emit_summary(g, summary);
  return 0;
}

int run_branch(const GlobalOptions& g, bool arclength, double lambda_max,
               double norm_cap) {
  validate(g);
  Grid grid = make_grid(g);
  ProblemSpec p = make_problem(grid, catalog(g.problem, parse_params(g.params)));
  ContinuationConfig cfg;
  if (lambda_max > 0.0) cfg.lambda_max = lambda_max;
  if (norm_cap > 0.0) cfg.norm_cap = norm_cap;
  cfg.newton_tol = g.tol < 1e-8 ? g.tol : 1e-10;

  Diagram dia = trace_minimal_branch(p, cfg);
  json summary{{"command", "branch"}, {"problem", g.problem}, {"n", g.n}};
  if (dia.termination == Termination::Fold) {
    const double ls = estimate_lambda_star(p, dia, cfg);
    summary["lambda_star"] = ls;
    if (arclength) pseudo_arclength_continue(p, dia, cfg);
  }
  summary["termination"] = to_string(dia.termination);
  summary["n_points"] = dia.points.size();
  const double lam1 =
      smallest_eigenpair(ShiftedLaplacian::laplacian(grid)).value;
  const double fp0 = p.nl.meta().fprime0;
  if (fp0 > 0.0)
    summary["bound_lambda1_over_fprime0"] = lam1 / fp0;
  else
    summary["bound_lambda1_over_fprime0"] = nullptr;
  summary["seed"] = g.seed;

  std::ostringstream os;
  os << "lambda,sup_norm,l2_norm,lambda1_lin,tag,arclength\n";
  char buf[256];
  for (const BranchPoint& bp : dia.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%.17g\n",
                  bp.lambda, bp.sup_norm, bp.l2_norm, bp.lambda1_lin,
                  to_string(bp.tag), bp.arclength);
    os << buf;
  }
  write_file(fs::path(g.out) / "diagram.csv", os.str());
  emit_summary(g, summary);
  return 0;
}

int run_mp(const GlobalOptions& g, int m, bool second) {
  validate(g, m);
  Grid grid = make_grid(g);
  ProblemSpec p = make_problem(grid, catalog(g.problem, parse_params(g.params)));
  MountainPassOptions opt;
  opt.m = m;
  opt.tol = g.tol;

  if (second) {
    SecondSolutionResult ss = second_solution(p, g.lambda, opt);
    write_field_csv(g, "saddle.csv", ss.u2);
    write_field_csv(g, "minimal.csv", ss.minimal);
    json summary{{"command", "mp"},
                 {"problem", g.problem},
                 {"lambda", g.lambda},
                 {"second", true},
                 {"c", ss.mp.c},
                 {"sup_norm", norm_inf(ss.u2)},
                 {"grad_norm", ss.mp.grad_norm},
                 {"lambda1_lin", ss.cert.lambda1_lin},
                 {"iters", ss.mp.iters},
                 {"minimal_sup_norm", norm_inf(ss.minimal)},
                 {"gap_sup", ss.cert.gap_sup},
                 {"ordering_ok", ss.cert.ordering_ok},
                 {"residual", ss.cert.residual},
                 {"seed", g.seed}};
    emit_summary(g, summary);
    return 0;
  }

  // plain mountain pass: endpoint by dyadic scaling of e1
  EigenPair e1 = smallest_eigenpair(ShiftedLaplacian::laplacian(grid));
  Field endpoint;
  bool found = false;
  for (int k = 0; k <= 16; ++k) {
    Field e = std::ldexp(1.0, k) * e1.vector;
    if (energy(p, g.lambda, e) < 0.0) {
      endpoint = std::move(e);
      found = true;
      break;
    }
  }
  if (!found)
    throw NoMountainGeometry("no dyadic multiple of e1 has negative energy");
  MinimaxResult mp = mountain_pass(p, g.lambda, endpoint, opt);
  StabilityReport rep = stability_classify(p, g.lambda, mp.u);
  write_field_csv(g, "saddle.csv", mp.u);
  json summary{{"command", "mp"},
               {"problem", g.problem},
               {"lambda", g.lambda},
               {"c", mp.c},
               {"sup_norm", norm_inf(mp.u)},
               {"grad_norm", mp.grad_norm},
               {"lambda1_lin", rep.lambda1_lin},
               {"iters", mp.iters},
               {"seed", g.seed}};
  emit_summary(g, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solution landscapes of semilinear elliptic problems"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  GlobalOptions g;
  app.add_option("--n", g.n, "interior nodes per axis")->capture_default_str();
  app.add_option("--dim", g.dim, "domain dimension (1 or 2)")->capture_default_str();
  app.add_option("--tol", g.tol, "solver tolerance")->capture_default_str();
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "seed recorded in summaries")->capture_default_str();

  CLI::App* cmd_catalog = app.add_subcommand("catalog", "list the nonlinearity catalog");
  cmd_catalog->add_subcommand("list", "list entries (the default action)");

  CLI::App* cmd_eig = app.add_subcommand("eig", "smallest eigenpair of the Laplacian");

  std::string direction = "super";
  CLI::App* cmd_mono =
      app.add_subcommand("solve-monotone", "monotone iteration from default barriers");
  cmd_mono->add_option("--problem", g.problem, "catalog entry")->required();
  cmd_mono->add_option("--param,-p", g.params, "problem parameter KEY=VALUE");
  cmd_mono->add_option("--lambda", g.lambda, "coupling parameter");
  cmd_mono->add_option("--direction", direction, "sub | super")
      ->check(CLI::IsMember({"sub", "super"}));

  bool arclength = false;
  double lambda_max = -1.0, norm_cap = -1.0;
  CLI::App* cmd_branch = app.add_subcommand("branch", "bifurcation diagram in lambda");
  cmd_branch->add_option("--problem", g.problem, "catalog entry")->required();
  cmd_branch->add_option("--param,-p", g.params, "problem parameter KEY=VALUE");
  cmd_branch->add_flag("--arclength", arclength, "continue past the fold");
  cmd_branch->add_option("--lambda-max", lambda_max, "stop lambda");
  cmd_branch->add_option("--norm-cap", norm_cap, "stop sup norm");

  int m = 32;
  bool second = false;
  CLI::App* cmd_mp = app.add_subcommand("mp", "mountain pass saddle search");
  cmd_mp->add_option("--problem", g.problem, "catalog entry")->required();
  cmd_mp->add_option("--param,-p", g.params, "problem parameter KEY=VALUE");
  cmd_mp->add_option("--lambda", g.lambda, "coupling parameter");
  cmd_mp->add_option("--m", m, "path segments")->capture_default_str();
  cmd_mp->add_flag("--second", second, "second solution above the minimal one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_catalog->parsed()) return run_catalog();
    if (cmd_eig->parsed()) return run_eig(g);
    if (cmd_mono->parsed()) return run_solve_monotone(g, direction);
    if (cmd_branch->parsed()) return run_branch(g, arclength, lambda_max, norm_cap);
    if (cmd_mp->parsed()) return run_mp(g, m, second);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    json failed{{"failed", true}, {"error", e.name()}, {"detail", e.what()}};
    try {
      emit_summary(g, failed);
    } catch (...) {
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
