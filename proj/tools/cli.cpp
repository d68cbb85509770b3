#include "cli.hpp"

#include "mpvc/cq.hpp"
#include "mpvc/errors.hpp"
#include "mpvc/problems.hpp"
#include "mpvc/stationarity.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace fs = std::filesystem;

namespace mpvc::cli {

namespace {

std::optional<Scheme> scheme_of(const RunConfig& cfg) {
  if (cfg.direct()) return std::nullopt;
  return parse_scheme(cfg.scheme);
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out);
  const fs::path p = fs::path(cfg.out) / name;
  std::ofstream os(p);
  if (!os) throw InputError("cannot write " + p.string());
  return os;
}

void write_json(const RunConfig& cfg, const std::string& name, const Json& j) {
  auto os = open_out(cfg, name);
  os << j.dump(2) << '\n';
}

DriverResult run_one(std::shared_ptr<const MpvcProblem> problem, const RunConfig& cfg,
                     const Vector& x0) {
  if (cfg.direct()) return solve_direct(problem, x0, 1e-9, cfg.driver.limits);
  DriverConfig dc = cfg.driver;
  dc.scheme = parse_scheme(cfg.scheme);
  return solve_mpvc(problem, dc, x0);
}

// Grade of the returned point, with multipliers recovered from the last inner solve.
StationarityReport grade_result(const MpvcProblem& problem, const DriverResult& r) {
  if (!r.last_nlp || !r.last_solution) return {};
  const MpvcMultipliers mult = recover_mpvc_multipliers(*r.last_nlp, *r.last_solution);
  return classify(problem, r.x, mult);
}

bool feasible(const MpvcProblem& problem, const DriverResult& r, double tol) {
  return max_vio(problem, r.x) <= tol;
}

// Problem-specific exports for plotting.
void write_extras(const RunConfig& cfg, const DriverResult& r) {
  if (cfg.problem == "aerothermo") {
    const AeroParams ap = AeroParams::from_json(cfg.params);
    const AeroTrajectory tr = aero_unpack(ap, r.x);
    auto os = open_out(cfg, "trajectory.csv");
    os << "t,v,gamma,h,Q_T,C_L,T,Qc_dot,heat_rate\n" << std::setprecision(12);
    for (std::size_t i = 0; i < tr.x.size(); ++i)
      os << tr.time[i] << ',' << tr.x[i].v << ',' << tr.x[i].gamma << ',' << tr.x[i].h << ','
         << tr.x[i].Q << ',' << tr.u[i].CL << ',' << tr.u[i].T << ',' << tr.u[i].Qc << ','
         << heat_rate(ap, tr.x[i].v, tr.x[i].h) << '\n';
  } else if (cfg.problem == "ten_bar") {
    const auto truss = TrussGroundStructure::from_json(cfg.params);
    const int nm = static_cast<int>(truss.members.size());
    const Vector u = r.x.tail(truss.free_dofs());
    auto os = open_out(cfg, "areas.csv");
    os << "member,start,end,length,area,stress\n" << std::setprecision(12);
    for (int i = 0; i < nm; ++i)
      os << i << ',' << truss.members[i][0] << ',' << truss.members[i][1] << ','
         << truss.length(i) << ',' << r.x[i] << ',' << truss.stress(u, i) << '\n';
  }
}

Json result_json(const MpvcProblem& problem, const RunConfig& cfg, const DriverResult& r,
                 const StationarityReport& grade) {
  return {{"problem", cfg.problem},
          {"scheme", cfg.scheme},
          {"x", to_json(r.x)},
          {"f", r.f},
          {"full_violation", full_violation(problem, r.x)},
          {"max_vio", max_vio(problem, r.x)},
          {"grade", to_string(grade.grade)},
          {"stationarity", to_json(grade)},
          {"outer_iterations", static_cast<int>(r.trace.records.size())},
          {"inner_iterations", r.trace.total_inner_iterations()},
          {"trace", to_json(r.trace)}};
}

const char* const kUsagePrefix = "usage error: ";

}  // namespace

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  try {
    if (j.contains("problem")) c.problem = j.at("problem").get<std::string>();
    if (j.contains("fixture")) c.params = read_json_file(j.at("fixture").get<std::string>());
    if (j.contains("params")) c.params = j.at("params");
    if (j.contains("scheme")) c.scheme = j.at("scheme").get<std::string>();
    if (j.contains("driver")) {
      const Json& d = j.at("driver");
      auto get = [&](const char* key, auto& field) {
        if (d.contains(key)) field = d.at(key).get<std::decay_t<decltype(field)>>();
      };
      get("t0", c.driver.t0);
      get("sigma", c.driver.sigma);
      get("t_min", c.driver.t_min);
      get("tol", c.driver.tol);
      get("max_iter", c.driver.limits.max_iter);
      get("max_backtracks", c.driver.limits.max_backtracks);
      get("warm_hessian", c.driver.warm_hessian);
      get("test_initial_point", c.driver.test_initial_point);
    }
    if (j.contains("x0")) c.x0 = vector_from_json(j.at("x0"));
    if (j.contains("grid")) c.grid = GridSpec::parse(j.at("grid").get<std::string>());
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

std::shared_ptr<const MpvcProblem> make_problem(const RunConfig& cfg) {
  if (cfg.problem == "academic") return std::make_shared<const MpvcProblem>(academic());
  if (cfg.problem == "ten_bar")
    return std::make_shared<const MpvcProblem>(ten_bar(TrussGroundStructure::from_json(cfg.params)));
  if (cfg.problem == "aerothermo")
    return std::make_shared<const MpvcProblem>(aerothermo(AeroParams::from_json(cfg.params)));
  throw UsageError("unknown problem '" + cfg.problem + "' (academic, ten_bar, aerothermo)");
}

Vector default_start(const RunConfig& cfg) {
  if (cfg.x0) return *cfg.x0;
  if (cfg.problem == "ten_bar") return ten_bar_initial_point(TrussGroundStructure::from_json(cfg.params));
  if (cfg.problem == "aerothermo") return aerothermo_initial_point(AeroParams::from_json(cfg.params));
  throw UsageError("--x0 is required for problem '" + cfg.problem + "'");
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const auto problem = make_problem(cfg);
  scheme_of(cfg);
  const Vector x0 = default_start(cfg);
  problem->check_dim(x0);

  const DriverResult r = run_one(problem, cfg, x0);
  const StationarityReport grade = grade_result(*problem, r);
  write_json(cfg, "result.json", result_json(*problem, cfg, r, grade));
  {
    auto os = open_out(cfg, "trace.csv");
    write_trace_csv(os, r.trace);
  }
  write_extras(cfg, r);

  log << std::setprecision(10) << cfg.problem << " / " << cfg.scheme << ": f = " << r.f
      << ", full_violation = " << full_violation(*problem, r.x)
      << ", outer = " << r.trace.records.size() << ", grade = " << to_string(grade.grade)
      << ", termination = " << to_string(r.trace.reason) << '\n';

  const bool ok = feasible(*problem, r, cfg.driver.tol) && !(cfg.direct() && r.trace.inner_failure);
  if (!ok) {
    log << "solver failure: max_vio = " << max_vio(*problem, r.x) << " (tol " << cfg.driver.tol
        << "), inner failures = " << r.trace.inner_failures << '\n';
    return kSolverFailure;
  }
  return kSuccess;
}

int cmd_grid(const RunConfig& cfg, std::ostream& log) {
  const auto problem = make_problem(cfg);
  if (problem->n() != 2) throw UsageError("grid runs need a two-variable problem");
  const GridSpec spec = cfg.grid.value_or(GridSpec{});
  const auto rows = run_grid(problem, scheme_of(cfg), spec.points(), cfg.driver, cfg.jobs, cfg.seed);
  const GridSummary s = summarize(*problem, rows);
  {
    auto os = open_out(cfg, "grid.csv");
    write_grid_csv(os, rows);
  }
  Json counts = Json::object();
  for (const auto& [label, c] : s.counts) counts[label] = c;
  write_json(cfg, "summary.json",
             {{"problem", cfg.problem}, {"scheme", cfg.scheme}, {"starts", s.total()},
              {"outer_iterations", s.outer_iterations}, {"inner_iterations", s.inner_iterations},
              {"counts", counts}});
  {
    auto os = open_out(cfg, "summary.csv");
    os << "scheme,starts,outer_iters,inner_iters";
    for (const auto& kv : s.counts) os << ',' << kv.first;
    os << '\n' << cfg.scheme << ',' << s.total() << ',' << s.outer_iterations << ',' << s.inner_iterations;
    for (const auto& kv : s.counts) os << ',' << kv.second;
    os << '\n';
  }
  log << cfg.scheme << ": " << s.total() << " starts, outer " << s.outer_iterations << ", inner "
      << s.inner_iterations;
  for (const auto& [label, c] : s.counts) log << ", " << label << " " << c;
  log << '\n';
  return kSuccess;
}

int cmd_check(const RunConfig& cfg, std::ostream& log) {
  const auto problem = make_problem(cfg);
  if (!cfg.x0) throw UsageError("check needs a point (--x0)");
  const Vector& x = *cfg.x0;
  problem->check_dim(x);

  Json out = {{"problem", cfg.problem},
              {"x", to_json(x)},
              {"full_violation", full_violation(*problem, x)},
              {"index_sets", to_json(index_sets(*problem, x))}};
  try {
    const StationarityReport best = best_grade(*problem, x);
    out["grade"] = to_string(best.grade);
    out["stationarity"] = to_json(best);
    const MultiplierFit fit = find_multipliers(*problem, x);
    out["multipliers"] = to_json(fit.mult);
    out["fit_residual"] = fit.residual;
  } catch (const PreconditionError& e) {
    out["grade"] = nullptr;
    out["infeasible"] = e.what();
  }
  out["mpvc_licq"] = to_json(check_mpvc_licq(*problem, x));
  out["mpvc_mfcq"] = to_json(check_mpvc_mfcq(*problem, x));
  log << out.dump(2) << '\n';
  return kSuccess;
}

// Tables 4/5-style runs of every scheme plus the direct baseline.
int cmd_bench(const RunConfig& cfg, std::ostream& log) {
  const std::vector<std::string> schemes = {"global", "local", "lshaped", "nonsmooth", "none"};
  const std::vector<std::string> problems =
      cfg.problem.empty() ? std::vector<std::string>{"academic", "ten_bar", "aerothermo"}
                          : std::vector<std::string>{cfg.problem};
  Json bench = Json::object();
  for (const auto& name : problems) {
    RunConfig pc = cfg;
    pc.problem = name;
    if (name != cfg.problem) pc.params = Json::object();
    const auto problem = make_problem(pc);
    Json rows = Json::array();
    for (const auto& sc : schemes) {
      pc.scheme = sc;
      const auto t0 = std::chrono::steady_clock::now();
      Json row = {{"scheme", sc}};
      if (name == "academic") {
        const GridSpec spec = pc.grid.value_or(GridSpec{});
        const auto grid = run_grid(problem, scheme_of(pc), spec.points(), pc.driver, pc.jobs, pc.seed);
        const GridSummary s = summarize(*problem, grid);
        for (const auto& [label, c] : s.counts) row[label] = c;
        row["outer_iterations"] = s.outer_iterations;
        row["inner_iterations"] = s.inner_iterations;
      } else {
        pc.x0.reset();
        const DriverResult r = run_one(problem, pc, default_start(pc));
        row["f"] = r.f;
        row["full_violation"] = full_violation(*problem, r.x);
        row["outer_iterations"] = static_cast<int>(r.trace.records.size());
        row["inner_iterations"] = r.trace.total_inner_iterations();
        row["grade"] = to_string(grade_result(*problem, r).grade);
      }
      row["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      log << name << " / " << sc << ": " << row.dump() << '\n';
      rows.push_back(row);
    }
    bench[name] = rows;
  }
  write_json(cfg, "bench.json", bench);
  return kSuccess;
}

int run(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Regularization solvers for mathematical programs with vanishing constraints"};
  app.require_subcommand(1);

  std::string config_path, problem, scheme, x0, grid, out;
  int jobs = 0;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--problem", problem, "academic | ten_bar | aerothermo");
    sub->add_option("--scheme", scheme, "global | local | lshaped | nonsmooth | none");
    sub->add_option("--x0", x0, "initial point / point to check, comma separated");
    sub->add_option("--grid", grid, "xmin,xmax,nx,ymin,ymax,ny");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--jobs", jobs, "parallel grid starts");
    sub->add_option("--seed", seed, "shuffles the dispatch order of grid starts");
  };
  CLI::App* solve = app.add_subcommand("solve", "one driver or direct solve");
  CLI::App* grid_cmd = app.add_subcommand("grid", "grid of starting points");
  CLI::App* check = app.add_subcommand("check", "stationarity and CQ diagnostics at a point");
  CLI::App* bench = app.add_subcommand("bench", "all schemes on the benchmark problems");
  for (CLI::App* sub : {solve, grid_cmd, check, bench}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, log, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, log, err);
    return kUsage;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : config_from_json(read_json_file(config_path));
    if (bench->parsed() && problem.empty() && config_path.empty()) cfg.problem.clear();
    if (!problem.empty()) cfg.problem = problem;
    if (!scheme.empty()) cfg.scheme = scheme;
    if (!x0.empty()) cfg.x0 = parse_vector(x0);
    if (!grid.empty()) cfg.grid = GridSpec::parse(grid);
    if (!out.empty()) cfg.out = out;
    if (jobs > 0) cfg.jobs = jobs;
    if (seed != 0) cfg.seed = seed;
    if (!cfg.direct()) parse_scheme(cfg.scheme);
    cfg.driver.validate();

    if (solve->parsed()) return cmd_solve(cfg, log);
    if (grid_cmd->parsed()) return cmd_grid(cfg, log);
    if (check->parsed()) return cmd_check(cfg, log);
    return cmd_bench(cfg, log);
  } catch (const UsageError& e) {
    err << kUsagePrefix << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << kUsagePrefix << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << kUsagePrefix << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace mpvc::cli
