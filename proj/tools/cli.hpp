#pragma once

#include "mpvc/driver.hpp"
#include "mpvc/grid.hpp"
#include "mpvc/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

namespace mpvc::cli {

enum ExitCode { kSuccess = 0, kSolverFailure = 1, kUsage = 2 };

struct RunConfig {
  std::string problem = "academic";  // academic | ten_bar | aerothermo
  Json params = Json::object();      // truss or vehicle fixture overrides
  std::string scheme = "global";     // global | local | lshaped | nonsmooth | none
  DriverConfig driver;
  std::optional<Vector> x0;
  std::optional<GridSpec> grid;
  std::string out = ".";
  int jobs = 1;
  std::uint64_t seed = 0;

  bool direct() const { return scheme == "none"; }
};

// Config file layout (all keys optional):
//   {"problem": "...", "params": {...} | "fixture": "path.json", "scheme": "...",
//    "driver": {"t0", "sigma", "t_min", "tol", "max_iter", "max_backtracks",
//               "warm_hessian", "test_initial_point"},
//    "x0": [..], "grid": "xmin,xmax,nx,ymin,ymax,ny", "out": "dir", "jobs": n, "seed": n}
RunConfig config_from_json(const Json& j);

std::shared_ptr<const MpvcProblem> make_problem(const RunConfig& cfg);
Vector default_start(const RunConfig& cfg);  // throws UsageError for academic

int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_grid(const RunConfig& cfg, std::ostream& log);
int cmd_check(const RunConfig& cfg, std::ostream& log);
int cmd_bench(const RunConfig& cfg, std::ostream& log);

// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace mpvc::cli
