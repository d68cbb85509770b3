#include "mpvc/grid.hpp"

#include "mpvc/errors.hpp"
#include "mpvc/io.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

namespace mpvc {

GridSpec GridSpec::parse(const std::string& text) {
  const Vector v = parse_vector(text);
  if (v.size() != 6) throw UsageError("grid spec needs six values: xmin,xmax,nx,ymin,ymax,ny");
  GridSpec g{v[0], v[1], static_cast<int>(v[2]), v[3], v[4], static_cast<int>(v[5])};
  if (g.nx < 1 || g.ny < 1 || v[2] != g.nx || v[5] != g.ny)
    throw UsageError("grid counts must be positive integers");
  return g;
}

std::vector<Vector> GridSpec::points() const {
  std::vector<Vector> pts;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double x = nx == 1 ? xmin : xmin + (xmax - xmin) * i / (nx - 1);
      const double y = ny == 1 ? ymin : ymin + (ymax - ymin) * j / (ny - 1);
      pts.push_back((Vector(2) << x, y).finished());
    }
  return pts;
}

std::string bucket_point(const MpvcProblem& problem, const Vector& x, double radius) {
  for (const auto& kp : problem.known_points())
    if ((x - kp.x).cwiseAbs().maxCoeff() < radius) return kp.label;
  return "neither";
}

std::vector<GridRow> run_grid(std::shared_ptr<const MpvcProblem> problem, std::optional<Scheme> scheme,
                              const std::vector<Vector>& starts, const DriverConfig& base, int jobs,
                              std::uint64_t seed) {
  std::vector<GridRow> rows(starts.size());
  std::vector<std::size_t> order(starts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (seed != 0) std::shuffle(order.begin(), order.end(), std::mt19937_64(seed));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < starts.size(); k = next++) {
      const std::size_t i = order[k];
      GridRow& r = rows[i];
      r.index = static_cast<int>(i);
      r.x0 = starts[i];
      try {
        DriverResult res;
        if (scheme) {
          DriverConfig cfg = base;
          cfg.scheme = *scheme;
          res = solve_mpvc(problem, cfg, starts[i]);
          r.converged = res.trace.reason == Termination::FeasibilityReached;
        } else {
          res = solve_direct(problem, starts[i], 1e-9, base.limits);
          r.converged = !res.trace.inner_failure;
        }
        r.x = res.x;
        r.f = res.f;
        r.outer_iterations = static_cast<int>(res.trace.records.size());
        r.inner_iterations = res.trace.total_inner_iterations();
        r.full_violation = full_violation(*problem, res.x);
        r.bucket = bucket_point(*problem, res.x);
      } catch (const Error&) {
        r.x = starts[i];
        r.f = problem->f(starts[i]).value;
        r.bucket = "neither";
      }
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

int GridSummary::count(const std::string& label) const {
  for (const auto& [l, c] : counts)
    if (l == label) return c;
  return 0;
}

int GridSummary::total() const {
  int s = 0;
  for (const auto& kv : counts) s += kv.second;
  return s;
}

GridSummary summarize(const MpvcProblem& problem, const std::vector<GridRow>& rows) {
  GridSummary s;
  for (const auto& kp : problem.known_points()) s.counts.emplace_back(kp.label, 0);
  s.counts.emplace_back("neither", 0);
  for (const auto& r : rows) {
    for (auto& [label, c] : s.counts)
      if (label == r.bucket) ++c;
    s.outer_iterations += r.outer_iterations;
    s.inner_iterations += r.inner_iterations;
  }
  return s;
}

void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows) {
  os << "index,x0_1,x0_2,x_1,x_2,f,bucket,outer_iters,inner_iters,full_violation\n";
  os << std::setprecision(12);
  for (const auto& r : rows)
    os << r.index << ',' << r.x0[0] << ',' << r.x0[1] << ',' << r.x[0] << ',' << r.x[1] << ','
       << r.f << ',' << r.bucket << ',' << r.outer_iterations << ',' << r.inner_iterations << ','
       << r.full_violation << '\n';
}

}  // namespace mpvc
