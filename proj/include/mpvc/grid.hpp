#pragma once

#include "mpvc/driver.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mpvc {

// Rectangular grid of 2-D starting points, row-major in y then x.
struct GridSpec {
  double xmin = -5, xmax = 20;
  int nx = 26;
  double ymin = -5, ymax = 20;
  int ny = 26;

  static GridSpec parse(const std::string& text);  // "xmin,xmax,nx,ymin,ymax,ny"
  std::vector<Vector> points() const;
};

struct GridRow {
  int index = 0;
  Vector x0;
  Vector x;
  double f = 0.0;
  std::string bucket;  // a known-point label or "neither"
  int outer_iterations = 0;
  int inner_iterations = 0;
  bool converged = false;  // driver left by the feasibility test / direct solve certified
  double full_violation = 0.0;
};

// Label of the first known point within max-norm radius, else "neither".
std::string bucket_point(const MpvcProblem& problem, const Vector& x, double radius = 1e-3);

// scheme empty = direct baseline. Runs starts on up to `jobs` threads; a nonzero seed
// shuffles the dispatch order. Rows come back in grid order regardless of scheduling.
// A start that throws is bucketed "neither".
std::vector<GridRow> run_grid(std::shared_ptr<const MpvcProblem> problem,
                              std::optional<Scheme> scheme, const std::vector<Vector>& starts,
                              const DriverConfig& base, int jobs = 1, std::uint64_t seed = 0);

struct GridSummary {
  std::vector<std::pair<std::string, int>> counts;  // known labels in order, then "neither"
  long outer_iterations = 0;
  long inner_iterations = 0;
  int count(const std::string& label) const;
  int total() const;
};

GridSummary summarize(const MpvcProblem& problem, const std::vector<GridRow>& rows);

void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows);

}  // namespace mpvc
