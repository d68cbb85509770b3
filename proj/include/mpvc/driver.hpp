#pragma once

#include "mpvc/nlp.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace mpvc {

struct DriverConfig {
  double t0 = 1.0;
  double sigma = 0.1;
  double t_min = 1e-8;
  double tol = 1e-6;
  Scheme scheme = Scheme::Global;
  // eps handed to the inner solver as a function of t_k; empty = scheme default
  // (max(1e-9, 1e-2 t) for Global, 1e-9 otherwise).
  std::function<double(double)> eps_inner;
  SqpLimits limits;
  bool warm_hessian = true;  // carry the BFGS matrix across outer iterations
  // The user's x0 is not an iterate of the method; by default R(t0) is always
  // solved once. Set to test maxVio(x0) like every later iterate instead.
  bool test_initial_point = false;

  void validate() const;  // throws ParameterError
  double eps_for(double t) const;
};

enum class Termination { FeasibilityReached, TminReached };
std::string to_string(Termination t);

struct OuterRecord {
  int k = 0;
  double t = 0.0;
  Vector x;
  double f = 0.0;
  double max_vio = 0.0;
  double full_violation = 0.0;
  NlpStatus status = NlpStatus::Converged;
  int inner_iterations = 0;
  double epsilon_achieved = 0.0;
  double eps_target = 0.0;
};

struct DriverTrace {
  std::vector<OuterRecord> records;
  Termination reason = Termination::FeasibilityReached;
  // The last inner solve did not certify its eps target (the loop itself
  // still ends on one of the two conditions above).
  bool inner_failure = false;
  int inner_failures = 0;
  int total_inner_iterations() const;
};

struct DriverResult {
  Vector x;
  double f = 0.0;
  DriverTrace trace;
  // Last regularized problem and its solution, for multiplier recovery.
  std::optional<Nlp> last_nlp;
  std::optional<NlpSolution> last_solution;
};

// Algorithm 1: while t_k >= t_min and maxVio(x_k) > tol, solve R(t_k) from x_k,
// then t_{k+1} = sigma t_k.
DriverResult solve_mpvc(std::shared_ptr<const MpvcProblem> problem, const DriverConfig& config,
                        const Vector& x0);
DriverResult solve_mpvc(const MpvcProblem& problem, const DriverConfig& config, const Vector& x0);

// Baseline without regularization: one inner solve on the NLP with G_i H_i <= 0 rows.
DriverResult solve_direct(std::shared_ptr<const MpvcProblem> problem, const Vector& x0,
                          double eps = 1e-9, const SqpLimits& limits = {});

// CSV with columns k,t,f,maxVio,fullVio,innerIters,eps.
void write_trace_csv(std::ostream& os, const DriverTrace& trace);

}  // namespace mpvc
