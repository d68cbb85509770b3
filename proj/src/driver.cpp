#include "mpvc/driver.hpp"

#include "mpvc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace mpvc {

void DriverConfig::validate() const {
  if (!(t_min > 0.0 && t_min < t0)) throw ParameterError("driver: need 0 < t_min < t0");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ParameterError("driver: need 0 < sigma < 1");
  if (!(tol > 0.0)) throw ParameterError("driver: tol must be positive");
  if (limits.max_iter <= 0) throw ParameterError("driver: inner iteration limit must be positive");
}

double DriverConfig::eps_for(double t) const {
  if (eps_inner) return eps_inner(t);
  return scheme == Scheme::Global ? std::max(1e-9, 1e-2 * t) : 1e-9;
}

std::string to_string(Termination t) {
  return t == Termination::FeasibilityReached ? "feasibility_reached" : "tmin_reached";
}

int DriverTrace::total_inner_iterations() const {
  int s = 0;
  for (const auto& r : records) s += r.inner_iterations;
  return s;
}

namespace {
OuterRecord make_record(const MpvcProblem& p, int k, double t, const NlpSolution& sol, double eps) {
  OuterRecord r;
  r.k = k;
  r.t = t;
  r.x = sol.x;
  r.f = p.f(sol.x).value;
  r.max_vio = max_vio(p, sol.x);
  r.full_violation = full_violation(p, sol.x);
  r.status = sol.status;
  r.inner_iterations = sol.iterations;
  r.epsilon_achieved = sol.epsilon_achieved;
  r.eps_target = eps;
  return r;
}
}  // namespace

DriverResult solve_mpvc(std::shared_ptr<const MpvcProblem> problem, const DriverConfig& config,
                        const Vector& x0) {
  if (!problem) throw UsageError("solve_mpvc: null problem");
  config.validate();
  problem->check_dim(x0);
  if (!x0.allFinite()) throw InputError("solve_mpvc: non-finite initial point");

  DriverResult res;
  Vector x = x0;
  double t = config.t0;
  int k = 0;
  std::optional<SqpWarmStart> warm;
  while (t >= config.t_min &&
         ((k == 0 && !config.test_initial_point) || max_vio(*problem, x) > config.tol)) {
    Nlp nlp = regularize(problem, config.scheme, t);
    const double eps = config.eps_for(t);
    SqpWarmStart ws;
    if (warm) {
      ws = *warm;
      if (!config.warm_hessian) ws.hessian.resize(0, 0);
    }
    NlpSolution sol = solve_nlp(nlp, x, eps, config.limits, warm ? &ws : nullptr);
    if (!sol.x.allFinite()) throw InputError("solve_mpvc: inner solver produced non-finite iterate");
    res.trace.records.push_back(make_record(*problem, k, t, sol, eps));
    res.trace.inner_failure = sol.status != NlpStatus::Converged;
    if (res.trace.inner_failure) ++res.trace.inner_failures;
    x = sol.x;
    warm = sol.warm;
    res.last_nlp = std::move(nlp);
    res.last_solution = std::move(sol);
    t *= config.sigma;
    ++k;
  }
  res.trace.reason = max_vio(*problem, x) <= config.tol ? Termination::FeasibilityReached
                                                        : Termination::TminReached;
  res.x = x;
  res.f = problem->f(x).value;
  return res;
}

DriverResult solve_mpvc(const MpvcProblem& problem, const DriverConfig& config, const Vector& x0) {
  return solve_mpvc(std::make_shared<const MpvcProblem>(problem), config, x0);
}

DriverResult solve_direct(std::shared_ptr<const MpvcProblem> problem, const Vector& x0, double eps,
                          const SqpLimits& limits) {
  if (!problem) throw UsageError("solve_direct: null problem");
  problem->check_dim(x0);
  DriverResult res;
  Nlp nlp = direct_nlp(problem);
  NlpSolution sol = solve_nlp(nlp, x0, eps, limits);
  res.trace.records.push_back(make_record(*problem, 0, 0.0, sol, eps));
  res.trace.inner_failure = sol.status != NlpStatus::Converged;
  res.trace.inner_failures = res.trace.inner_failure ? 1 : 0;
  res.x = sol.x;
  res.f = problem->f(sol.x).value;
  res.trace.reason = Termination::FeasibilityReached;
  res.last_nlp = std::move(nlp);
  res.last_solution = std::move(sol);
  return res;
}

void write_trace_csv(std::ostream& os, const DriverTrace& trace) {
  os << "k,t,f,maxVio,fullVio,innerIters,eps\n";
  os << std::setprecision(17);
  for (const auto& r : trace.records)
    os << r.k << ',' << r.t << ',' << r.f << ',' << r.max_vio << ',' << r.full_violation << ','
       << r.inner_iterations << ',' << r.epsilon_achieved << '\n';
}

}  // namespace mpvc
