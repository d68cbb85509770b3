#pragma once

#include "mpvc/model.hpp"

namespace mpvc {

// min 1/2 x'Hx + g'x  s.t.  A_eq x = b_eq,  A_in x <= b_in,  H symmetric positive definite.
// Multipliers follow  Hx + g + A_eq' mu + A_in' lambda = 0,  lambda >= 0.
struct QpProblem {
  Matrix H;
  Vector g;
  Matrix A_eq;
  Vector b_eq;
  Matrix A_in;
  Vector b_in;
};

enum class QpStatus { Optimal, Infeasible, NotConvex, IterLimit };

struct QpResult {
  QpStatus status = QpStatus::Infeasible;
  Vector x;
  Vector mu;      // equality multipliers
  Vector lambda;  // inequality multipliers
  double objective = 0.0;
  int iterations = 0;
};

// Dual active-set method of Goldfarb and Idnani: starts from the unconstrained
// minimizer and adds violated constraints one at a time, so no feasible start is
// needed and inconsistent constraints are detected.
QpResult solve_qp(const QpProblem& qp);

// Same problem with every row relaxed by a nonnegative slack charged rho per unit
// (plus a tiny quadratic term so the problem stays strictly convex). Always
// feasible. Returned x/mu/lambda refer to the original variables and rows;
// max_slack is the largest relaxation used.
struct ElasticResult {
  QpResult qp;
  double max_slack = 0.0;
};
ElasticResult solve_qp_elastic(const QpProblem& qp, double rho);

}  // namespace mpvc
