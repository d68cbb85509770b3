#pragma once

#include "mpvc/regularize.hpp"

namespace mpvc {

// Worst violation of each condition group of eps-stationarity.
struct EpsBreakdown {
  double stationarity = 0.0;     // |grad f + J_in' lambda + J_eq' mu|_inf
  double ineq_feasibility = 0.0; // max(0, max c_in)
  double eq_feasibility = 0.0;   // max |c_eq|
  double sign = 0.0;             // max(0, -min lambda)
  double complementarity = 0.0;  // max |c_in,i lambda_i|

  double epsilon() const;
};

struct EpsCheck {
  bool holds = false;
  EpsBreakdown breakdown;
  // Rounding allowance added to eps: 16 u times the largest term entering the
  // residuals, so certificates that hold with equality in exact arithmetic
  // (eps = 0 KKT points, complementarity = eps) are not rejected by one ulp.
  double roundoff = 0.0;
};

EpsCheck check_eps_stationary(const Nlp& nlp, const Vector& x, const Vector& lambda,
                              const Vector& mu, double eps);

enum class NlpStatus { Converged, IterLimit, LineSearchFail };
std::string to_string(NlpStatus s);

struct SqpLimits {
  int max_iter = 500;
  int max_backtracks = 50;
  double contraction = 0.5;
  double armijo = 1e-4;
};

// Carried between consecutive solves with identical row structure.
struct SqpWarmStart {
  Matrix hessian;
  Vector lambda;
  Vector mu;
};

struct NlpSolution {
  Vector x;
  Vector lambda;
  Vector mu;
  double kkt_residual = 0.0;
  double comp_residual = 0.0;
  double feas_residual = 0.0;
  double epsilon_achieved = 0.0;
  NlpStatus status = NlpStatus::IterLimit;
  int iterations = 0;
  int elastic_steps = 0;
  SqpWarmStart warm;
};

// SQP with damped BFGS, l1 merit line search with second-order correction, and an
// elastic QP when the linearization is inconsistent. On failure the iterate with
// the smallest epsilon_achieved is returned.
NlpSolution solve_nlp(const Nlp& nlp, const Vector& x0, double eps_target,
                      const SqpLimits& limits = {}, const SqpWarmStart* warm = nullptr);

}  // namespace mpvc
