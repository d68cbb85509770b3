#pragma once

#include "mpvc/regularize.hpp"

#include <string>

namespace mpvc {

struct CqReport {
  std::string cq_name;
  bool holds = false;
  // LICQ: smallest singular value of the gradient matrix.
  // MFCQ: distance from the origin to the convex hull of the sign-constrained
  // gradients projected off the span of the free ones (or the smallest singular
  // value of the free block, whichever is smaller). +inf for an empty set.
  double certificate = 0.0;
  double tolerance = 0.0;  // holds <=> certificate > tolerance
  int gradients = 0;
};

// Sign-constrained columns A (a >= 0) and free columns B. Zero iff some
// nontrivial combination A a + B b vanishes with a >= 0.
double positive_independence_margin(const Matrix& A, const Matrix& B);

CqReport check_mpvc_licq(const MpvcProblem& problem, const Vector& x,
                         double tau_act = kDefaultTauAct, double tau_rank = 1e-8);
CqReport check_mpvc_mfcq(const MpvcProblem& problem, const Vector& x,
                         double tau_act = kDefaultTauAct, double tau = 1e-8);

// Standard LICQ/MFCQ for an NLP at x; inequality rows with c_i >= -tau_act are active.
CqReport check_licq(const Nlp& nlp, const Vector& x, double tau_act = kDefaultTauAct,
                    double tau_rank = 1e-8);
CqReport check_mfcq(const Nlp& nlp, const Vector& x, double tau_act = kDefaultTauAct,
                    double tau = 1e-8);

}  // namespace mpvc
