#pragma once

#include "mpvc/nlp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mpvc {

struct MpvcMultipliers {
  Vector lambda;  // m
  Vector mu;      // p
  Vector etaH;    // l
  Vector etaG;    // l
};

// Ordered: each grade implies the ones before it.
enum class Grade { NotWeak = 0, Weak = 1, T = 2, M = 3, S = 4 };
std::string to_string(Grade g);

struct StationarityReport {
  Grade grade = Grade::NotWeak;
  double stationarity_residual = 0.0;  // |grad f + ... - etaH grad H + etaG grad G|_inf
  double worst_sign_violation = 0.0;
  double worst_support_violation = 0.0;
  double feasibility = 0.0;            // full_violation at x
  std::vector<double> biactive_products;  // etaG_i etaH_i, i in I_00
  double tau = 0.0;                    // absolute tolerance actually applied
  IndexSets sets;
};

// eta^G, eta^H from the NLP multipliers (nu on the -H rows, delta on the
// vanishing rows), following the constructions in the convergence proofs.
// scheme empty = direct formulation with G_i H_i <= 0 rows.
MpvcMultipliers recover_mpvc_multipliers(const MpvcProblem& problem, std::optional<Scheme> scheme,
                                         double t, const Vector& x, const Vector& lambda,
                                         const Vector& mu, double tau_act = kDefaultTauAct);

// Same, reading the row layout from the NLP's provenance.
MpvcMultipliers recover_mpvc_multipliers(const Nlp& nlp, const NlpSolution& sol,
                                         double tau_act = kDefaultTauAct);

// tau is relative to 1 + |grad f(x)|_inf; index sets use tau_act (defaults to tau).
StationarityReport classify(const MpvcProblem& problem, const Vector& x, const MpvcMultipliers& mult,
                            double tau = 1e-6, std::optional<double> tau_act = std::nullopt);

struct MultiplierFit {
  MpvcMultipliers mult;
  double residual = 0.0;  // max-norm of the gradient equation at the fit
};

// Least-squares fit of the weak-stationarity gradient equation over multipliers
// restricted to the weak support and signs. Throws PreconditionError when
// full_violation(x) > 1e-4.
MultiplierFit find_multipliers(const MpvcProblem& problem, const Vector& x,
                               double tau_act = kDefaultTauAct);

// Strongest grade for which some multiplier vector exists: fits S, then every
// M and T sign pattern on I_00 (enumerated; |I_00| <= 12), then weak.
StationarityReport best_grade(const MpvcProblem& problem, const Vector& x, double tau = 1e-6,
                              double tau_act = kDefaultTauAct);

}  // namespace mpvc
