#include "mpvc/stationarity.hpp"

#include "mpvc/errors.hpp"
#include "mpvc/qp.hpp"

#include <algorithm>
#include <cmath>

namespace mpvc {

std::string to_string(Grade g) {
  switch (g) {
    case Grade::NotWeak: return "NotWeak";
    case Grade::Weak: return "Weak";
    case Grade::T: return "T";
    case Grade::M: return "M";
    case Grade::S: return "S";
  }
  return "?";
}

namespace {

bool contains(const std::vector<int>& v, int i) { return std::find(v.begin(), v.end(), i) != v.end(); }

struct Gradients {
  Vector df;
  Matrix Jg, Jh, JG, JH;
};

Gradients gradients(const MpvcProblem& p, const Vector& x) {
  return {p.f(x).gradient, p.g(x).jacobian, p.h(x).jacobian, p.G(x).jacobian, p.H(x).jacobian};
}

Vector gradient_equation(const Gradients& d, const MpvcMultipliers& m) {
  Vector r = d.df;
  if (m.lambda.size()) r += d.Jg.transpose() * m.lambda;
  if (m.mu.size()) r += d.Jh.transpose() * m.mu;
  if (m.etaH.size()) r -= d.JH.transpose() * m.etaH;
  if (m.etaG.size()) r += d.JG.transpose() * m.etaG;
  return r;
}

double inf_norm(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

enum class Bound { Zero, Free, NonNeg, NonPos };

struct Pattern {
  std::vector<Bound> lambda, mu, etaH, etaG;
};

// Weak-stationarity support and signs at the given index sets.
Pattern weak_pattern(const MpvcProblem& p, const IndexSets& s) {
  Pattern pat;
  pat.lambda.assign(p.m(), Bound::Zero);
  for (int i : s.I_g) pat.lambda[i] = Bound::NonNeg;
  pat.mu.assign(p.p(), Bound::Free);
  pat.etaH.assign(p.l(), Bound::Zero);
  pat.etaG.assign(p.l(), Bound::Zero);
  for (int i : s.I_0minus) pat.etaH[i] = Bound::NonNeg;
  for (int i : s.I_0plus) pat.etaH[i] = Bound::Free;
  for (int i : s.I_00) pat.etaH[i] = Bound::Free;
  for (int i : s.I_plus0) pat.etaG[i] = Bound::NonNeg;
  for (int i : s.I_00) pat.etaG[i] = Bound::NonNeg;
  return pat;
}

// min |grad f + M z|_2 over z respecting the pattern.
MultiplierFit fit_pattern(const MpvcProblem& p, const Gradients& d, const Pattern& pat) {
  const int n = p.n();
  std::vector<Vector> cols;
  std::vector<Bound> bounds;
  struct Slot { int block, index; };
  std::vector<Slot> slots;
  auto add = [&](const std::vector<Bound>& b, const Matrix& J, double sign, int block) {
    for (int i = 0; i < static_cast<int>(b.size()); ++i) {
      if (b[i] == Bound::Zero) continue;
      cols.push_back(sign * J.row(i).transpose());
      bounds.push_back(b[i]);
      slots.push_back({block, i});
    }
  };
  add(pat.lambda, d.Jg, 1.0, 0);
  add(pat.mu, d.Jh, 1.0, 1);
  add(pat.etaH, d.JH, -1.0, 2);
  add(pat.etaG, d.JG, 1.0, 3);

  MultiplierFit out;
  out.mult = {Vector::Zero(p.m()), Vector::Zero(p.p()), Vector::Zero(p.l()), Vector::Zero(p.l())};
  const int k = static_cast<int>(cols.size());
  if (k > 0) {
    Matrix M(n, k);
    for (int j = 0; j < k; ++j) M.col(j) = cols[j];
    QpProblem qp;
    qp.H = M.transpose() * M;
    const double ridge = 1e-13 * std::max(1.0, qp.H.diagonal().maxCoeff());
    qp.H.diagonal().array() += ridge;
    qp.g = M.transpose() * d.df;
    qp.A_eq.resize(0, k);
    qp.b_eq.resize(0);
    int nb = 0;
    for (Bound b : bounds) nb += (b == Bound::NonNeg || b == Bound::NonPos);
    qp.A_in = Matrix::Zero(nb, k);
    qp.b_in = Vector::Zero(nb);
    for (int j = 0, r = 0; j < k; ++j) {
      if (bounds[j] == Bound::NonNeg) qp.A_in(r++, j) = -1.0;
      else if (bounds[j] == Bound::NonPos) qp.A_in(r++, j) = 1.0;
    }
    const QpResult res = solve_qp(qp);
    if (res.status == QpStatus::Optimal) {
      for (int j = 0; j < k; ++j) {
        // clip roundoff across the sign constraints
        double v = res.x[j];
        if (bounds[j] == Bound::NonNeg) v = std::max(v, 0.0);
        if (bounds[j] == Bound::NonPos) v = std::min(v, 0.0);
        Vector* target = slots[j].block == 0   ? &out.mult.lambda
                         : slots[j].block == 1 ? &out.mult.mu
                         : slots[j].block == 2 ? &out.mult.etaH
                                               : &out.mult.etaG;
        (*target)[slots[j].index] = v;
      }
    }
  }
  out.residual = inf_norm(gradient_equation(d, out.mult));
  return out;
}

}  // namespace

MpvcMultipliers recover_mpvc_multipliers(const MpvcProblem& problem, std::optional<Scheme> scheme,
                                         double t, const Vector& x, const Vector& lambda,
                                         const Vector& mu, double tau_act) {
  const int m = problem.m(), l = problem.l();
  if (lambda.size() != m + 2 * l || mu.size() != problem.p())
    throw UsageError("recover_mpvc_multipliers: multipliers do not match the regularized row layout");
  const Vector G = problem.G(x).values;
  const Vector H = problem.H(x).values;

  MpvcMultipliers out{lambda.head(m), mu, Vector::Zero(l), Vector::Zero(l)};
  const Vector nu = lambda.segment(m, l);
  const Vector delta = lambda.segment(m + l, l);

  if (scheme == Scheme::Global) {
    // Case split of the convergence proof, taken at the banded sets of x.
    const IndexSets s = index_sets(problem, x, tau_act);
    for (int i = 0; i < l; ++i) {
      const bool G_zero_band = contains(s.I_00, i) || contains(s.I_plus0, i);
      const bool H_zero_band = contains(s.I_0plus, i) || contains(s.I_00, i) || contains(s.I_0minus, i);
      const bool other = contains(s.I_infeasible, i);
      out.etaG[i] = (G_zero_band || other) ? delta[i] * H[i] : 0.0;
      out.etaH[i] = (H_zero_band || other) ? nu[i] - delta[i] * G[i] : nu[i];
    }
    return out;
  }
  for (int i = 0; i < l; ++i) {
    // grad(delta Phi) = delta (dG grad G + dH grad H) and -nu grad H combine into
    // etaG grad G - etaH grad H.
    const KernelEval k = scheme ? kernel(*scheme, G[i], H[i], t) : KernelEval{G[i] * H[i], H[i], G[i]};
    out.etaG[i] = delta[i] * k.dG;
    out.etaH[i] = nu[i] - delta[i] * k.dH;
  }
  return out;
}

MpvcMultipliers recover_mpvc_multipliers(const Nlp& nlp, const NlpSolution& sol, double tau_act) {
  if (!nlp.provenance) throw UsageError("recover_mpvc_multipliers: NLP carries no provenance");
  const Provenance& pv = *nlp.provenance;
  return recover_mpvc_multipliers(*pv.problem, pv.scheme, pv.t, sol.x, sol.lambda, sol.mu, tau_act);
}

StationarityReport classify(const MpvcProblem& problem, const Vector& x, const MpvcMultipliers& mult,
                            double tau, std::optional<double> tau_act) {
  if (!(tau > 0)) throw ParameterError("classify: tau must be positive");
  if (mult.lambda.size() != problem.m() || mult.mu.size() != problem.p() ||
      mult.etaH.size() != problem.l() || mult.etaG.size() != problem.l())
    throw InputError("classify: multiplier lengths do not match the problem");
  const Gradients d = gradients(problem, x);
  StationarityReport rep;
  rep.sets = index_sets(problem, x, tau_act.value_or(tau));
  rep.tau = tau * (1.0 + inf_norm(d.df));
  rep.stationarity_residual = inf_norm(gradient_equation(d, mult));
  rep.feasibility = full_violation(problem, x);
  const IndexSets& s = rep.sets;

  double support = 0.0, sign = 0.0;
  for (int i = 0; i < problem.m(); ++i) {
    if (contains(s.I_g, i)) sign = std::max(sign, -mult.lambda[i]);
    else support = std::max(support, std::abs(mult.lambda[i]));
  }
  for (int i : s.I_plus()) support = std::max(support, std::abs(mult.etaH[i]));
  for (const auto* set : {&s.I_plusminus, &s.I_0minus, &s.I_0plus})
    for (int i : *set) support = std::max(support, std::abs(mult.etaG[i]));
  for (int i : s.I_0minus) sign = std::max(sign, -mult.etaH[i]);
  for (const auto* set : {&s.I_plus0, &s.I_00})
    for (int i : *set) sign = std::max(sign, -mult.etaG[i]);
  rep.worst_support_violation = support;
  rep.worst_sign_violation = sign;
  for (int i : s.I_00) rep.biactive_products.push_back(mult.etaG[i] * mult.etaH[i]);

  const double tol = rep.tau;
  if (!s.I_infeasible.empty() || rep.feasibility > tol || rep.stationarity_residual > tol ||
      support > tol || sign > tol) {
    rep.grade = Grade::NotWeak;
    return rep;
  }
  rep.grade = Grade::Weak;
  bool T = true, M = true, S = true;
  for (int i : s.I_00) {
    const double prod = mult.etaG[i] * mult.etaH[i];
    T = T && prod <= tol;
    M = M && std::abs(prod) <= tol;
    S = S && mult.etaH[i] >= -tol && std::abs(mult.etaG[i]) <= tol;
  }
  if (T) rep.grade = Grade::T;
  if (T && M) rep.grade = Grade::M;
  if (T && M && S) rep.grade = Grade::S;
  return rep;
}

MultiplierFit find_multipliers(const MpvcProblem& problem, const Vector& x, double tau_act) {
  const double viol = full_violation(problem, x);
  if (viol > 1e-4)
    throw PreconditionError("find_multipliers: point is infeasible (violation " + std::to_string(viol) + ")");
  const IndexSets s = index_sets(problem, x, tau_act);
  return fit_pattern(problem, gradients(problem, x), weak_pattern(problem, s));
}

StationarityReport best_grade(const MpvcProblem& problem, const Vector& x, double tau, double tau_act) {
  const double viol = full_violation(problem, x);
  if (viol > 1e-4)
    throw PreconditionError("best_grade: point is infeasible (violation " + std::to_string(viol) + ")");
  const IndexSets s = index_sets(problem, x, tau_act);
  const Gradients d = gradients(problem, x);
  const Pattern weak = weak_pattern(problem, s);

  auto try_pattern = [&](const Pattern& pat) {
    return classify(problem, x, fit_pattern(problem, d, pat).mult, tau, tau_act);
  };

  Pattern S = weak;
  for (int i : s.I_00) {
    S.etaH[i] = Bound::NonNeg;
    S.etaG[i] = Bound::Zero;
  }
  StationarityReport rep = try_pattern(S);
  if (rep.grade == Grade::S) return rep;

  const int k = static_cast<int>(s.I_00.size());
  if (k <= 12) {
    for (Grade target : {Grade::M, Grade::T}) {
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        Pattern pat = weak;
        for (int b = 0; b < k; ++b) {
          const int i = s.I_00[b];
          const bool bit = (mask >> b) & 1u;
          if (!bit) {
            pat.etaG[i] = Bound::Zero;
            pat.etaH[i] = Bound::Free;
          } else if (target == Grade::M) {
            pat.etaH[i] = Bound::Zero;
            pat.etaG[i] = Bound::NonNeg;
          } else {
            pat.etaH[i] = Bound::NonPos;
            pat.etaG[i] = Bound::NonNeg;
          }
        }
        StationarityReport r = try_pattern(pat);
        if (r.grade >= target) return r;
      }
    }
  }
  StationarityReport w = try_pattern(weak);
  return w.grade >= rep.grade ? w : rep;
}

}  // namespace mpvc
