#include "mpvc/nlp.hpp"

#include "mpvc/errors.hpp"
#include "mpvc/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpvc {

double EpsBreakdown::epsilon() const {
  return std::max({stationarity, ineq_feasibility, eq_feasibility, sign, complementarity});
}

std::string to_string(NlpStatus s) {
  switch (s) {
    case NlpStatus::Converged: return "converged";
    case NlpStatus::IterLimit: return "iter_limit";
    case NlpStatus::LineSearchFail: return "line_search_fail";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Point {
  Vector x;
  ScalarEval f;
  VectorEval in, eq;

  bool finite() const {
    return std::isfinite(f.value) && f.gradient.allFinite() && in.values.allFinite() &&
           in.jacobian.allFinite() && eq.values.allFinite() && eq.jacobian.allFinite();
  }
};

Point evaluate(const Nlp& nlp, const Vector& x) {
  Point p{x, nlp.objective(x), nlp.ineq(x), nlp.eq(x)};
  if (p.in.values.size() != nlp.n_ineq || p.eq.values.size() != nlp.n_eq)
    throw InputError("nlp: constraint evaluator returned wrong row count");
  if (p.in.jacobian.rows() != nlp.n_ineq) p.in.jacobian.resize(nlp.n_ineq, nlp.n);
  if (p.eq.jacobian.rows() != nlp.n_eq) p.eq.jacobian.resize(nlp.n_eq, nlp.n);
  return p;
}

EpsBreakdown breakdown(const Point& p, const Vector& lambda, const Vector& mu) {
  EpsBreakdown b;
  Vector r = p.f.gradient;
  if (lambda.size()) r += p.in.jacobian.transpose() * lambda;
  if (mu.size()) r += p.eq.jacobian.transpose() * mu;
  b.stationarity = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  if (p.in.values.size()) {
    b.ineq_feasibility = std::max(0.0, p.in.values.maxCoeff());
    b.sign = std::max(0.0, -lambda.minCoeff());
    b.complementarity = p.in.values.cwiseProduct(lambda).cwiseAbs().maxCoeff();
  }
  if (p.eq.values.size()) b.eq_feasibility = p.eq.values.cwiseAbs().maxCoeff();
  if (!std::isfinite(b.stationarity)) b.stationarity = kInf;
  return b;
}

// Per-row penalty weights of the l1 merit function.
struct Weights {
  Vector in, eq;
  double max() const {
    double m = 0.0;
    if (in.size()) m = std::max(m, in.maxCoeff());
    if (eq.size()) m = std::max(m, eq.maxCoeff());
    return m;
  }
};

double weighted_violation(const Weights& w, const Vector& cin, const Vector& ceq) {
  return w.in.dot(cin.cwiseMax(0.0)) + w.eq.dot(ceq.cwiseAbs());
}

double merit(const Point& p, const Weights& w) {
  return p.f.value + weighted_violation(w, p.in.values, p.eq.values);
}

Vector lagrangian_gradient(const Point& p, const Vector& lambda, const Vector& mu) {
  Vector r = p.f.gradient;
  if (lambda.size()) r += p.in.jacobian.transpose() * lambda;
  if (mu.size()) r += p.eq.jacobian.transpose() * mu;
  return r;
}

struct Step {
  Vector d, lambda, mu;
  bool elastic = false;
  bool ok = false;
};

Step qp_step(const Matrix& B, const Point& p, const Vector& cin, const Vector& ceq, double penalty) {
  QpProblem qp{B, p.f.gradient, p.eq.jacobian, -ceq, p.in.jacobian, -cin};
  QpResult r = solve_qp(qp);
  Step s;
  if (r.status == QpStatus::Optimal) {
    s = {r.x, r.lambda, r.mu, false, true};
    return s;
  }
  if (r.status == QpStatus::NotConvex) return s;
  ElasticResult e = solve_qp_elastic(qp, std::max(10.0 * penalty, 100.0));
  if (e.qp.status != QpStatus::Optimal) return s;
  return {e.qp.x, e.qp.lambda, e.qp.mu, true, true};
}

// Powell-damped BFGS; keeps B positive definite.
void bfgs_update(Matrix& B, const Vector& s, Vector y) {
  const Vector Bs = B * s;
  const double sBs = s.dot(Bs);
  if (!(sBs > 0.0) || !std::isfinite(sBs)) return;
  double sy = s.dot(y);
  if (sy < 0.2 * sBs) {
    const double theta = 0.8 * sBs / (sBs - sy);
    y = theta * y + (1.0 - theta) * Bs;
    sy = s.dot(y);
  }
  if (!(sy > 0.0)) return;
  B += y * y.transpose() / sy - Bs * Bs.transpose() / sBs;
  B = 0.5 * (B + B.transpose()).eval();
}

// Floors the spectrum at kCondFloor * largest eigenvalue. The dual QP method starts
// from the unconstrained minimizer, which is useless when B is nearly singular.
constexpr double kCondFloor = 1e-8;

void condition_hessian(Matrix& B) {
  Eigen::LLT<Matrix> llt(B);
  if (llt.info() == Eigen::Success) {
    const Vector d = Matrix(llt.matrixL()).diagonal();
    const double lo = d.minCoeff(), hi = d.maxCoeff();
    if (lo * lo > 1e2 * kCondFloor * hi * hi) return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(B);
  Vector ev = es.eigenvalues();
  const double top = std::max(ev.maxCoeff(), 1e-12);
  ev = ev.cwiseMax(kCondFloor * top);
  B = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  B = 0.5 * (B + B.transpose()).eval();
}

}  // namespace

EpsCheck check_eps_stationary(const Nlp& nlp, const Vector& x, const Vector& lambda,
                              const Vector& mu, double eps) {
  if (lambda.size() != nlp.n_ineq || mu.size() != nlp.n_eq)
    throw InputError("check_eps_stationary: multiplier length mismatch");
  if (x.size() != nlp.n) throw InputError("check_eps_stationary: point length mismatch");
  const Point p = evaluate(nlp, x);
  EpsCheck c;
  c.breakdown = breakdown(p, lambda, mu);
  Vector terms = p.f.gradient.cwiseAbs();
  if (lambda.size()) terms += p.in.jacobian.cwiseAbs().transpose() * lambda.cwiseAbs();
  if (mu.size()) terms += p.eq.jacobian.cwiseAbs().transpose() * mu.cwiseAbs();
  double scale = std::max(1.0, terms.size() ? terms.maxCoeff() : 0.0);
  if (lambda.size()) scale = std::max(scale, p.in.values.cwiseProduct(lambda).cwiseAbs().maxCoeff());
  c.roundoff = 16.0 * std::numeric_limits<double>::epsilon() * scale;
  c.holds = c.breakdown.epsilon() <= eps + c.roundoff;
  return c;
}

NlpSolution solve_nlp(const Nlp& nlp, const Vector& x0, double eps_target, const SqpLimits& limits,
                      const SqpWarmStart* warm) {
  if (x0.size() != nlp.n) throw InputError("solve_nlp: x0 has wrong length");
  if (!(eps_target > 0)) throw ParameterError("solve_nlp: eps_target must be positive");
  const int n = nlp.n;

  Point cur = evaluate(nlp, x0);
  if (!cur.finite()) throw InputError("solve_nlp: non-finite function data at x0");

  Matrix B = Matrix::Identity(n, n);
  bool scaled = false;
  Vector lambda = Vector::Zero(nlp.n_ineq), mu = Vector::Zero(nlp.n_eq);
  if (warm) {
    if (warm->hessian.rows() == n && warm->hessian.cols() == n && warm->hessian.allFinite()) {
      B = warm->hessian;
      condition_hessian(B);
      scaled = true;
    }
    if (warm->lambda.size() == nlp.n_ineq) lambda = warm->lambda.cwiseMax(0.0);
    if (warm->mu.size() == nlp.n_eq) mu = warm->mu;
  }
  Weights w{Vector::Zero(nlp.n_ineq), Vector::Zero(nlp.n_eq)};
  bool weighted = false;

  NlpSolution best;
  best.epsilon_achieved = kInf;
  auto record = [&](const Point& p, const Vector& lam, const Vector& m, const EpsBreakdown& b) {
    const double e = b.epsilon();
    if (e < best.epsilon_achieved || !std::isfinite(best.epsilon_achieved)) {
      best.x = p.x;
      best.lambda = lam;
      best.mu = m;
      best.kkt_residual = b.stationarity;
      best.comp_residual = b.complementarity;
      best.feas_residual = std::max(b.ineq_feasibility, b.eq_feasibility);
      best.epsilon_achieved = e;
    }
    return e <= eps_target;
  };
  auto finish = [&](NlpStatus status, int iters, int elastic) {
    best.status = status;
    best.iterations = iters;
    best.elastic_steps = elastic;
    best.warm = {B, best.lambda, best.mu};
    return best;
  };

  int elastic_steps = 0, resets = 0, stalls = 0;
  for (int k = 0; k < limits.max_iter; ++k) {
    if (record(cur, lambda, mu, breakdown(cur, lambda, mu)))
      return finish(NlpStatus::Converged, k, elastic_steps);

    Step step = qp_step(B, cur, cur.in.values, cur.eq.values, w.max());
    if (!step.ok) {
      B = Matrix::Identity(n, n);
      ++resets;
      step = qp_step(B, cur, cur.in.values, cur.eq.values, w.max());
      if (!step.ok) return finish(NlpStatus::LineSearchFail, k, elastic_steps);
    }
    if (step.elastic) ++elastic_steps;
    if (record(cur, step.lambda, step.mu, breakdown(cur, step.lambda, step.mu))) {
      lambda = step.lambda;
      mu = step.mu;
      return finish(NlpStatus::Converged, k, elastic_steps);
    }

    // Max-multiplier penalty rule (Powell): w_i = max(|m_i|, (w_i + |m_i|) / 2).
    if (!weighted) {
      w = {step.lambda.cwiseAbs(), step.mu.cwiseAbs()};
      weighted = true;
    } else {
      w.in = step.lambda.cwiseAbs().cwiseMax(0.5 * (w.in + step.lambda.cwiseAbs()));
      w.eq = step.mu.cwiseAbs().cwiseMax(0.5 * (w.eq + step.mu.cwiseAbs()));
    }

    const Vector& d = step.d;
    const double viol0 = weighted_violation(w, cur.in.values, cur.eq.values);
    const double lin_viol = weighted_violation(w, cur.in.values + cur.in.jacobian * d, cur.eq.values + cur.eq.jacobian * d);
    double D = cur.f.gradient.dot(d) + lin_viol - viol0;
    if (!(D < 0.0)) D = -1e-3 * d.dot(B * d);
    const double phi0 = merit(cur, w);

    auto accept = [&](const Point& trial, double alpha) {
      if (!trial.finite()) return false;
      const double phi = merit(trial, w);
      return phi <= phi0 + limits.armijo * alpha * D ||
             std::abs(phi - phi0) <= 1e-15 * (1.0 + std::abs(phi0));
    };

    bool accepted = false;
    Point next;
    {
      Point full = evaluate(nlp, cur.x + d);
      if (accept(full, 1.0)) {
        next = std::move(full);
        accepted = true;
      } else if (full.finite()) {
        // Second-order correction against the Maratos effect.
        const Vector cin = full.in.values - cur.in.jacobian * d;
        const Vector ceq = full.eq.values - cur.eq.jacobian * d;
        QpProblem qp{B, cur.f.gradient, cur.eq.jacobian, -ceq, cur.in.jacobian, -cin};
        const QpResult soc = solve_qp(qp);
        if (soc.status == QpStatus::Optimal) {
          Point corrected = evaluate(nlp, cur.x + soc.x);
          if (accept(corrected, 1.0)) {
            next = std::move(corrected);
            accepted = true;
          }
        }
      }
    }
    double alpha = 1.0;
    for (int b = 0; !accepted && b < limits.max_backtracks; ++b) {
      alpha *= limits.contraction;
      Point trial = evaluate(nlp, cur.x + alpha * d);
      if (accept(trial, alpha)) {
        next = std::move(trial);
        accepted = true;
      }
    }
    if (!accepted) {
      if (resets < 5) {
        B = Matrix::Identity(n, n);
        scaled = false;
        ++resets;
        continue;
      }
      return finish(NlpStatus::LineSearchFail, k + 1, elastic_steps);
    }

    const Vector s = next.x - cur.x;
    const Vector y = lagrangian_gradient(next, step.lambda, step.mu) -
                     lagrangian_gradient(cur, step.lambda, step.mu);
    if (!scaled) {
      // Shanno scaling of the first update, using y damped against B = I.
      const double ss = s.dot(s);
      Vector yd = y;
      double sy = s.dot(y);
      if (sy < 0.2 * ss) {
        const double theta = 0.8 * ss / (ss - sy);
        yd = theta * y + (1.0 - theta) * s;
        sy = s.dot(yd);
      }
      const double scale = yd.dot(yd) / sy;
      if (sy > 0.0 && std::isfinite(scale)) B = Matrix::Identity(n, n) * scale;
      scaled = true;
    }
    bfgs_update(B, s, y);
    if (!B.allFinite()) {
      B = Matrix::Identity(n, n);
      scaled = false;
      ++resets;
    }
    condition_hessian(B);

    if (s.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + cur.x.cwiseAbs().maxCoeff())) {
      if (++stalls >= 5) {
        cur = std::move(next);
        record(cur, step.lambda, step.mu, breakdown(cur, step.lambda, step.mu));
        return finish(NlpStatus::LineSearchFail, k + 1, elastic_steps);
      }
    } else {
      stalls = 0;
    }
    cur = std::move(next);
    lambda = step.lambda;
    mu = step.mu;
  }
  record(cur, lambda, mu, breakdown(cur, lambda, mu));
  return finish(NlpStatus::IterLimit, limits.max_iter, elastic_steps);
}

}  // namespace mpvc
