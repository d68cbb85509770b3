#include "mpvc/qp.hpp"

#include "mpvc/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mpvc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Givens {
  double c, s;
};

// Rotation with [c s; -s c] [a; b] = [hypot(a,b); 0].
Givens make_givens(double a, double b) {
  const double h = std::hypot(a, b);
  if (h == 0.0) return {1.0, 0.0};
  return {a / h, b / h};
}

void rotate_cols(Matrix& M, int j, int k, Givens g) {
  for (int r = 0; r < M.rows(); ++r) {
    const double a = M(r, j), b = M(r, k);
    M(r, j) = g.c * a + g.s * b;
    M(r, k) = -g.s * a + g.c * b;
  }
}

// Constraint j in the solver's internal form  n_j' x >= b_j  (equalities: = b_j).
struct Row {
  Vector normal;
  double rhs;
  bool equality;
  int source;   // index into A_eq or A_in
  bool flipped; // equality multiplied by -1 to make it a violated >= row
};

class DualActiveSet {
 public:
  DualActiveSet(const QpProblem& qp) : qp_(qp), n_(static_cast<int>(qp.g.size())) {}

  QpResult run() {
    QpResult res;
    res.x = Vector::Zero(n_);
    res.mu = Vector::Zero(qp_.A_eq.rows());
    res.lambda = Vector::Zero(qp_.A_in.rows());

    Eigen::LLT<Matrix> llt(qp_.H);
    if (llt.info() != Eigen::Success) {
      res.status = QpStatus::NotConvex;
      return res;
    }
    // J = L^{-T}; then J J' = H^{-1}.
    J_ = llt.matrixL().solve(Matrix::Identity(n_, n_)).transpose();
    R_ = Matrix::Zero(n_, n_);
    x_ = -llt.solve(qp_.g);
    q_ = 0;

    const int max_iter = 50 + 10 * static_cast<int>(qp_.A_in.rows() + qp_.A_eq.rows() + n_);
    int iter = 0;

    // Equalities first, in order; none of them ever leaves the active set.
    for (int j = 0; j < qp_.A_eq.rows(); ++j) {
      Row row{qp_.A_eq.row(j).transpose(), qp_.b_eq[j], true, j, false};
      const double s = row.normal.dot(x_) - row.rhs;
      if (s > 0) {
        row.normal = -row.normal;
        row.rhs = -row.rhs;
        row.flipped = true;
      }
      const Outcome o = add_violated(row, iter, max_iter);
      if (o == Outcome::Infeasible || o == Outcome::IterLimit) {
        res.status = o == Outcome::Infeasible ? QpStatus::Infeasible : QpStatus::IterLimit;
        res.iterations = iter;
        return res;
      }
    }

    std::vector<char> in_active(qp_.A_in.rows(), 0);
    for (;;) {
      if (++iter > max_iter) {
        res.status = QpStatus::IterLimit;
        res.iterations = iter;
        return res;
      }
      // Most violated inequality (scaled by row norm).
      int p = -1;
      double worst = 0.0;
      for (int j = 0; j < qp_.A_in.rows(); ++j) {
        if (in_active[j]) continue;
        const double nrm = qp_.A_in.row(j).norm();
        const double s = qp_.b_in[j] - qp_.A_in.row(j).dot(x_);
        const double tol = 1e-13 * (1.0 + std::abs(qp_.b_in[j]) + nrm * x_.cwiseAbs().maxCoeff());
        if (s < -tol) {
          const double v = -s / std::max(nrm, 1e-300);
          if (v > worst) {
            worst = v;
            p = j;
          }
        }
      }
      if (p < 0) break;
      Row row{-qp_.A_in.row(p).transpose(), -qp_.b_in[p], false, p, false};
      const Outcome o = add_violated(row, iter, max_iter);
      if (o == Outcome::Infeasible || o == Outcome::IterLimit) {
        res.status = o == Outcome::Infeasible ? QpStatus::Infeasible : QpStatus::IterLimit;
        res.iterations = iter;
        return res;
      }
      in_active.assign(in_active.size(), 0);
      for (const Row& r : active_)
        if (!r.equality) in_active[r.source] = 1;
    }

    res.status = QpStatus::Optimal;
    res.iterations = iter;
    res.x = x_;
    for (int k = 0; k < q_; ++k) {
      const Row& r = active_[k];
      if (r.equality) res.mu[r.source] = r.flipped ? u_[k] : -u_[k];
      else res.lambda[r.source] = u_[k];
    }
    res.objective = 0.5 * x_.dot(qp_.H * x_) + qp_.g.dot(x_);
    return res;
  }

 private:
  enum class Outcome { Added, Skipped, Infeasible, IterLimit };

  // Steps 2(a)-(c) of the dual method for one violated row.
  Outcome add_violated(Row row, int& iter, int max_iter) {
    double u_new = 0.0;
    for (;;) {
      if (++iter > max_iter) return Outcome::IterLimit;
      const double s = row.normal.dot(x_) - row.rhs;
      const Vector d = J_.transpose() * row.normal;
      const Vector z = J_.rightCols(n_ - q_) * d.tail(n_ - q_);
      Vector r(q_);
      if (q_ > 0)
        r = R_.topLeftCorner(q_, q_).triangularView<Eigen::Upper>().solve(d.head(q_));

      // Partial step: largest dual step keeping active inequality multipliers >= 0.
      double t1 = kInf;
      int drop = -1;
      for (int k = 0; k < q_; ++k) {
        if (active_[k].equality) continue;
        if (r[k] > 0.0) {
          const double ratio = u_[k] / r[k];
          if (ratio < t1) {
            t1 = ratio;
            drop = k;
          }
        }
      }
      // Full step: makes row p active.
      const double zn = z.dot(row.normal);
      // zn = |d_tail|^2: the part of the row outside the active span, H^{-1} metric.
      double t2 = kInf;
      if (zn > 1e-12 * std::max(d.squaredNorm(), 1e-300)) t2 = -s / zn;

      if (t2 == kInf && t1 == kInf) {
        // Normal lies in the span of the active rows.
        if (row.equality && std::abs(s) <= 1e-10 * (1.0 + std::abs(row.rhs))) return Outcome::Skipped;
        return Outcome::Infeasible;
      }
      if (t2 == kInf) {
        for (int k = 0; k < q_; ++k) u_[k] -= t1 * r[k];
        u_new += t1;
        drop_active(drop);
        continue;
      }
      const double t = std::min(t1, t2);
      x_ += t * z;
      for (int k = 0; k < q_; ++k) u_[k] -= t * r[k];
      u_new += t;
      if (t2 <= t1) {
        append_active(row, u_new, d);
        return Outcome::Added;
      }
      drop_active(drop);
    }
  }

  void append_active(const Row& row, double u, Vector d) {
    for (int j = n_ - 1; j > q_; --j) {
      const Givens g = make_givens(d[j - 1], d[j]);
      d[j - 1] = g.c * d[j - 1] + g.s * d[j];
      d[j] = 0.0;
      rotate_cols(J_, j - 1, j, g);
    }
    R_.col(q_).head(q_ + 1) = d.head(q_ + 1);
    active_.push_back(row);
    u_.conservativeResize(q_ + 1);
    u_[q_] = u;
    ++q_;
  }

  void drop_active(int k) {
    for (int c = k; c < q_ - 1; ++c) R_.col(c) = R_.col(c + 1);
    R_.col(q_ - 1).setZero();
    for (int j = k; j < q_ - 1; ++j) {
      const Givens g = make_givens(R_(j, j), R_(j + 1, j));
      for (int c = j; c < q_ - 1; ++c) {
        const double a = R_(j, c), b = R_(j + 1, c);
        R_(j, c) = g.c * a + g.s * b;
        R_(j + 1, c) = -g.s * a + g.c * b;
      }
      R_(j + 1, j) = 0.0;
      rotate_cols(J_, j, j + 1, g);
    }
    active_.erase(active_.begin() + k);
    for (int j = k; j < q_ - 1; ++j) u_[j] = u_[j + 1];
    --q_;
    u_.conservativeResize(q_);
  }

  const QpProblem& qp_;
  int n_;
  Matrix J_, R_;
  Vector x_, u_;
  int q_ = 0;
  std::vector<Row> active_;
};

void check_shapes(const QpProblem& qp) {
  const auto n = qp.g.size();
  if (qp.H.rows() != n || qp.H.cols() != n) throw InputError("qp: Hessian shape mismatch");
  if (qp.A_eq.cols() != n && qp.A_eq.rows() > 0) throw InputError("qp: A_eq shape mismatch");
  if (qp.A_in.cols() != n && qp.A_in.rows() > 0) throw InputError("qp: A_in shape mismatch");
  if (qp.A_eq.rows() != qp.b_eq.size() || qp.A_in.rows() != qp.b_in.size())
    throw InputError("qp: right-hand side length mismatch");
}

}  // namespace

QpResult solve_qp(const QpProblem& qp) {
  check_shapes(qp);
  QpProblem copy;
  const QpProblem* use = &qp;
  // Empty blocks may come without column counts.
  if ((qp.A_eq.rows() == 0 && qp.A_eq.cols() != qp.g.size()) ||
      (qp.A_in.rows() == 0 && qp.A_in.cols() != qp.g.size())) {
    copy = qp;
    if (copy.A_eq.rows() == 0) copy.A_eq.resize(0, qp.g.size());
    if (copy.A_in.rows() == 0) copy.A_in.resize(0, qp.g.size());
    use = &copy;
  }
  return DualActiveSet(*use).run();
}

ElasticResult solve_qp_elastic(const QpProblem& qp, double rho) {
  check_shapes(qp);
  const int n = static_cast<int>(qp.g.size());
  const int me = static_cast<int>(qp.A_eq.rows()), mi = static_cast<int>(qp.A_in.rows());
  const int ns = me + mi;
  const int N = n + ns;
  const double curv = 1e-8 * std::max(1.0, qp.H.diagonal().cwiseAbs().maxCoeff());

  QpProblem e;
  e.H = Matrix::Zero(N, N);
  e.H.topLeftCorner(n, n) = qp.H;
  e.H.bottomRightCorner(ns, ns).diagonal().setConstant(curv);
  e.g = Vector::Zero(N);
  e.g.head(n) = qp.g;
  e.g.tail(ns).setConstant(rho);
  e.A_eq.resize(0, N);
  e.b_eq.resize(0);
  // rows: A_in d - v <= b ; A_eq d - w <= b ; -A_eq d - w <= -b ; -v <= 0 ; -w <= 0
  const int rows = mi + 2 * me + ns;
  e.A_in = Matrix::Zero(rows, N);
  e.b_in = Vector::Zero(rows);
  int r = 0;
  for (int j = 0; j < mi; ++j, ++r) {
    e.A_in.row(r).head(n) = qp.A_in.row(j);
    e.A_in(r, n + j) = -1.0;
    e.b_in[r] = qp.b_in[j];
  }
  for (int j = 0; j < me; ++j) {
    e.A_in.row(r).head(n) = qp.A_eq.row(j);
    e.A_in(r, n + mi + j) = -1.0;
    e.b_in[r++] = qp.b_eq[j];
    e.A_in.row(r).head(n) = -qp.A_eq.row(j);
    e.A_in(r, n + mi + j) = -1.0;
    e.b_in[r++] = -qp.b_eq[j];
  }
  for (int j = 0; j < ns; ++j, ++r) e.A_in(r, n + j) = -1.0;

  QpResult sub = DualActiveSet(e).run();
  ElasticResult out;
  out.qp.status = sub.status;
  out.qp.iterations = sub.iterations;
  out.qp.x = sub.x.size() == N ? Vector(sub.x.head(n)) : Vector::Zero(n);
  out.qp.mu = Vector::Zero(me);
  out.qp.lambda = Vector::Zero(mi);
  if (sub.status != QpStatus::Optimal) return out;
  out.qp.lambda = sub.lambda.head(mi);
  for (int j = 0; j < me; ++j) out.qp.mu[j] = sub.lambda[mi + 2 * j] - sub.lambda[mi + 2 * j + 1];
  out.max_slack = ns > 0 ? sub.x.tail(ns).maxCoeff() : 0.0;
  out.qp.objective = 0.5 * out.qp.x.dot(qp.H * out.qp.x) + qp.g.dot(out.qp.x);
  return out;
}

}  // namespace mpvc
