#include "mpvc/cq.hpp"

#include "mpvc/qp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mpvc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix stack_columns(const std::vector<Vector>& cols, int n) {
  Matrix M(n, static_cast<int>(cols.size()));
  for (int j = 0; j < M.cols(); ++j) M.col(j) = cols[j];
  return M;
}

CqReport licq_report(std::string name, const Matrix& M, double tau_rank) {
  CqReport r;
  r.cq_name = std::move(name);
  r.gradients = static_cast<int>(M.cols());
  if (M.cols() == 0) {
    r.holds = true;
    r.certificate = kInf;
    r.tolerance = tau_rank;
    return r;
  }
  if (M.cols() > M.rows()) {
    r.holds = false;
    r.certificate = 0.0;
    r.tolerance = tau_rank;
    return r;
  }
  const Vector sv = Eigen::JacobiSVD<Matrix>(M).singularValues();
  r.certificate = sv.minCoeff();
  r.tolerance = tau_rank * (sv.maxCoeff() + 1.0);
  r.holds = r.certificate > r.tolerance;
  return r;
}

// Distance from the origin to conv{v_j}, via the dual
//   max s - |d|^2/2  s.t.  v_j'd >= s,
// whose optimum is d = nearest hull point, s = |d|^2 (d = 0 when the origin is in the hull).
double hull_distance(const Matrix& V) {
  const int n = static_cast<int>(V.rows()), k = static_cast<int>(V.cols());
  QpProblem qp;
  qp.H = Matrix::Identity(n + 1, n + 1);
  qp.H(n, n) = 1e-12;
  qp.g = Vector::Zero(n + 1);
  qp.g[n] = -1.0;
  qp.A_eq.resize(0, n + 1);
  qp.b_eq.resize(0);
  qp.A_in = Matrix::Zero(k, n + 1);
  qp.A_in.leftCols(n) = -V.transpose();
  qp.A_in.col(n).setOnes();
  qp.b_in = Vector::Zero(k);
  const QpResult r = solve_qp(qp);
  if (r.status != QpStatus::Optimal) return 0.0;
  return r.x.head(n).norm();
}

}  // namespace

double positive_independence_margin(const Matrix& A, const Matrix& B) {
  double cert = kInf;
  Matrix P;
  const int n = static_cast<int>(std::max(A.rows(), B.rows()));
  if (B.cols() > 0) {
    if (B.cols() > B.rows()) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeFullU);
    const Vector sv = svd.singularValues();
    cert = sv.minCoeff();
    // Projector onto range(B)^perp.
    const int r = static_cast<int>(B.cols());
    const Matrix U2 = svd.matrixU().rightCols(B.rows() - r);
    P = U2 * U2.transpose();
  } else {
    P = Matrix::Identity(n, n);
  }
  if (A.cols() > 0) cert = std::min(cert, hull_distance(P * A));
  return cert;
}

CqReport check_mpvc_licq(const MpvcProblem& problem, const Vector& x, double tau_act, double tau_rank) {
  const IndexSets s = index_sets(problem, x, tau_act);
  const Matrix Jg = problem.g(x).jacobian, Jh = problem.h(x).jacobian;
  const Matrix JG = problem.G(x).jacobian, JH = problem.H(x).jacobian;
  std::vector<Vector> cols;
  for (int i : s.I_g) cols.push_back(Jg.row(i).transpose());
  for (int i = 0; i < problem.p(); ++i) cols.push_back(Jh.row(i).transpose());
  for (int i : s.I_00) cols.push_back(JG.row(i).transpose());
  for (int i : s.I_plus0) cols.push_back(JG.row(i).transpose());
  for (int i : s.I_0()) cols.push_back(JH.row(i).transpose());
  return licq_report("MPVC-LICQ", stack_columns(cols, problem.n()), tau_rank);
}

CqReport check_mpvc_mfcq(const MpvcProblem& problem, const Vector& x, double tau_act, double tau) {
  const IndexSets s = index_sets(problem, x, tau_act);
  const Matrix Jg = problem.g(x).jacobian, Jh = problem.h(x).jacobian;
  const Matrix JG = problem.G(x).jacobian, JH = problem.H(x).jacobian;
  std::vector<Vector> signed_cols, free_cols;
  for (int i : s.I_g) signed_cols.push_back(Jg.row(i).transpose());
  for (int i : s.I_0minus) signed_cols.push_back(-JH.row(i).transpose());
  for (int i : s.I_plus0) signed_cols.push_back(JG.row(i).transpose());
  for (int i : s.I_00) signed_cols.push_back(JG.row(i).transpose());
  for (int i = 0; i < problem.p(); ++i) free_cols.push_back(Jh.row(i).transpose());
  for (int i : s.I_0plus) free_cols.push_back(JH.row(i).transpose());
  for (int i : s.I_00) free_cols.push_back(JH.row(i).transpose());

  CqReport r;
  r.cq_name = "MPVC-MFCQ";
  r.gradients = static_cast<int>(signed_cols.size() + free_cols.size());
  r.tolerance = tau;
  r.certificate = positive_independence_margin(stack_columns(signed_cols, problem.n()),
                                               stack_columns(free_cols, problem.n()));
  r.holds = r.certificate > tau;
  return r;
}

namespace {
struct ActiveRows {
  Matrix in, eq;
};

ActiveRows active_rows(const Nlp& nlp, const Vector& x, double tau_act) {
  const VectorEval in = nlp.ineq(x), eq = nlp.eq(x);
  std::vector<Vector> cols;
  for (int i = 0; i < in.values.size(); ++i)
    if (in.values[i] >= -tau_act) cols.push_back(in.jacobian.row(i).transpose());
  ActiveRows a;
  a.in = stack_columns(cols, nlp.n);
  a.eq = eq.values.size() ? Matrix(eq.jacobian.transpose()) : Matrix(nlp.n, 0);
  return a;
}
}  // namespace

CqReport check_licq(const Nlp& nlp, const Vector& x, double tau_act, double tau_rank) {
  const ActiveRows a = active_rows(nlp, x, tau_act);
  Matrix M(nlp.n, a.in.cols() + a.eq.cols());
  M << a.in, a.eq;
  return licq_report("LICQ", M, tau_rank);
}

CqReport check_mfcq(const Nlp& nlp, const Vector& x, double tau_act, double tau) {
  const ActiveRows a = active_rows(nlp, x, tau_act);
  CqReport r;
  r.cq_name = "MFCQ";
  r.gradients = static_cast<int>(a.in.cols() + a.eq.cols());
  r.tolerance = tau;
  r.certificate = positive_independence_margin(a.in, a.eq);
  r.holds = r.certificate > tau;
  return r;
}

}  // namespace mpvc
