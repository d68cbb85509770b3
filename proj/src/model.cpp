#include "mpvc/model.hpp"

#include "mpvc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpvc {

MpvcProblem::MpvcProblem(std::string name, int n, int m, int p, int l, ScalarFn f, VectorFn g,
                         VectorFn h, VectorFn G, VectorFn H, std::vector<LabelledPoint> known)
    : name_(std::move(name)), n_(n), m_(m), p_(p), l_(l), f_(std::move(f)), g_(std::move(g)),
      h_(std::move(h)), G_(std::move(G)), H_(std::move(H)), known_(std::move(known)) {
  if (n <= 0 || m < 0 || p < 0 || l < 0) throw InputError("MpvcProblem: bad dimensions");
  for (const auto& kp : known_)
    if (kp.x.size() != n) throw InputError("MpvcProblem: known point '" + kp.label + "' has wrong size");
}

void MpvcProblem::check_dim(const Vector& x) const {
  if (x.size() != n_)
    throw InputError(name_ + ": point has length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(n_));
}

ScalarEval MpvcProblem::f(const Vector& x) const {
  check_dim(x);
  ScalarEval e = f_(x);
  if (e.gradient.size() != n_) throw InputError(name_ + ": objective gradient has wrong length");
  return e;
}

VectorEval MpvcProblem::eval(const VectorFn& fn, const Vector& x, int rows, const char* what) const {
  check_dim(x);
  VectorEval e = fn(x);
  if (e.values.size() != rows || e.jacobian.rows() != rows || e.jacobian.cols() != n_)
    throw InputError(name_ + ": evaluator " + what + " returned inconsistent shapes");
  return e;
}

VectorEval MpvcProblem::g(const Vector& x) const { return eval(g_, x, m_, "g"); }
VectorEval MpvcProblem::h(const Vector& x) const { return eval(h_, x, p_, "h"); }
VectorEval MpvcProblem::G(const Vector& x) const { return eval(G_, x, l_, "G"); }
VectorEval MpvcProblem::H(const Vector& x) const { return eval(H_, x, l_, "H"); }

VectorFn empty_constraints(int n) {
  return [n](const Vector&) { return VectorEval{Vector(0), Matrix(0, n)}; };
}

std::vector<int> IndexSets::I_plus() const {
  std::vector<int> out = I_plus0;
  out.insert(out.end(), I_plusminus.begin(), I_plusminus.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> IndexSets::I_0() const {
  std::vector<int> out = I_0plus;
  out.insert(out.end(), I_00.begin(), I_00.end());
  out.insert(out.end(), I_0minus.begin(), I_0minus.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
int sign_band(double v, double tau) { return v > tau ? 1 : (v < -tau ? -1 : 0); }
}  // namespace

IndexSets index_sets(const MpvcProblem& problem, const Vector& x, double tau_act) {
  if (!(tau_act > 0)) throw ParameterError("index_sets: tau_act must be positive");
  IndexSets s;
  s.tau_act = tau_act;
  const Vector g = problem.g(x).values;
  for (int i = 0; i < g.size(); ++i)
    if (std::abs(g[i]) <= tau_act) s.I_g.push_back(i);

  const Vector G = problem.G(x).values;
  const Vector H = problem.H(x).values;
  for (int i = 0; i < problem.l(); ++i) {
    const int sh = sign_band(H[i], tau_act), sg = sign_band(G[i], tau_act);
    if (sh < 0) {
      s.I_infeasible.push_back(i);
    } else if (sh > 0) {
      if (sg == 0) s.I_plus0.push_back(i);
      else if (sg < 0) s.I_plusminus.push_back(i);
      else s.I_infeasible.push_back(i);
    } else {
      if (sg > 0) s.I_0plus.push_back(i);
      else if (sg == 0) s.I_00.push_back(i);
      else s.I_0minus.push_back(i);
    }
  }
  return s;
}

double max_vio(const MpvcProblem& problem, const Vector& x) {
  const Vector G = problem.G(x).values;
  const Vector H = problem.H(x).values;
  if (G.size() == 0) return -std::numeric_limits<double>::infinity();
  return G.cwiseProduct(H).maxCoeff();
}

double full_violation(const MpvcProblem& problem, const Vector& x) {
  double v = 0.0;
  const Vector g = problem.g(x).values;
  if (g.size()) v = std::max(v, g.maxCoeff());
  const Vector h = problem.h(x).values;
  if (h.size()) v = std::max(v, h.cwiseAbs().maxCoeff());
  const Vector G = problem.G(x).values;
  const Vector H = problem.H(x).values;
  if (H.size()) {
    v = std::max(v, (-H).maxCoeff());
    v = std::max(v, G.cwiseProduct(H).maxCoeff());
  }
  return v;
}

Vector fd_gradient(const std::function<double(const Vector&)>& fn, const Vector& x) {
  Vector grad(x.size());
  Vector xp = x;
  for (int j = 0; j < x.size(); ++j) {
    const double step = 1e-6 * (1.0 + std::abs(x[j]));
    xp[j] = x[j] + step;
    const double fp = fn(xp);
    xp[j] = x[j] - step;
    const double fm = fn(xp);
    xp[j] = x[j];
    grad[j] = (fp - fm) / (2.0 * step);
  }
  return grad;
}

Matrix fd_jacobian(const std::function<Vector(const Vector&)>& fn, const Vector& x) {
  const Vector f0 = fn(x);
  Matrix J(f0.size(), x.size());
  Vector xp = x;
  for (int j = 0; j < x.size(); ++j) {
    const double step = 1e-6 * (1.0 + std::abs(x[j]));
    xp[j] = x[j] + step;
    const Vector fp = fn(xp);
    xp[j] = x[j] - step;
    const Vector fm = fn(xp);
    xp[j] = x[j];
    J.col(j) = (fp - fm) / (2.0 * step);
  }
  return J;
}

}  // namespace mpvc
