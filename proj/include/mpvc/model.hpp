#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace mpvc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct ScalarEval {
  double value = 0.0;
  Vector gradient;
};

struct VectorEval {
  Vector values;
  Matrix jacobian;  // rows x n
};

using ScalarFn = std::function<ScalarEval(const Vector&)>;
using VectorFn = std::function<VectorEval(const Vector&)>;

struct LabelledPoint {
  std::string label;
  Vector x;
};

// min f(x) s.t. g(x) <= 0, h(x) = 0, H(x) >= 0, G_i(x) H_i(x) <= 0.
// Immutable once built; evaluators must be pure so problems can be shared
// across threads.
class MpvcProblem {
 public:
  MpvcProblem(std::string name, int n, int m, int p, int l, ScalarFn f, VectorFn g,
              VectorFn h, VectorFn G, VectorFn H, std::vector<LabelledPoint> known = {});

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int p() const { return p_; }
  int l() const { return l_; }
  const std::vector<LabelledPoint>& known_points() const { return known_; }

  ScalarEval f(const Vector& x) const;
  VectorEval g(const Vector& x) const;
  VectorEval h(const Vector& x) const;
  VectorEval G(const Vector& x) const;
  VectorEval H(const Vector& x) const;

  void check_dim(const Vector& x) const;

 private:
  VectorEval eval(const VectorFn& fn, const Vector& x, int rows, const char* what) const;

  std::string name_;
  int n_, m_, p_, l_;
  ScalarFn f_;
  VectorFn g_, h_, G_, H_;
  std::vector<LabelledPoint> known_;
};

// Zero-row evaluator for problems without g or h.
VectorFn empty_constraints(int n);

struct IndexSets {
  std::vector<int> I_g;
  std::vector<int> I_plus0, I_plusminus, I_0plus, I_00, I_0minus;
  // (+,+) pairs and H < -tau_act: outside the MPVC feasible set, kept so the
  // classification always partitions {0..l-1}.
  std::vector<int> I_infeasible;
  double tau_act = 1e-8;

  std::vector<int> I_plus() const;  // I_+0 ∪ I_+-
  std::vector<int> I_0() const;     // I_0+ ∪ I_00 ∪ I_0-
};

constexpr double kDefaultTauAct = 1e-8;

IndexSets index_sets(const MpvcProblem& problem, const Vector& x,
                     double tau_act = kDefaultTauAct);

double max_vio(const MpvcProblem& problem, const Vector& x);
double full_violation(const MpvcProblem& problem, const Vector& x);

// Central differences with step 1e-6 (1 + |x_j|); for tests only.
Vector fd_gradient(const std::function<double(const Vector&)>& fn, const Vector& x);
Matrix fd_jacobian(const std::function<Vector(const Vector&)>& fn, const Vector& x);

}  // namespace mpvc
