#pragma once

#include "mpvc/model.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mpvc {

enum class Scheme { Global, Local, LShaped, Nonsmooth };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& name);  // throws UsageError

// Any C^2 function on [-1,1] with theta(+-1) = 1, theta'(-1) = -1,
// theta'(1) = 1, theta''(+-1) = 0 and theta'' > 0 inside will do.
struct Theta {
  std::function<double(double)> value;
  std::function<double(double)> prime;
};

// theta(s) = (2/pi) sin(pi s / 2 + 3 pi / 2) + 1
const Theta& sine_theta();

double theta(double s);
double theta_prime(double s);

// Kernel value together with the coefficients of grad G and grad H in its gradient.
struct KernelEval {
  double value;
  double dG;
  double dH;
};

KernelEval phi_global(double G, double H, double t);
KernelEval phi_su(double G, double H, double t, const Theta& th = sine_theta());
KernelEval phi_ks(double G, double H, double t);
KernelEval phi_kdb(double G, double H, double t);
KernelEval kernel(Scheme s, double G, double H, double t);

// phi(a; t) of the Local scheme.
double phi_smooth_abs(double a, double t, const Theta& th = sine_theta());

enum class RowKind { Ineq, NegH, Vanishing };

struct RowTag {
  RowKind kind;
  int index;  // index into g, or vanishing pair index
};

// Row bookkeeping of an NLP built from an MPVC. Inequality rows are laid out as
// [g (m) | -H (l) | vanishing (l)], equality rows are h (p). scheme is empty
// for the direct formulation, where the vanishing rows are G_i H_i <= 0.
struct Provenance {
  std::shared_ptr<const MpvcProblem> problem;
  std::optional<Scheme> scheme;
  double t = 0.0;
  std::vector<RowTag> ineq_rows;

  int m() const { return problem->m(); }
  int l() const { return problem->l(); }
  int negH_row(int i) const { return m() + i; }
  int vanishing_row(int i) const { return m() + l() + i; }
};

// min f(x) s.t. ineq(x) <= 0, eq(x) = 0.
struct Nlp {
  int n = 0;
  int n_ineq = 0;
  int n_eq = 0;
  ScalarFn objective;
  VectorFn ineq;
  VectorFn eq;
  std::optional<Provenance> provenance;
};

Nlp regularize(const MpvcProblem& problem, Scheme scheme, double t);
Nlp regularize(std::shared_ptr<const MpvcProblem> problem, Scheme scheme, double t);

// The MPVC written as a plain NLP with G_i H_i <= 0 rows (no regularization).
Nlp direct_nlp(std::shared_ptr<const MpvcProblem> problem);

}  // namespace mpvc
