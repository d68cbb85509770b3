#include "mpvc/regularize.hpp"

#include "mpvc/errors.hpp"

#include <cmath>
#include <numbers>

namespace mpvc {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Global: return "global";
    case Scheme::Local: return "local";
    case Scheme::LShaped: return "lshaped";
    case Scheme::Nonsmooth: return "nonsmooth";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "global") return Scheme::Global;
  if (name == "local") return Scheme::Local;
  if (name == "lshaped") return Scheme::LShaped;
  if (name == "nonsmooth") return Scheme::Nonsmooth;
  throw UsageError("unknown scheme '" + name + "'");
}

double theta(double s) {
  if (!(std::abs(s) <= 1.0)) throw DomainError("theta: argument outside [-1,1]");
  using std::numbers::pi;
  return 2.0 / pi * std::sin(pi * s / 2.0 + 1.5 * pi) + 1.0;
}

double theta_prime(double s) {
  if (!(std::abs(s) <= 1.0)) throw DomainError("theta': argument outside [-1,1]");
  using std::numbers::pi;
  return std::cos(pi * s / 2.0 + 1.5 * pi);
}

const Theta& sine_theta() {
  static const Theta th{[](double s) { return theta(s); }, [](double s) { return theta_prime(s); }};
  return th;
}

namespace {
void require_positive(double t) {
  if (!(t > 0.0)) throw ParameterError("regularization parameter t must be positive");
}
}  // namespace

KernelEval phi_global(double G, double H, double t) {
  require_positive(t);
  return {G * H - t, H, G};
}

double phi_smooth_abs(double a, double t, const Theta& th) {
  require_positive(t);
  if (std::abs(a) >= t) return std::abs(a);
  return t * th.value(a / t);
}

KernelEval phi_su(double G, double H, double t, const Theta& th) {
  require_positive(t);
  const double a = G - H;
  const double value = G + H - phi_smooth_abs(a, t, th);
  if (a <= -t) return {value, 2.0, 0.0};
  if (a >= t) return {value, 0.0, 2.0};
  const double tp = th.prime(a / t);
  return {value, 1.0 - tp, 1.0 + tp};
}

KernelEval phi_ks(double G, double H, double t) {
  require_positive(t);
  const double Ht = H - t;
  if (G + H >= t) return {G * Ht, Ht, G};
  return {-0.5 * (G * G + Ht * Ht), -G, -Ht};
}

KernelEval phi_kdb(double G, double H, double t) {
  require_positive(t);
  return {G * (H - t), H - t, G};
}

KernelEval kernel(Scheme s, double G, double H, double t) {
  switch (s) {
    case Scheme::Global: return phi_global(G, H, t);
    case Scheme::Local: return phi_su(G, H, t);
    case Scheme::LShaped: return phi_ks(G, H, t);
    case Scheme::Nonsmooth: return phi_kdb(G, H, t);
  }
  throw UsageError("unknown scheme");
}

namespace {

Nlp assemble(std::shared_ptr<const MpvcProblem> prob, std::optional<Scheme> scheme, double t) {
  const int n = prob->n(), m = prob->m(), l = prob->l();
  Nlp nlp;
  nlp.n = n;
  nlp.n_ineq = m + 2 * l;
  nlp.n_eq = prob->p();
  nlp.objective = [prob](const Vector& x) { return prob->f(x); };
  nlp.eq = [prob](const Vector& x) { return prob->h(x); };
  nlp.ineq = [prob, scheme, t, n, m, l](const Vector& x) {
    VectorEval out{Vector(m + 2 * l), Matrix(m + 2 * l, n)};
    if (m > 0) {
      VectorEval g = prob->g(x);
      out.values.head(m) = g.values;
      out.jacobian.topRows(m) = g.jacobian;
    }
    if (l > 0) {
      const VectorEval G = prob->G(x);
      const VectorEval H = prob->H(x);
      out.values.segment(m, l) = -H.values;
      out.jacobian.middleRows(m, l) = -H.jacobian;
      for (int i = 0; i < l; ++i) {
        const KernelEval k = scheme ? kernel(*scheme, G.values[i], H.values[i], t)
                                    : KernelEval{G.values[i] * H.values[i], H.values[i], G.values[i]};
        out.values[m + l + i] = k.value;
        out.jacobian.row(m + l + i) = k.dG * G.jacobian.row(i) + k.dH * H.jacobian.row(i);
      }
    }
    return out;
  };
  Provenance pv;
  pv.problem = prob;
  pv.scheme = scheme;
  pv.t = t;
  for (int j = 0; j < m; ++j) pv.ineq_rows.push_back({RowKind::Ineq, j});
  for (int i = 0; i < l; ++i) pv.ineq_rows.push_back({RowKind::NegH, i});
  for (int i = 0; i < l; ++i) pv.ineq_rows.push_back({RowKind::Vanishing, i});
  nlp.provenance = std::move(pv);
  return nlp;
}

}  // namespace

Nlp regularize(std::shared_ptr<const MpvcProblem> problem, Scheme scheme, double t) {
  require_positive(t);
  if (!problem) throw UsageError("regularize: null problem");
  return assemble(std::move(problem), scheme, t);
}

Nlp regularize(const MpvcProblem& problem, Scheme scheme, double t) {
  return regularize(std::make_shared<const MpvcProblem>(problem), scheme, t);
}

Nlp direct_nlp(std::shared_ptr<const MpvcProblem> problem) {
  if (!problem) throw UsageError("direct_nlp: null problem");
  return assemble(std::move(problem), std::nullopt, 0.0);
}

}  // namespace mpvc
