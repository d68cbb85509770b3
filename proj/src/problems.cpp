#include "mpvc/problems.hpp"

#include "mpvc/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>

namespace mpvc {

namespace {
const double kSqrt2 = std::numbers::sqrt2;
}

MpvcProblem academic() {
  auto f = [](const Vector& x) {
    ScalarEval e;
    e.value = 4.0 * x[0] + 2.0 * x[1];
    e.gradient = Vector(2);
    e.gradient << 4.0, 2.0;
    return e;
  };
  auto G = [](const Vector& x) {
    VectorEval e{Vector(2), Matrix(2, 2)};
    e.values << 5.0 * kSqrt2 - x[0] - x[1], 5.0 - x[0] - x[1];
    e.jacobian << -1.0, -1.0, -1.0, -1.0;
    return e;
  };
  auto H = [](const Vector& x) { return VectorEval{x, Matrix::Identity(2, 2)}; };
  std::vector<LabelledPoint> known{{"x_circ", Vector::Zero(2)},
                                   {"x_star", (Vector(2) << 0.0, 5.0).finished()},
                                   {"x_plus", (Vector(2) << 0.0, 5.0 * kSqrt2).finished()}};
  return MpvcProblem("academic", 2, 0, 0, 2, f, empty_constraints(2), empty_constraints(2), G, H,
                     std::move(known));
}

// ---------------------------------------------------------------------------

TrussGroundStructure TrussGroundStructure::ten_bar_default() {
  TrussGroundStructure t;
  t.nodes = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
  t.fixed_nodes = {0, 3};
  t.members = {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {1, 4}, {2, 5}, {0, 4}, {3, 1}, {1, 5}, {4, 2}};
  t.load_node = 2;
  t.load = {0.0, -1.0};
  return t;
}

TrussGroundStructure TrussGroundStructure::from_json(const nlohmann::json& j) {
  // Keys override the ten-bar defaults.
  TrussGroundStructure t = ten_bar_default();
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("nodes", t.nodes);
    get("fixed_nodes", t.fixed_nodes);
    get("members", t.members);
    get("load_node", t.load_node);
    get("load", t.load);
    get("E", t.E);
    get("c", t.c);
    get("a_bar", t.a_bar);
    get("sigma_bar", t.sigma_bar);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("truss fixture: ") + e.what());
  }
  const int nn = static_cast<int>(t.nodes.size());
  for (const auto& m : t.members)
    if (m[0] < 0 || m[0] >= nn || m[1] < 0 || m[1] >= nn || m[0] == m[1])
      throw InputError("truss: member references an invalid node");
  if (t.load_node < 0 || t.load_node >= nn) throw InputError("truss: invalid load node");
  return t;
}

nlohmann::json TrussGroundStructure::to_json() const {
  return {{"nodes", nodes}, {"fixed_nodes", fixed_nodes}, {"members", members},
          {"load_node", load_node}, {"load", load}, {"E", E}, {"c", c},
          {"a_bar", a_bar}, {"sigma_bar", sigma_bar}};
}

namespace {
// First free dof of node k, or -1 when the node is fixed.
int dof_of(const TrussGroundStructure& t, int k) {
  int d = 0;
  for (int j = 0; j < static_cast<int>(t.nodes.size()); ++j) {
    const bool fixed = std::find(t.fixed_nodes.begin(), t.fixed_nodes.end(), j) != t.fixed_nodes.end();
    if (j == k) return fixed ? -1 : d;
    if (!fixed) d += 2;
  }
  return -1;
}
}  // namespace

int TrussGroundStructure::free_dofs() const {
  return 2 * static_cast<int>(nodes.size() - fixed_nodes.size());
}

double TrussGroundStructure::length(int i) const {
  const auto& p = nodes[members[i][0]];
  const auto& q = nodes[members[i][1]];
  return std::hypot(q[0] - p[0], q[1] - p[1]);
}

Vector TrussGroundStructure::gamma(int i) const {
  const auto& p = nodes[members[i][0]];
  const auto& q = nodes[members[i][1]];
  const double len = length(i);
  const double c = (q[0] - p[0]) / len, s = (q[1] - p[1]) / len;
  Vector g = Vector::Zero(free_dofs());
  if (const int dp = dof_of(*this, members[i][0]); dp >= 0) {
    g[dp] = -c;
    g[dp + 1] = -s;
  }
  if (const int dq = dof_of(*this, members[i][1]); dq >= 0) {
    g[dq] = c;
    g[dq + 1] = s;
  }
  return g;
}

Vector TrussGroundStructure::load_vector() const {
  Vector f = Vector::Zero(free_dofs());
  const int d = dof_of(*this, load_node);
  if (d < 0) throw InputError("truss: load applied at a fixed node");
  f[d] = load[0];
  f[d + 1] = load[1];
  return f;
}

Matrix TrussGroundStructure::stiffness(const Vector& a) const {
  if (a.size() != static_cast<int>(members.size())) throw InputError("truss: area vector has wrong length");
  Matrix K = Matrix::Zero(free_dofs(), free_dofs());
  for (int i = 0; i < a.size(); ++i) {
    const Vector g = gamma(i);
    K += a[i] * (E / length(i)) * g * g.transpose();
  }
  return K;
}

double TrussGroundStructure::stress(const Vector& u, int i) const {
  return E * gamma(i).dot(u) / length(i);
}

MpvcProblem ten_bar(const TrussGroundStructure& truss) {
  const int nm = static_cast<int>(truss.members.size());
  const int nd = truss.free_dofs();
  const int n = nm + nd;

  // Precomputed geometry shared by the evaluators.
  struct Geo {
    std::vector<Vector> gam;
    Vector len;
    Vector f;
    TrussGroundStructure t;
  };
  auto geo = std::make_shared<Geo>();
  geo->t = truss;
  geo->len = Vector(nm);
  for (int i = 0; i < nm; ++i) {
    geo->gam.push_back(truss.gamma(i));
    geo->len[i] = truss.length(i);
  }
  geo->f = truss.load_vector();

  auto f = [geo, n, nm](const Vector& x) {
    ScalarEval e;
    e.value = geo->len.dot(x.head(nm));
    e.gradient = Vector::Zero(n);
    e.gradient.head(nm) = geo->len;
    return e;
  };
  auto g = [geo, n, nm, nd](const Vector& x) {
    VectorEval e{Vector(1 + nm), Matrix::Zero(1 + nm, n)};
    e.values[0] = geo->f.dot(x.tail(nd)) - geo->t.c;
    e.jacobian.row(0).tail(nd) = geo->f.transpose();
    for (int i = 0; i < nm; ++i) {
      e.values[1 + i] = x[i] - geo->t.a_bar;
      e.jacobian(1 + i, i) = 1.0;
    }
    return e;
  };
  auto h = [geo, n, nm, nd](const Vector& x) {
    const Vector u = x.tail(nd);
    VectorEval e{-geo->f, Matrix::Zero(nd, n)};
    for (int i = 0; i < nm; ++i) {
      const double k = geo->t.E / geo->len[i];
      const Vector col = k * geo->gam[i] * geo->gam[i].dot(u);
      e.values += x[i] * col;
      e.jacobian.col(i) = col;
      e.jacobian.rightCols(nd) += x[i] * k * geo->gam[i] * geo->gam[i].transpose();
    }
    return e;
  };
  auto G = [geo, n, nm, nd](const Vector& x) {
    const Vector u = x.tail(nd);
    VectorEval e{Vector(nm), Matrix::Zero(nm, n)};
    for (int i = 0; i < nm; ++i) {
      const double k = geo->t.E / geo->len[i];
      const double sigma = k * geo->gam[i].dot(u);
      e.values[i] = sigma * sigma - geo->t.sigma_bar * geo->t.sigma_bar;
      e.jacobian.row(i).tail(nd) = 2.0 * sigma * k * geo->gam[i].transpose();
    }
    return e;
  };
  auto H = [n, nm](const Vector& x) {
    VectorEval e{x.head(nm), Matrix::Zero(nm, n)};
    e.jacobian.leftCols(nm).setIdentity();
    return e;
  };
  return MpvcProblem("ten_bar", n, 1 + nm, nd, nm, f, g, h, G, H);
}

Vector ten_bar_initial_point(const TrussGroundStructure& truss) {
  const int nm = static_cast<int>(truss.members.size());
  const Vector a = Vector::Ones(nm);
  const Matrix K = truss.stiffness(a);
  Eigen::FullPivLU<Matrix> lu(K);
  if (!lu.isInvertible()) throw SetupError("ten_bar: K(a0) is singular");
  Vector x(nm + truss.free_dofs());
  x << a, lu.solve(truss.load_vector());
  return x;
}

// ---------------------------------------------------------------------------

AeroParams AeroParams::from_json(const nlohmann::json& j) {
  AeroParams p;
  auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      field = j.at(key).get<std::decay_t<decltype(field)>>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("aerothermo fixture: ") + e.what());
    }
  };
  get("N", p.N);
  get("rho0", p.rho0); get("Hs", p.Hs); get("g0", p.g0); get("RE", p.RE);
  get("S", p.S); get("CD0", p.CD0); get("k", p.k); get("mass", p.mass);
  get("Ke", p.Ke); get("Rn", p.Rn); get("Qrad_max", p.Qrad_max);
  get("CL_min", p.CL_min); get("CL_max", p.CL_max); get("T_max", p.T_max); get("Qc_max", p.Qc_max);
  get("h_final_max", p.h_final_max); get("tf_min", p.tf_min); get("tf_max", p.tf_max);
  get("v0", p.v0); get("gamma0", p.gamma0); get("h0", p.h0); get("Q0", p.Q0);
  get("v_min", p.v_min); get("gamma_max", p.gamma_max); get("h_min", p.h_min);
  get("CL_guess", p.CL_guess);
  if (p.N < 2) throw ParameterError("aerothermo: N must be at least 2");
  return p;
}

AeroLayout AeroParams::layout() const { return {N - 1}; }

nlohmann::json AeroParams::to_json() const {
  return {{"N", N}, {"rho0", rho0}, {"Hs", Hs}, {"g0", g0}, {"RE", RE}, {"S", S}, {"CD0", CD0},
          {"k", k}, {"mass", mass}, {"Ke", Ke}, {"Rn", Rn}, {"Qrad_max", Qrad_max},
          {"CL_min", CL_min}, {"CL_max", CL_max}, {"T_max", T_max}, {"Qc_max", Qc_max},
          {"h_final_max", h_final_max}, {"tf_min", tf_min}, {"tf_max", tf_max}, {"v0", v0},
          {"gamma0", gamma0}, {"h0", h0}, {"Q0", Q0}, {"v_min", v_min}, {"gamma_max", gamma_max},
          {"h_min", h_min}, {"CL_guess", CL_guess}};
}

double heat_rate(const AeroParams& p, double v, double h) {
  const double rho = p.rho0 * std::exp(-h / p.Hs);
  return p.Ke * std::sqrt(rho / p.Rn) * v * v * v / 1e4;
}

std::array<double, 4> aero_rhs(const AeroParams& p, const AeroState& x, const AeroControl& u) {
  const double rho = p.rho0 * std::exp(-x.h / p.Hs);
  const double g = p.g0 * std::pow(p.RE / (p.RE + x.h), 2);
  const double r = p.RE + x.h;
  const double qd = 0.5 * rho * x.v * x.v;
  const double L = qd * p.S * u.CL;
  const double D = qd * p.S * (p.CD0 + p.k * u.CL * u.CL);
  return {(u.T - D) / p.mass - g * std::sin(x.gamma),
          L / (p.mass * x.v) + std::cos(x.gamma) * (x.v / r - g / x.v),
          x.v * std::sin(x.gamma),
          heat_rate(p, x.v, x.h) - u.Qc};
}

namespace {

// Scale factors between SI and the internal units (km, 100 s, 1e6 N).
constexpr double kV = 1000.0, kH = 1000.0, kTime = 100.0, kForce = 1e6;

struct ScaledRhs {
  std::array<double, 4> F;
  // dF/d(v, gamma, h) in scaled units, and dF/d(CL, T, Qc).
  double dx[4][3];
  double du[4][3];
};

// State (v [km/s], gamma, h [km]); control (CL, T [1e6 N], Qc [W/cm^2]).
ScaledRhs scaled_rhs(const AeroParams& p, double vs, double gam, double hs, double CL, double Ts, double Qc) {
  const double V = kV * vs, Hm = kH * hs, T = kForce * Ts;
  const double rho = p.rho0 * std::exp(-Hm / p.Hs);
  const double rho_h = -rho * kH / p.Hs;
  const double r = p.RE + Hm;
  const double g = p.g0 * std::pow(p.RE / r, 2);
  const double g_h = -2.0 * g * kH / r;
  const double sg = std::sin(gam), cg = std::cos(gam);
  const double cd = p.CD0 + p.k * CL * CL;
  const double qd = 0.5 * rho * V * V;
  const double D = qd * p.S * cd;
  const double rate = p.Ke * std::sqrt(rho / p.Rn) * V * V * V / 1e4;

  const double av = (T - D) / p.mass - g * sg;
  const double ag = 0.5 * rho * V * p.S * CL / p.mass + cg * (V / r - g / V);
  const double ah = V * sg;
  const double aq = rate - Qc;

  // time unit 100 s; v, h per km
  const double sv = kTime / kV, sgam = kTime, sh = kTime / kH, sq = kTime;
  ScaledRhs out{};
  out.F = {sv * av, sgam * ag, sh * ah, sq * aq};

  const double av_v = -p.S * cd * rho * V * kV / p.mass;
  const double av_g = -g * cg;
  const double av_h = -p.S * cd * 0.5 * V * V * rho_h / p.mass - g_h * sg;
  const double ag_v = 0.5 * rho * p.S * CL / p.mass * kV + cg * (kV / r + g * kV / (V * V));
  const double ag_g = -sg * (V / r - g / V);
  const double ag_h = 0.5 * rho_h * V * p.S * CL / p.mass + cg * (-V * kH / (r * r) - g_h / V);
  const double ah_v = kV * sg, ah_g = V * cg, ah_h = 0.0;
  const double aq_v = 3.0 * rate / V * kV, aq_g = 0.0, aq_h = -0.5 * rate * kH / p.Hs;

  const double dx[4][3] = {{av_v, av_g, av_h}, {ag_v, ag_g, ag_h}, {ah_v, ah_g, ah_h}, {aq_v, aq_g, aq_h}};
  const double du[4][3] = {{-qd * p.S * 2.0 * p.k * CL / p.mass, kForce / p.mass, 0.0},
                           {0.5 * rho * V * p.S / p.mass, 0.0, 0.0},
                           {0.0, 0.0, 0.0},
                           {0.0, 0.0, -1.0}};
  const double s[4] = {sv, sgam, sh, sq};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 3; ++b) {
      out.dx[a][b] = s[a] * dx[a][b];
      out.du[a][b] = s[a] * du[a][b];
    }
  return out;
}

}  // namespace

MpvcProblem aerothermo(const AeroParams& params) {
  if (params.N < 2) throw ParameterError("aerothermo: N must be at least 2");
  const AeroParams p = params;
  const AeroLayout L = p.layout();
  const int N = L.K, n = L.n();
  const std::array<double, 4> x0s{p.v0 / kV, p.gamma0, p.h0 / kH, p.Q0};

  // State component c at node i (node 0 is the fixed initial state).
  auto state = [L, x0s](const Vector& z, int i, int c) { return i == 0 ? x0s[c] : z[L.state(i, c)]; };

  auto f = [L, n, N](const Vector& z) {
    ScalarEval e;
    e.value = z[L.state(N, 3)];
    e.gradient = Vector::Zero(n);
    e.gradient[L.state(N, 3)] = 1.0;
    return e;
  };

  // Inequalities, in order (N here counts intervals): per node 0..N: CL bounds (2), T bounds (2), Qc upper (1);
  // per node 1..N: v >= v_min, h >= h_min, |gamma| <= gamma_max (2);
  // tf bounds (2); terminal altitude (1).
  const int m = 5 * (N + 1) + 4 * N + 3;
  auto g = [p, L, n, N, m](const Vector& z) {
    VectorEval e{Vector(m), Matrix::Zero(m, n)};
    int r = 0;
    auto row = [&](int var, double coef, double rhs) {
      e.values[r] = coef * z[var] - rhs;
      e.jacobian(r, var) = coef;
      ++r;
    };
    for (int i = 0; i <= N; ++i) {
      row(L.control(i, 0), -1.0, -p.CL_min);
      row(L.control(i, 0), 1.0, p.CL_max);
      row(L.control(i, 1), -1.0, 0.0);
      row(L.control(i, 1), 1.0, p.T_max / kForce);
      row(L.control(i, 2), 1.0, p.Qc_max);
    }
    for (int i = 1; i <= N; ++i) {
      row(L.state(i, 0), -1.0, -p.v_min / kV);
      row(L.state(i, 2), -1.0, -p.h_min / kH);
      row(L.state(i, 1), 1.0, p.gamma_max);
      row(L.state(i, 1), -1.0, p.gamma_max);
    }
    row(L.tf(), -1.0, -p.tf_min / kTime);
    row(L.tf(), 1.0, p.tf_max / kTime);
    row(L.state(N, 2), 1.0, p.h_final_max / kH);
    return e;
  };

  // Defects x_{i+1} - x_i - (tf/N) F(x_{i+1}, u_{i+1}), i = 0..N-1.
  auto h = [p, L, n, N, state](const Vector& z) {
    VectorEval e{Vector(4 * N), Matrix::Zero(4 * N, n)};
    const double tf = z[L.tf()];
    const double dt = tf / N;
    for (int i = 0; i < N; ++i) {
      const int j = i + 1;
      const ScaledRhs F = scaled_rhs(p, z[L.state(j, 0)], z[L.state(j, 1)], z[L.state(j, 2)],
                                     z[L.control(j, 0)], z[L.control(j, 1)], z[L.control(j, 2)]);
      for (int a = 0; a < 4; ++a) {
        const int r = 4 * i + a;
        e.values[r] = state(z, j, a) - state(z, i, a) - dt * F.F[a];
        e.jacobian(r, L.state(j, a)) += 1.0;
        if (i > 0) e.jacobian(r, L.state(i, a)) -= 1.0;
        for (int b = 0; b < 3; ++b) {
          e.jacobian(r, L.state(j, b)) -= dt * F.dx[a][b];
          e.jacobian(r, L.control(j, b)) -= dt * F.du[a][b];
        }
        e.jacobian(r, L.tf()) -= F.F[a] / N;
      }
    }
    return e;
  };

  // G_i = Qrad_max - heat rate at node i, H_i = Qc_i.
  auto G = [p, L, n, N, state](const Vector& z) {
    VectorEval e{Vector(N + 1), Matrix::Zero(N + 1, n)};
    for (int i = 0; i <= N; ++i) {
      const double V = kV * state(z, i, 0), Hm = kH * state(z, i, 2);
      const double rate = heat_rate(p, V, Hm);
      e.values[i] = p.Qrad_max - rate;
      if (i > 0) {
        e.jacobian(i, L.state(i, 0)) = -3.0 * rate / V * kV;
        e.jacobian(i, L.state(i, 2)) = 0.5 * rate * kH / p.Hs;
      }
    }
    return e;
  };
  auto H = [L, n, N](const Vector& z) {
    VectorEval e{Vector(N + 1), Matrix::Zero(N + 1, n)};
    for (int i = 0; i <= N; ++i) {
      e.values[i] = z[L.control(i, 2)];
      e.jacobian(i, L.control(i, 2)) = 1.0;
    }
    return e;
  };
  return MpvcProblem("aerothermo", n, m, 4 * N, N + 1, f, g, h, G, H);
}

AeroTrajectory aero_unpack(const AeroParams& p, const Vector& z) {
  const AeroLayout L = p.layout();
  if (z.size() != L.n()) throw InputError("aerothermo: decision vector has wrong length");
  AeroTrajectory tr;
  tr.tf = z[L.tf()] * kTime;
  for (int i = 0; i <= L.K; ++i) {
    tr.time.push_back(tr.tf * i / L.K);
    if (i == 0) tr.x.push_back({p.v0, p.gamma0, p.h0, p.Q0});
    else
      tr.x.push_back({z[L.state(i, 0)] * kV, z[L.state(i, 1)], z[L.state(i, 2)] * kH, z[L.state(i, 3)]});
    tr.u.push_back({z[L.control(i, 0)], z[L.control(i, 1)] * kForce, z[L.control(i, 2)]});
  }
  return tr;
}

Vector aero_pack(const AeroParams& p, const AeroTrajectory& tr) {
  const AeroLayout L = p.layout();
  if (static_cast<int>(tr.x.size()) != p.N || static_cast<int>(tr.u.size()) != p.N)
    throw InputError("aerothermo: trajectory has wrong node count");
  Vector z(L.n());
  for (int i = 1; i <= L.K; ++i) {
    z[L.state(i, 0)] = tr.x[i].v / kV;
    z[L.state(i, 1)] = tr.x[i].gamma;
    z[L.state(i, 2)] = tr.x[i].h / kH;
    z[L.state(i, 3)] = tr.x[i].Q;
  }
  for (int i = 0; i <= L.K; ++i) {
    z[L.control(i, 0)] = tr.u[i].CL;
    z[L.control(i, 1)] = tr.u[i].T / kForce;
    z[L.control(i, 2)] = tr.u[i].Qc;
  }
  z[L.tf()] = tr.tf / kTime;
  return z;
}

Vector aerothermo_initial_point(const AeroParams& p) {
  const AeroControl u{p.CL_guess, 0.0, 0.0};
  // Explicit Euler with a fine step, recording the path until landing altitude.
  const double dt = 0.05;
  std::vector<AeroState> path{{p.v0, p.gamma0, p.h0, p.Q0}};
  while (path.back().h > p.h_final_max && path.size() * dt < p.tf_max) {
    const AeroState& x = path.back();
    const auto d = aero_rhs(p, x, u);
    AeroState nx{x.v + dt * d[0], x.gamma + dt * d[1], x.h + dt * d[2], x.Q + dt * d[3]};
    if (!std::isfinite(nx.v) || nx.v <= p.v_min) break;
    path.push_back(nx);
  }
  const double tf = std::clamp((path.size() - 1) * dt, p.tf_min, p.tf_max);
  AeroTrajectory tr;
  tr.tf = tf;
  for (int i = 0; i < p.N; ++i) {
    const double t = tf * i / (p.N - 1);
    const double s = std::min(t / dt, static_cast<double>(path.size() - 1));
    const auto k = static_cast<std::size_t>(std::floor(s));
    const std::size_t k1 = std::min(k + 1, path.size() - 1);
    const double w = s - k;
    auto lerp = [w](double a, double b) { return (1 - w) * a + w * b; };
    tr.time.push_back(t);
    tr.x.push_back({lerp(path[k].v, path[k1].v), lerp(path[k].gamma, path[k1].gamma),
                    lerp(path[k].h, path[k1].h), lerp(path[k].Q, path[k1].Q)});
    tr.u.push_back(u);
  }
  return aero_pack(p, tr);
}

// ---------------------------------------------------------------------------

namespace {

MpvcProblem two_var(const std::string& name, double c1, double c2) {
  auto f = [c1, c2](const Vector& x) {
    ScalarEval e;
    e.value = c1 * x[0] + c2 * x[1];
    e.gradient = (Vector(2) << c1, c2).finished();
    return e;
  };
  auto G = [](const Vector& x) {
    return VectorEval{Vector::Constant(1, x[0]), (Matrix(1, 2) << 1.0, 0.0).finished()};
  };
  auto H = [](const Vector& x) {
    return VectorEval{Vector::Constant(1, x[1]), (Matrix(1, 2) << 0.0, 1.0).finished()};
  };
  return MpvcProblem(name, 2, 0, 0, 1, f, empty_constraints(2), empty_constraints(2), G, H);
}

CertifiedPoint family_lshaped_1(double t) {
  return {(Vector(2) << t * t, t - t * t).finished(), 0.0, 1.0 / (t * t), t * t};
}
CertifiedPoint family_lshaped_2(double t) {
  return {(Vector(2) << -t * t, t + t * t).finished(), 0.0, 1.0 / (t * t), t * t};
}
CertifiedPoint family_nonsmooth(double t) {
  return {(Vector(2) << 0.0, t / 2.0).finished(), 0.0, 2.0 / t, 0.0};
}

}  // namespace

std::vector<Counterexample> counterexamples() {
  return {
      {"lshaped_not_weak", two_var("counterexample_1", 1.0, -1.0), Scheme::LShaped, &family_lshaped_1,
       Vector::Zero(2), -1.0, -1.0, Grade::NotWeak},
      {"lshaped_weak_not_T", two_var("counterexample_2", -1.0, 1.0), Scheme::LShaped, &family_lshaped_2,
       Vector::Zero(2), 1.0, 1.0, Grade::Weak},
      {"nonsmooth_not_weak", two_var("counterexample_3", 1.0, 0.0), Scheme::Nonsmooth, &family_nonsmooth,
       Vector::Zero(2), -1.0, 0.0, Grade::NotWeak},
  };
}

}  // namespace mpvc
