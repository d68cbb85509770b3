#include "mpvc/driver.hpp"
#include "mpvc/errors.hpp"
#include "mpvc/grid.hpp"
#include "mpvc/io.hpp"
#include "mpvc/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mpvc;

namespace {

const double kSqrt2 = std::sqrt(2.0);

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

double rel_err(const Matrix& a, const Matrix& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / (1.0 + a.cwiseAbs().maxCoeff());
}

// Every analytic derivative of the problem against central differences.
void check_gradients(const MpvcProblem& p, const Vector& x) {
  const Vector df = fd_gradient([&](const Vector& z) { return p.f(z).value; }, x);
  CHECK(rel_err(p.f(x).gradient, df) <= 1e-6);
  for (auto fn : {&MpvcProblem::g, &MpvcProblem::h, &MpvcProblem::G, &MpvcProblem::H}) {
    const Matrix J = (p.*fn)(x).jacobian;
    const Matrix fd = fd_jacobian([&](const Vector& z) { return (p.*fn)(z).values; }, x);
    CHECK(rel_err(J, fd) <= 1e-6);
  }
}

// One implicit Euler step in SI units by fixed-point iteration.
AeroState implicit_step(const AeroParams& p, const AeroState& x, const AeroControl& u, double dt) {
  AeroState y = x;
  for (int it = 0; it < 200; ++it) {
    const auto F = aero_rhs(p, y, u);
    y = {x.v + dt * F[0], x.gamma + dt * F[1], x.h + dt * F[2], x.Q + dt * F[3]};
  }
  return y;
}

}  // namespace

TEST_CASE("academic problem values") {
  const MpvcProblem p = academic();
  CHECK(p.f(v2(0, 0)).value == 0.0);
  CHECK(p.f(v2(0, 5)).value == 10.0);
  CHECK(max_vio(p, v2(0, 5 * kSqrt2)) == 0.0);
  CHECK(full_violation(p, v2(0, 5 * kSqrt2)) == 0.0);
  REQUIRE(p.known_points().size() == 3);
  CHECK(p.known_points()[0].label == "x_circ");
  CHECK(p.known_points()[1].label == "x_star");
  CHECK(p.known_points()[2].label == "x_plus");
}

TEST_CASE("only the labelled academic points admit multipliers") {
  const MpvcProblem p = academic();
  std::vector<Vector> pts;
  for (const auto& kp : p.known_points()) pts.push_back(kp.x);
  // feasible boundary points of the 0.5 grid on [0, 10]^2
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const Vector x = v2(0.5 * i, 0.5 * j);
      const bool boundary = i == 0 || j == 0;
      if (boundary && full_violation(p, x) == 0.0) pts.push_back(x);
    }
  int stationary = 0;
  for (const Vector& x : pts) {
    const bool labelled = bucket_point(p, x) != "neither";
    const double r = find_multipliers(p, x).residual;
    CAPTURE(x.transpose());
    CHECK((r <= 1e-8) == labelled);
    stationary += r <= 1e-8;
  }
  CHECK(stationary == 5);  // x_circ and x_star lie on the grid, so they appear twice
}

TEST_CASE("ten-bar ground structure") {
  const TrussGroundStructure t = TrussGroundStructure::ten_bar_default();
  REQUIRE(t.members.size() == 10);
  CHECK(t.free_dofs() == 2 * (6 - 2));
  for (int i = 0; i < 10; ++i) {
    const auto& a = t.nodes[t.members[i][0]];
    const auto& b = t.nodes[t.members[i][1]];
    CHECK(t.length(i) == doctest::Approx(std::hypot(b[0] - a[0], b[1] - a[1])).epsilon(1e-15));
    CHECK(t.gamma(i).norm() == doctest::Approx(t.members[i][0] == 0 || t.members[i][0] == 3 ? 1.0 : kSqrt2));
  }
  // bottom chord 1 -> 2: direction (1, 0); node 1 owns free dofs 0, 1 and node 2 dofs 2, 3
  const Vector g1 = t.gamma(1);
  CHECK(g1[0] == -1.0);
  CHECK(g1[2] == 1.0);
  CHECK(g1[1] == 0.0);
  CHECK(g1[3] == 0.0);

  CHECK(t.stiffness(Vector::Zero(10)).isZero());
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(0.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const Matrix K = t.stiffness(Vector::NullaryExpr(10, [&] { return U(rng); }));
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  const Vector f = t.load_vector();
  CHECK(f.sum() == -1.0);
}

TEST_CASE("ten-bar initial point solves the equilibrium") {
  const MpvcProblem p = ten_bar();
  const Vector x = ten_bar_initial_point();
  REQUIRE(x.size() == p.n());
  CHECK(x.head(10).isOnes());
  CHECK(p.h(x).values.cwiseAbs().maxCoeff() <= 1e-12);
  TrussGroundStructure loose = TrussGroundStructure::ten_bar_default();
  loose.fixed_nodes = {0};
  CHECK_THROWS_AS(ten_bar_initial_point(loose), SetupError);
}

TEST_CASE("ten-bar optimum respects the stress limits of present bars") {
  const TrussGroundStructure t = TrussGroundStructure::ten_bar_default();
  const MpvcProblem p = ten_bar(t);
  const DriverResult r = solve_mpvc(p, DriverConfig{}, ten_bar_initial_point());
  const Vector u = r.x.tail(t.free_dofs());
  for (int i = 0; i < 10; ++i)
    if (r.x[i] > 1e-6) CHECK(std::abs(t.stress(u, i)) <= t.sigma_bar + 1e-6);
}

TEST_CASE("aerothermo layout and packing") {
  const AeroParams p;
  const AeroLayout L = p.layout();
  CHECK(L.K == p.N - 1);
  CHECK(L.n() == 4 * 29 + 3 * 30 + 1);
  const MpvcProblem prob = aerothermo(p);
  CHECK(prob.n() == L.n());
  CHECK(prob.l() == p.N);
  CHECK(prob.p() == 4 * L.K);

  const Vector z = aerothermo_initial_point(p);
  REQUIRE(z.size() == L.n());
  CHECK(z.allFinite());
  const AeroTrajectory tr = aero_unpack(p, z);
  CHECK(tr.x.size() == static_cast<std::size_t>(p.N));
  CHECK(tr.x[0].h == p.h0);
  CHECK(tr.time.back() == doctest::Approx(tr.tf));
  CHECK((aero_pack(p, tr) - z).cwiseAbs().maxCoeff() <= 1e-12);
  // no cooling along the guess, so the heat load only grows
  for (std::size_t i = 1; i < tr.x.size(); ++i) {
    CHECK(tr.u[i].Qc == 0.0);
    CHECK(tr.x[i].Q >= tr.x[i - 1].Q);
  }
  CHECK_THROWS_AS(aero_unpack(p, Vector::Zero(5)), InputError);
  AeroParams bad;
  bad.N = 1;
  CHECK_THROWS_AS(aerothermo(bad), ParameterError);
}

TEST_CASE("aerothermo heat rate at the initial state") {
  const AeroParams p;
  const double rho = 1.225 * std::exp(-12000.0 / 7254.0);
  const double expected = 1.7415e-4 * std::sqrt(rho / 0.6) * 200.0 * 200.0 * 200.0 / 1e4;  // W/cm^2
  CHECK(heat_rate(p, p.v0, p.h0) == doctest::Approx(expected).epsilon(1e-14));
  const auto F = aero_rhs(p, {p.v0, p.gamma0, p.h0, p.Q0}, {p.CL_guess, 0.0, 0.0});
  CHECK(F[3] == doctest::Approx(expected));
  CHECK(F[3] > 0.0);
}

TEST_CASE("transcription defects vanish on an implicit Euler trajectory") {
  const AeroParams p;
  AeroTrajectory tr;
  tr.tf = 120.0;
  const int K = p.N - 1;
  const double dt = tr.tf / K;
  tr.x.push_back({p.v0, p.gamma0, p.h0, p.Q0});
  for (int i = 0; i <= K; ++i) {
    tr.time.push_back(dt * i);
    tr.u.push_back({0.05 + 0.002 * i, 2e5 * (i % 3), 0.1 * (i % 2)});
    if (i > 0) tr.x.push_back(implicit_step(p, tr.x.back(), tr.u.back(), dt));
  }
  const MpvcProblem prob = aerothermo(p);
  const Vector z = aero_pack(p, tr);
  CHECK(prob.h(z).values.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("analytic derivatives match finite differences") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const MpvcProblem a = academic();
  for (int k = 0; k < 50; ++k) check_gradients(a, v2(8 * U(rng), 8 * U(rng)));

  const MpvcProblem t = ten_bar();
  const Vector t0 = ten_bar_initial_point();
  for (int k = 0; k < 50; ++k)
    check_gradients(t, t0 + 0.5 * Vector::NullaryExpr(t0.size(), [&] { return U(rng); }));

  const AeroParams ap;
  const MpvcProblem ae = aerothermo(ap);
  const Vector z0 = aerothermo_initial_point(ap);
  for (int k = 0; k < 50; ++k) {
    Vector z = z0 + 0.05 * z0.cwiseAbs().cwiseMax(0.1).cwiseProduct(Vector::NullaryExpr(z0.size(), [&] { return U(rng); }));
    check_gradients(ae, z);
  }
}

TEST_CASE("fixtures hold the documented defaults") {
  const Json truss = read_json_file(std::string(MPVC_DATA_DIR) + "/ten_bar.json");
  CHECK(TrussGroundStructure::from_json(truss).to_json() == TrussGroundStructure::ten_bar_default().to_json());
  const Json aero = read_json_file(std::string(MPVC_DATA_DIR) + "/aerothermo.json");
  CHECK(AeroParams::from_json(aero).to_json() == AeroParams{}.to_json());

  // partial overrides keep the other defaults
  const TrussGroundStructure c = TrussGroundStructure::from_json(Json{{"c", 12.0}});
  CHECK(c.c == 12.0);
  CHECK(c.members.size() == 10);
  CHECK(AeroParams::from_json(Json{{"N", 12}}).N == 12);
  CHECK_THROWS_AS(TrussGroundStructure::from_json(Json{{"c", "ten"}}), InputError);
  CHECK_THROWS_AS(AeroParams::from_json(Json{{"N", "many"}}), InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/fixture.json"), InputError);
}

TEST_CASE("counterexample families") {
  const auto ce = counterexamples();
  REQUIRE(ce.size() == 3);
  for (const auto& c : ce) {
    for (double t : {1e-1, 1e-2, 1e-3}) {
      const CertifiedPoint pt = c.family(t);
      CHECK(pt.x.size() == 2);
      CHECK(pt.nu == 0.0);
    }
    CHECK(c.limit.isZero());
  }
}
