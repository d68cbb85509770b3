#pragma once

#include "mpvc/regularize.hpp"
#include "mpvc/stationarity.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <string>
#include <vector>

namespace mpvc {

// --- academic two-variable truss --------------------------------------------

// f = 4x1 + 2x2, H = x, G = (5 sqrt2 - x1 - x2, 5 - x1 - x2).
// Known points: x_circ = (0,0), x_star = (0,5), x_plus = (0, 5 sqrt2).
MpvcProblem academic();

// --- ten-bar truss -----------------------------------------------------------

struct TrussGroundStructure {
  std::vector<std::array<double, 2>> nodes;
  std::vector<int> fixed_nodes;
  std::vector<std::array<int, 2>> members;
  int load_node = 0;
  std::array<double, 2> load{0.0, 0.0};
  double E = 1.0;
  double c = 10.0;
  double a_bar = 100.0;
  double sigma_bar = 1.0;

  static TrussGroundStructure ten_bar_default();
  static TrussGroundStructure from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int free_dofs() const;
  double length(int i) const;
  Vector gamma(int i) const;  // -dir at the start node's free dofs, +dir at the end node's
  Vector load_vector() const;
  Matrix stiffness(const Vector& a) const;  // sum a_i (E/l_i) gamma_i gamma_i'
  double stress(const Vector& u, int i) const;  // E gamma_i'u / l_i
};

// Variables [a (members) | u (free dofs)]. Equalities K(a)u = f; inequalities
// f'u <= c and a_i <= a_bar (a_i >= 0 enters through H_i = a_i);
// G_i = sigma_i^2 - sigma_bar^2. Objective: volume sum l_i a_i.
MpvcProblem ten_bar(const TrussGroundStructure& truss = TrussGroundStructure::ten_bar_default());

// a = 1, u = K(1)^{-1} f. Throws SetupError when K is singular.
Vector ten_bar_initial_point(const TrussGroundStructure& truss = TrussGroundStructure::ten_bar_default());

// --- aerothermodynamic re-entry ----------------------------------------------

// SI unless noted. Internally v [km/s], h [km], T [1e6 N], time [100 s].
struct AeroParams {
  int N = 30;  // time nodes 0..N-1, step tau_f/(N-1)
  double rho0 = 1.225, Hs = 7254.0;
  double g0 = 9.80665, RE = 6371e3;
  double S = 305.0, CD0 = 0.017, k = 2.0, mass = 51000.0;
  double Ke = 1.7415e-4, Rn = 0.6;
  double Qrad_max = 1.7;  // W/cm^2
  double CL_min = 0.01, CL_max = 0.18326;
  double T_max = 1e7;
  double Qc_max = 0.5;    // W/cm^2
  double h_final_max = 500.0;
  double tf_min = 10.0, tf_max = 2000.0;
  double v0 = 200.0, gamma0 = 0.0, h0 = 12000.0, Q0 = 0.0;  // J/cm^2 for Q0
  // Safeguards keeping iterates in the model's domain.
  double v_min = 50.0, gamma_max = 1.5, h_min = 0.0;
  double CL_guess = 0.1;

  static AeroParams from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  struct AeroLayout layout() const;
};

struct AeroState {
  double v, gamma, h, Q;  // SI, Q in J/cm^2
};

struct AeroControl {
  double CL, T, Qc;  // T in N, Qc in W/cm^2
};

// Stagnation heat rate K_e sqrt(rho/R_n) v^3, in W/cm^2.
double heat_rate(const AeroParams& p, double v, double h);

// Right-hand side (vdot, gammadot, hdot, Q_T dot) in SI / (W/cm^2).
std::array<double, 4> aero_rhs(const AeroParams& p, const AeroState& x, const AeroControl& u);

// Implicit Euler transcription with free final time. With K = N-1 intervals the layout is
// [x_1..x_K (v,gamma,h,Q_T) | u_0..u_K (C_L,T,Qc) | tau_f], scaled units.
MpvcProblem aerothermo(const AeroParams& params = {});

// Layout helpers and conversions for the decision vector.
struct AeroLayout {
  int K;  // intervals
  int n() const { return 4 * K + 3 * (K + 1) + 1; }
  int state(int node, int comp) const { return 4 * (node - 1) + comp; }  // node >= 1
  int control(int node, int comp) const { return 4 * K + 3 * node + comp; }
  int tf() const { return n() - 1; }
};

struct AeroTrajectory {
  std::vector<double> time;  // s
  std::vector<AeroState> x;
  std::vector<AeroControl> u;
  double tf = 0.0;
};

AeroTrajectory aero_unpack(const AeroParams& p, const Vector& z);
Vector aero_pack(const AeroParams& p, const AeroTrajectory& traj);

// Forward simulation with C_L = CL_guess, no thrust, no cooling, until h reaches
// the landing altitude; sampled on the transcription grid.
Vector aerothermo_initial_point(const AeroParams& params = {});

// --- counterexample families -------------------------------------------------

struct CertifiedPoint {
  Vector x;
  double nu;     // multiplier of -H <= 0
  double delta;  // multiplier of the kernel row
  double eps;
};

struct Counterexample {
  std::string name;
  MpvcProblem problem;
  Scheme scheme;
  CertifiedPoint (*family)(double t);
  Vector limit;                       // x as t -> 0
  double limit_etaG, limit_etaH;      // limiting MPVC multipliers
  Grade expected_grade;
};

std::vector<Counterexample> counterexamples();

}  // namespace mpvc
