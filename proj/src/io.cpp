#include "mpvc/io.hpp"

#include "mpvc/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mpvc {

namespace {
// JSON has no infinities; they become null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
}  // namespace

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a JSON array of numbers");
  Vector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError("expected a JSON array of numbers");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

Json to_json(const IndexSets& s) {
  return {{"I_g", s.I_g},         {"I_plus0", s.I_plus0}, {"I_plusminus", s.I_plusminus},
          {"I_0plus", s.I_0plus}, {"I_00", s.I_00},       {"I_0minus", s.I_0minus},
          {"I_infeasible", s.I_infeasible}, {"tau_act", s.tau_act}};
}

Json to_json(const MpvcMultipliers& m) {
  return {{"lambda", to_json(m.lambda)}, {"mu", to_json(m.mu)}, {"etaH", to_json(m.etaH)},
          {"etaG", to_json(m.etaG)}};
}

Json to_json(const StationarityReport& r) {
  return {{"grade", to_string(r.grade)},
          {"stationarity_residual", number(r.stationarity_residual)},
          {"worst_sign_violation", number(r.worst_sign_violation)},
          {"worst_support_violation", number(r.worst_support_violation)},
          {"feasibility", number(r.feasibility)},
          {"biactive_products", r.biactive_products},
          {"tau", r.tau},
          {"index_sets", to_json(r.sets)}};
}

Json to_json(const CqReport& r) {
  return {{"cq", r.cq_name}, {"holds", r.holds}, {"certificate", number(r.certificate)},
          {"tolerance", r.tolerance}, {"gradients", r.gradients}};
}

Json to_json(const NlpSolution& s) {
  return {{"x", to_json(s.x)},
          {"lambda", to_json(s.lambda)},
          {"mu", to_json(s.mu)},
          {"kkt_residual", number(s.kkt_residual)},
          {"comp_residual", number(s.comp_residual)},
          {"feas_residual", number(s.feas_residual)},
          {"epsilon_achieved", number(s.epsilon_achieved)},
          {"status", to_string(s.status)},
          {"iterations", s.iterations},
          {"elastic_steps", s.elastic_steps}};
}

Json to_json(const DriverTrace& t) {
  Json rec = Json::array();
  for (const auto& r : t.records)
    rec.push_back({{"k", r.k}, {"t", r.t}, {"f", r.f}, {"maxVio", number(r.max_vio)},
                   {"fullVio", number(r.full_violation)}, {"status", to_string(r.status)},
                   {"innerIters", r.inner_iterations}, {"eps", number(r.epsilon_achieved)},
                   {"eps_target", r.eps_target}});
  return {{"records", rec}, {"termination", to_string(t.reason)},
          {"inner_failure", t.inner_failure}, {"inner_failures", t.inner_failures}};
}

Vector parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (tok.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(tok);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + tok + "' in '" + text + "'");
    }
  }
  if (vals.empty()) throw UsageError("empty vector '" + text + "'");
  return Eigen::Map<Vector>(vals.data(), static_cast<int>(vals.size()));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace mpvc
