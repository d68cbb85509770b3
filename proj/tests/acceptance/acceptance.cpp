// End-to-end acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail 3,4]
//
// Exit status is 0 when the set of failing criteria equals the expected set
// (empty by default), so a regression and an unexpected pass both show up.

#include "mpvc/driver.hpp"
#include "mpvc/grid.hpp"
#include "mpvc/io.hpp"
#include "mpvc/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

using namespace mpvc;

namespace {

constexpr Scheme kSchemes[] = {Scheme::Global, Scheme::Local, Scheme::LShaped, Scheme::Nonsmooth};

// Every driver trace produced along the way, for the Algorithm 1 audit.
struct TraceAudit {
  int traces = 0;
  int violations = 0;
  std::string first;

  void add(const MpvcProblem& p, const DriverConfig& cfg, const DriverResult& r, const std::string& what) {
    ++traces;
    const auto& rec = r.trace.records;
    std::string bad;
    if (rec.empty() || rec.size() > 9) bad = "outer iterations " + std::to_string(rec.size());
    for (std::size_t k = 1; k < rec.size() && bad.empty(); ++k)
      if (rec[k].t != 0.1 * rec[k - 1].t) bad = "t_{k+1} != 0.1 t_k at k=" + std::to_string(k);
    const bool feasible = max_vio(p, r.x) <= cfg.tol;
    const bool exit_ok = r.trace.reason == Termination::FeasibilityReached
                             ? feasible
                             : !feasible && !rec.empty() && rec.back().t * cfg.sigma < cfg.t_min;
    if (bad.empty() && !exit_ok) bad = "termination reason inconsistent with the loop condition";
    if (!bad.empty()) {
      if (violations++ == 0) first = what + ": " + bad;
    }
  }
};

TraceAudit audit;

struct Line {
  int id;
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1 ----------------------------------------------------------------------

Line kernel_suite() {
  std::ostringstream d;
  bool ok = true;
  const double th = std::max({std::abs(theta(1) - 1), std::abs(theta(-1) - 1), std::abs(theta_prime(1) - 1),
                              std::abs(theta_prime(-1) + 1)});
  ok = ok && th <= 1e-12;
  const double h = 1e-5;
  double second = 0.0;
  for (double s : {-1.0, 1.0}) {  // one-sided, second order
    const double dd = -s * h;
    second = std::max(second, std::abs((3 * theta_prime(s) - 4 * theta_prime(s + dd) + theta_prime(s + 2 * dd)) / (2 * -dd)));
  }
  ok = ok && second <= 1e-6;

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(-3.0, 3.0), T(0.01, 2.0);
  double jump = 0.0;
  const double e = 1e-13;
  for (int i = 0; i < 1000; ++i) {
    const double t = T(rng), G = U(rng);
    const KernelEval a = phi_ks(G, t - G + e, t), b = phi_ks(G, t - G - e, t);
    jump = std::max({jump, std::abs(a.value - b.value), std::abs(a.dG - b.dG), std::abs(a.dH - b.dH)});
    for (double sgn : {-1.0, 1.0}) {
      const KernelEval c = phi_su(G + e, G - sgn * t, t), dd = phi_su(G - e, G - sgn * t, t);
      jump = std::max({jump, std::abs(c.value - dd.value), std::abs(c.dG - dd.dG), std::abs(c.dH - dd.dH)});
    }
  }
  ok = ok && jump <= 1e-10;

  const auto p = std::make_shared<const MpvcProblem>(academic());
  std::uniform_real_distribution<double> X(-3.0, 8.0);
  double grad = 0.0;
  for (Scheme s : kSchemes) {
    const double t = 0.7;
    const Nlp nlp = regularize(p, s, t);
    for (int done = 0; done < 100;) {
      const Vector x = (Vector(2) << X(rng), X(rng)).finished();
      const Vector G = p->G(x).values, H = p->H(x).values;
      bool near = false;
      for (int i = 0; i < 2; ++i) {
        if (s == Scheme::Local) near = near || std::abs(std::abs(G[i] - H[i]) - t) < 1e-4;
        if (s == Scheme::LShaped) near = near || std::abs(G[i] + H[i] - t) < 1e-4;
      }
      if (near) continue;
      const Matrix J = nlp.ineq(x).jacobian;
      const Matrix fd = fd_jacobian([&](const Vector& z) { return nlp.ineq(z).values; }, x);
      grad = std::max(grad, (J - fd).cwiseAbs().maxCoeff() / (1.0 + J.cwiseAbs().maxCoeff()));
      ++done;
    }
  }
  ok = ok && grad <= 1e-6;
  d << "theta endpoint error " << fmt("%.1e", th) << " (<=1e-12), theta''(+-1) " << fmt("%.1e", second)
    << " (<=1e-6), branch jump " << fmt("%.1e", jump) << " (<=1e-10), kernel gradient rel. error "
    << fmt("%.1e", grad) << " (<=1e-6, 4x100 points)";
  return {1, ok, d.str()};
}

// --- 2 ----------------------------------------------------------------------

Line counterexample_oracles() {
  std::ostringstream d;
  bool ok = true;
  const auto ce = counterexamples();
  int certified = 0, total = 0;
  double worst = 0.0;
  for (const auto& c : ce) {
    const auto p = std::make_shared<const MpvcProblem>(c.problem);
    for (double t : {1e-1, 1e-2, 1e-3}) {
      const CertifiedPoint pt = c.family(t);
      const Nlp nlp = regularize(p, c.scheme, t);
      const Vector lambda = (Vector(2) << pt.nu, pt.delta).finished();
      const EpsCheck chk = check_eps_stationary(nlp, pt.x, lambda, Vector(0), pt.eps);
      ++total;
      certified += chk.holds;
      worst = std::max(worst, chk.breakdown.epsilon() - pt.eps);
    }
  }
  ok = ok && certified == total;
  std::string verdicts;
  for (const auto& c : ce) {
    const MpvcMultipliers m{Vector(0), Vector(0), Vector::Constant(1, c.limit_etaH), Vector::Constant(1, c.limit_etaG)};
    const Grade g = classify(c.problem, c.limit, m).grade;
    ok = ok && g == c.expected_grade;
    verdicts += (verdicts.empty() ? "" : ", ") + to_string(g);
  }
  ok = ok && verdicts == "NotWeak, Weak, NotWeak";
  d << certified << "/" << total << " family points certified (worst excess " << fmt("%.1e", worst)
    << "), limit verdicts: " << verdicts << " (expected NotWeak, Weak, NotWeak)";
  return {2, ok, d.str()};
}

// --- 3 and 5 ------------------------------------------------------------------

struct GridOutcome {
  std::map<std::string, int> counts;
  int starts = 0;
  int converged = 0;
  int graded_ok = 0;  // converged runs meeting the promised grade
};

const char* label(std::optional<Scheme> s) { return s ? (s == Scheme::Global ? "global" : s == Scheme::Local ? "local" : s == Scheme::LShaped ? "lshaped" : "nonsmooth") : "none"; }

GridOutcome run_academic_grid(std::optional<Scheme> scheme, int jobs) {
  const auto p = std::make_shared<const MpvcProblem>(academic());
  const auto starts = GridSpec{}.points();
  DriverConfig cfg;
  if (scheme) cfg.scheme = *scheme;
  const Grade promised = scheme == Scheme::LShaped ? Grade::M : Grade::T;

  std::vector<GridRow> rows(starts.size());
  std::vector<char> graded(starts.size(), 0);
  std::vector<std::thread> pool;
  std::vector<TraceAudit> audits(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < starts.size(); i += jobs) {
        const DriverResult r = scheme ? solve_mpvc(p, cfg, starts[i]) : solve_direct(p, starts[i]);
        GridRow& row = rows[i];
        row.x = r.x;
        row.bucket = bucket_point(*p, r.x);
        row.converged = scheme ? r.trace.reason == Termination::FeasibilityReached : !r.trace.inner_failure;
        if (scheme) audits[w].add(*p, cfg, r, std::string("academic/") + label(scheme));
        if (row.converged && r.last_nlp && r.last_solution) {
          const double tau = 1e-4;
          const MpvcMultipliers m = recover_mpvc_multipliers(*r.last_nlp, *r.last_solution, tau);
          graded[i] = classify(*p, r.x, m, tau).grade >= promised;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& a : audits) {
    audit.traces += a.traces;
    if (a.violations && !audit.violations) audit.first = a.first;
    audit.violations += a.violations;
  }

  GridOutcome out;
  for (const auto& kp : p->known_points()) out.counts[kp.label] = 0;
  out.counts["neither"] = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ++out.counts[rows[i].bucket];
    ++out.starts;
    out.converged += rows[i].converged;
    out.graded_ok += rows[i].converged && graded[i];
  }
  return out;
}

std::string counts_text(const GridOutcome& g) {
  return std::to_string(g.counts.at("x_circ")) + "/" + std::to_string(g.counts.at("x_star")) + "/" +
         std::to_string(g.counts.at("x_plus")) + "/" + std::to_string(g.counts.at("neither"));
}

Line academic_grid(const std::map<std::string, GridOutcome>& g) {
  auto bucketed = [&](const std::string& s) {
    const GridOutcome& o = g.at(s);
    return double(o.starts - o.counts.at("neither")) / o.starts;
  };
  bool ok = true;
  ok = ok && bucketed("global") >= 0.99;
  const double circ = double(g.at("global").counts.at("x_circ")) / g.at("global").starts;
  ok = ok && circ >= 0.12;
  ok = ok && bucketed("lshaped") >= 0.97 && bucketed("nonsmooth") >= 0.97;
  ok = ok && bucketed("local") >= 0.90;
  int reg_neither = 0;
  for (const char* s : {"global", "local", "lshaped", "nonsmooth"})
    reg_neither = std::max(reg_neither, g.at(s).counts.at("neither"));
  const int direct_neither = g.at("none").counts.at("neither");
  const bool direct_ok = direct_neither > reg_neither;
  ok = ok && direct_ok;

  std::ostringstream d;
  d << "x_circ/x_star/x_plus/neither:";
  for (const char* s : {"global", "local", "lshaped", "nonsmooth", "none"}) d << ' ' << s << ' ' << counts_text(g.at(s));
  d << "; global bucketed " << fmt("%.1f%%", 100 * bucketed("global")) << " (>=99%), at x_circ "
    << fmt("%.1f%%", 100 * circ) << " (>=12%); lshaped " << fmt("%.1f%%", 100 * bucketed("lshaped"))
    << ", nonsmooth " << fmt("%.1f%%", 100 * bucketed("nonsmooth")) << " (>=97%); local "
    << fmt("%.1f%%", 100 * bucketed("local")) << " (>=90%); direct neither " << direct_neither
    << (direct_ok ? " > " : " NOT > ") << "max regularized neither " << reg_neither;
  return {3, ok, d.str()};
}

Line driver_limits(const std::map<std::string, GridOutcome>& g) {
  const GridOutcome& gl = g.at("global");
  const GridOutcome& ls = g.at("lshaped");
  const double fg = double(gl.graded_ok) / std::max(1, gl.converged);
  const double fl = double(ls.graded_ok) / std::max(1, ls.converged);
  const bool ok = fg >= 0.95 && fl >= 0.95;
  std::ostringstream d;
  d << "global grade>=T on " << gl.graded_ok << "/" << gl.converged << " converged runs (" << fmt("%.1f%%", 100 * fg)
    << "), lshaped grade>=M on " << ls.graded_ok << "/" << ls.converged << " (" << fmt("%.1f%%", 100 * fl)
    << "); tau = 1e-4, need >=95%";
  return {5, ok, d.str()};
}

// --- 4 ----------------------------------------------------------------------

Line ten_bar_truss() {
  const auto p = std::make_shared<const MpvcProblem>(ten_bar());
  const Vector x0 = ten_bar_initial_point();
  bool ok = true;
  std::ostringstream d;
  for (Scheme s : kSchemes) {
    DriverConfig cfg;
    cfg.scheme = s;
    const DriverResult r = solve_mpvc(p, cfg, x0);
    audit.add(*p, cfg, r, "ten_bar/" + to_string(s));
    const double fv = full_violation(*p, r.x);
    const int outer = static_cast<int>(r.trace.records.size());
    bool pass;
    if (s == Scheme::Nonsmooth) {
      pass = r.f <= 8.2;
    } else {
      pass = std::abs(r.f - 8.0) <= 1e-2 && fv <= 1e-6;
      if (s == Scheme::Global) pass = pass && std::abs(outer - 8) <= 1;
    }
    ok = ok && pass;
    d << (d.tellp() ? "; " : "") << to_string(s) << " f=" << fmt("%.4f", r.f) << " vio=" << fmt("%.1e", fv)
      << " outer=" << outer << (pass ? "" : " [out of bounds]");
  }
  d << " (need 8.0000+-1e-2, vio<=1e-6, global outer 8+-1; nonsmooth f<=8.2)";
  return {4, ok, d.str()};
}

// --- 6 ----------------------------------------------------------------------

Line aerothermo_runs() {
  const AeroParams ap;
  const auto p = std::make_shared<const MpvcProblem>(aerothermo(ap));
  const Vector z0 = aerothermo_initial_point(ap);
  bool ok = true;
  std::ostringstream d;
  double q_lshaped = NAN, q_direct = NAN;
  const double h_tol = 1e-3;  // m; the 1e-6 violation tolerance in the internal km unit
  for (int k = 0; k <= 4; ++k) {
    const bool direct = k == 4;
    DriverConfig cfg;
    if (!direct) cfg.scheme = kSchemes[k];
    const DriverResult r = direct ? solve_direct(p, z0) : solve_mpvc(p, cfg, z0);
    if (!direct) audit.add(*p, cfg, r, "aerothermo/" + to_string(cfg.scheme));
    const AeroTrajectory tr = aero_unpack(ap, r.x);
    const double fv = full_violation(*p, r.x);
    const double hf = tr.x.back().h, q = tr.x.back().Q;
    const Vector prod = p->G(r.x).values.cwiseProduct(p->H(r.x).values);
    const double max_prod = prod.maxCoeff();
    const bool pass = fv <= 1e-6 && hf <= ap.h_final_max + h_tol && std::isfinite(q) && q > 0 && max_prod <= 1e-6;
    ok = ok && pass;
    const std::string name = direct ? "direct" : to_string(cfg.scheme);
    if (cfg.scheme == Scheme::LShaped && !direct) q_lshaped = q;
    if (direct) q_direct = q;
    d << (d.tellp() ? "; " : "") << name << " Q_T=" << fmt("%.4f", q) << " vio=" << fmt("%.1e", fv)
      << " h_f=" << fmt("%.3f", hf) << " max GH=" << fmt("%.1e", max_prod) << (pass ? "" : " [out of bounds]");
  }
  const bool order = q_lshaped <= q_direct;
  ok = ok && order;
  d << "; lshaped Q_T " << (order ? "<=" : "NOT <=") << " direct";
  return {6, ok, d.str()};
}

// --- 7 ----------------------------------------------------------------------

Line algorithm_fidelity() {
  std::ostringstream d;
  d << audit.traces << " driver traces checked for t_{k+1} = 0.1 t_k, at most 9 outer iterations and a "
    << "consistent exit; " << audit.violations << " violations";
  if (audit.violations) d << " (first: " << audit.first << ")";
  return {7, audit.traces > 0 && audit.violations == 0, d.str()};
}

std::set<int> parse_ids(const std::string& s) {
  std::set<int> ids;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) ids.insert(std::stoi(tok));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) expected = parse_ids(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--expect-fail 3,4]\n";
      return 2;
    }
  }
  const int jobs = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

  std::vector<Line> lines;
  auto timed = [&](const std::function<Line()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Line l = fn();
    l.detail += " [" + fmt("%.1f", seconds_since(t0)) + " s]";
    lines.push_back(l);
    std::cout << "criterion " << l.id << ": " << (l.pass ? "PASS" : "FAIL") << " - " << l.detail << std::endl;
  };

  timed(kernel_suite);
  timed(counterexample_oracles);
  std::map<std::string, GridOutcome> grids;
  timed([&] {
    for (std::optional<Scheme> s : {std::optional{Scheme::Global}, std::optional{Scheme::Local},
                                    std::optional{Scheme::LShaped}, std::optional{Scheme::Nonsmooth},
                                    std::optional<Scheme>{}})
      grids[label(s)] = run_academic_grid(s, jobs);
    return academic_grid(grids);
  });
  timed(ten_bar_truss);
  timed([&] { return driver_limits(grids); });
  timed(aerothermo_runs);
  timed(algorithm_fidelity);

  std::set<int> failed;
  for (const auto& l : lines)
    if (!l.pass) failed.insert(l.id);
  std::cout << "failing criteria:";
  for (int id : failed) std::cout << ' ' << id;
  if (failed.empty()) std::cout << " none";
  std::cout << std::endl;
  if (failed != expected) {
    std::cout << "failing set differs from the expected set:";
    for (int id : expected) std::cout << ' ' << id;
    if (expected.empty()) std::cout << " (none)";
    std::cout << std::endl;
    return 1;
  }
  return 0;
}
