// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. An optional argument names the nash
// executable for the command-line determinism check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "nash/builtin_games.hpp"
#include "nash/solver.hpp"
#include "nash/steklov.hpp"

using namespace nash;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Point pt(double a, double b) {
  Point x(2);
  x << a, b;
  return x;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac1() {
  SolverConfig cfg;
  const Game g = builtin("cycle2");
  const Trace cd = exact_coordinate_descent(g, pt(1, 1), cfg);
  bool orbit = true;
  for (const auto& r : cd.records) {
    orbit = orbit && std::abs(std::abs(r.x[0]) - 1) < 1e-12 && std::abs(std::abs(r.x[1]) - 1) < 1e-12;
  }
  const Trace a2 = algorithm2(g, pt(1, 1), cfg);
  const double dist = a2.final_point.norm();
  Outcome o;
  o.pass = cd.status == Status::kCycleDetected && cd.cycle_period == 4 && orbit &&
           a2.converged() && dist <= 1e-3;
  o.detail = "exact_cd " + to_string(cd.status) + " period " +
             (cd.cycle_period ? std::to_string(*cd.cycle_period) : "-") +
             (orbit ? " on (+-1,+-1)" : " off orbit") + "; alg2 " + to_string(a2.status) +
             " at distance " + num(dist);
  return o;
}

Outcome ac2() {
  const Game g = builtin("diverge2");
  SolverConfig cfg;
  const Trace cd = exact_coordinate_descent(g, pt(1, 1), cfg);
  SolverConfig longer = cfg;
  longer.divergence_window = 12;
  const Trace cd_long = exact_coordinate_descent(g, pt(1, 1), longer);
  // Step distances over one sweep, s_k = |h_k - h_{k-2}|, compared a sweep apart.
  const auto& h = cd_long.records;
  const int n = static_cast<int>(h.size());
  double worst = 0.0;
  double mean_ratio = 0.0;
  for (int k = n - 10; k < n; ++k) {
    const double s = (h[k].x - h[k - 2].x).norm();
    const double s_prev = (h[k - 2].x - h[k - 4].x).norm();
    const double ratio = s / s_prev;
    worst = std::max(worst, std::abs(ratio - 1.5));
    mean_ratio += ratio / 10;
  }

  const Trace a2 = algorithm2(g, pt(1, 1), cfg);
  bool swapped = false;
  double log_sum = 0.0;
  int count = 0;
  double prev = 0.0;
  for (const auto& r : a2.records) {
    if (r.event == Event::kSwap) {
      swapped = true;
      prev = r.x.norm();
      continue;
    }
    if (!swapped || r.event == Event::kAverage) continue;
    if (r.x.norm() < 40 * r.lambda) break;
    log_sum += std::log(r.x.norm() / prev);
    ++count;
    prev = r.x.norm();
  }
  const double contraction = count ? std::exp(log_sum / count) : NAN;
  Outcome o;
  o.pass = cd.status == Status::kDiverged && cd_long.status == Status::kDiverged && n >= 14 &&
           worst <= 0.01 && swapped && a2.converged() && a2.final_point.norm() <= 1e-3 &&
           std::abs(contraction - 2.0 / 3.0) <= 0.05;
  o.detail = "exact_cd " + to_string(cd.status) + ", growth ratio " + num(mean_ratio) +
             " (max dev " + num(worst) + "); alg2 swap " + (swapped ? "yes" : "no") +
             ", contraction " + num(contraction) + " over " + std::to_string(count) +
             " sweeps, final distance " + num(a2.final_point.norm());
  return o;
}

Outcome ac3() {
  const Game g = builtin("dm-maxfun");
  const double v0 = evaluate(g, 0, pt(0, 0));
  const double v1 = evaluate(g, 0, pt(-0.5, 0.5));
  Outcome o;
  o.pass = v0 == 0.0 && v1 == -0.5 && evaluate(g, 1, pt(0, 0)) == 0.0 &&
           evaluate(g, 1, pt(-0.5, 0.5)) == -0.5;
  o.detail = "f(0,0) = " + num(v0) + ", f(-1/2,1/2) = " + num(v1);
  return o;
}

Outcome ac4() {
  const Game g = builtin("diverge2");
  SolverConfig cfg;
  cfg.eps = 1e-10;
  const Trace t = algorithm1(g, pt(1, 1), cfg);
  const VectorMap theta = [&g](const Point& x) { return residual_theta(g, x); };
  const Vector step = newton_direction(theta(pt(1, 1)), fd_jacobian(theta, pt(1, 1)));
  const double step_err = (step - pt(-1, -1)).cwiseAbs().maxCoeff();
  Outcome o;
  o.pass = t.converged() && t.iterations <= 3 && t.final_residual() <= 1e-10 && step_err <= 1e-6;
  o.detail = std::to_string(t.iterations) + " iterations, residual " + num(t.final_residual()) +
             ", first step error " + num(step_err);
  return o;
}

Game abs_x1_game() {
  std::vector<PlayerLoss> losses(2);
  Vector e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  losses[0].pieces = {{e1, 0.0}, {-e1, 0.0}};
  losses[1].pieces = {{e2, 0.0}, {-e2, 0.0}};
  return Game(losses, Box::uniform(2, -100, 100), "abs");
}

Outcome ac5() {
  const SmoothedGame sg(abs_x1_game(), AveragingSet(SetKind::kCube, 0.5, 2), 64);
  const double v = sg.phi(0, pt(0, 0));
  const double g0 = sg.phi_grad_own(0, pt(0, 0));
  const double g1 = sg.phi_grad_own(0, pt(1, 0));
  Outcome o;
  o.pass = std::abs(v - 0.25) <= 1e-3 && std::abs(g0) <= 1e-10 && std::abs(g1 - 1) <= 1e-10;
  o.detail = "phi(0) = " + num(v) + ", phi'(0) = " + num(g0) + ", phi'(1) = " + num(g1);
  return o;
}

int level_for(const Game& g) { return g.players() > 2 ? 8 : 16; }

Outcome ac6() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(-5, 5);
  double worst = 0.0;
  int checked = 0;
  bool pass = true;
  for (const auto& name : builtin_names()) {
    const Game g = builtin(name);
    const int m = g.players();
    const AveragingSet set(SetKind::kCube, 0.5, m);
    const SmoothedGame sg(g, set, level_for(g));
    const double h = 1e-2 * set.diameter();
    for (int n = 0; n < 200; ++n) {
      Point x(m);
      for (int j = 0; j < m; ++j) x[j] = dist(rng);
      const int i = n % m;
      Point lo = x, hi = x;
      lo[i] -= h;
      hi[i] += h;
      const double fd = (sg.phi(i, hi) - sg.phi(i, lo)) / (2 * h);
      const double err = std::abs(sg.phi_grad_own(i, x) - fd);
      const double bound = lipschitz_phi_grad(g.lipschitz(i), set) * h;
      worst = std::max(worst, err / bound);
      pass = pass && err <= bound;
      ++checked;
    }
  }
  Outcome o;
  o.pass = pass;
  o.detail = std::to_string(checked) + " points, max error/bound " + num(worst);
  return o;
}

Outcome ac7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-5, 5);
  double worst = -INFINITY;
  bool pass = true;
  int checked = 0;
  for (const auto& name : builtin_names()) {
    const Game g = builtin(name);
    const int m = g.players();
    const SmoothedGame sg(g, AveragingSet(SetKind::kCube, 0.5, m), level_for(g));
    for (int n = 0; n < 1000; ++n) {
      Point x(m);
      for (int j = 0; j < m; ++j) x[j] = dist(rng);
      const int i = n % m;
      Point a = x, b = x, mid = x;
      a[i] = dist(rng);
      b[i] = dist(rng);
      mid[i] = 0.5 * (a[i] + b[i]);
      const double fa = sg.phi(i, a), fb = sg.phi(i, b), fm = sg.phi(i, mid);
      const double scale = 1.0 + std::abs(fa) + std::abs(fb);
      const double excess = (fm - 0.5 * (fa + fb)) / scale;
      worst = std::max(worst, excess);
      pass = pass && excess <= 1e-10;
      ++checked;
    }
  }
  Outcome o;
  o.pass = pass;
  o.detail = std::to_string(checked) + " triples, max scaled excess " + num(worst);
  return o;
}

Outcome ac8() {
  struct Case {
    double L;
    AveragingSet set;
    double grad;
    double hess;
  };
  const Case cases[] = {
      {2.0, AveragingSet(SetKind::kCube, 0.5, 1), 2.0, 4.0},
      {1.0, AveragingSet(SetKind::kBall, 0.25, 2), 2.0, 8.0},
      {3.0, AveragingSet(SetKind::kCube, 0.5, 4), 1.5, 1.5},
      {5.0, AveragingSet(SetKind::kBall, 2.0, 3), 1.25, 0.625},
      {0.5, AveragingSet(SetKind::kBall, 0.125, 5), 2.0, 16.0},
  };
  bool pass = true;
  for (const auto& c : cases) {
    pass = pass && lipschitz_phi_grad(c.L, c.set) == c.grad &&
           lipschitz_Phi_hess(c.L, c.set) == c.hess;
  }
  return {pass, "5 parameter sets, exact equality"};
}

Outcome ac9() {
  const Game g = builtin("abs-contract");
  SolverConfig cfg;
  bool pass = true;
  std::ostringstream detail;
  for (Algorithm a : {Algorithm::kAlg4, Algorithm::kAlg5, Algorithm::kRegNewton}) {
    cfg.algorithm = a;
    const auto t0 = std::chrono::steady_clock::now();
    const Trace t = solve(g, pt(2, 2), cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double dist = t.final_point.norm();
    const double res = subgradient_residuals(g, t.final_point).maxCoeff();
    // Shrink witnesses: order 1 for algorithm 4, order 2 for the Newton methods.
    const int order = a == Algorithm::kAlg4 ? 1 : 2;
    bool rule = true;
    int shrinks = 0;
    double last_ratio = INFINITY;
    for (const auto& r : t.records) {
      if (r.event != Event::kShrink) continue;
      ++shrinks;
      rule = rule && check_step_diameter(r.lambda, r.diameter, r.eps_k, order);
      last_ratio = order == 1 ? r.lambda / r.diameter : r.lambda / (r.diameter * r.diameter);
    }
    const bool ok = t.converged() && dist <= 1e-2 && res == 0.0 && rule && shrinks > 0 &&
                    secs <= 60.0;
    pass = pass && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << to_string(a) << " dist " << num(dist) << " res " << num(res) << " shrinks "
           << shrinks << " last ratio " << num(last_ratio) << " " << num(secs) << "s";
  }
  return {pass, detail.str()};
}

Outcome ac10() {
  const Game g = builtin("abs-contract");
  SolverConfig cfg;
  std::mt19937_64 rng(10);
  std::normal_distribution<double> normal;
  bool pass = true;
  int iterates = 0;
  double worst_lo = INFINITY, worst_hi = -INFINITY;
  const Trace t = reg_newton(g, pt(2, 2), cfg,
                             [&](int, const Point&, const Matrix& jac, double L_s) {
                               ++iterates;
                               for (int n = 0; n < 100; ++n) {
                                 Vector z(2);
                                 z << normal(rng), normal(rng);
                                 const double q = z.dot(jac * z);
                                 const double s = L_s * z.squaredNorm();
                                 worst_lo = std::min(worst_lo, q / s);
                                 worst_hi = std::max(worst_hi, q / s);
                                 pass = pass && q >= s - 1e-8 * s && q <= 3 * s + 1e-8 * s;
                               }
                             });
  return {pass && iterates > 0 && t.converged(),
          std::to_string(iterates) + " iterates, form/(L_s|z|^2) in [" + num(worst_lo) + ", " +
              num(worst_hi) + "]"};
}

Outcome ac11() {
  const Game g = builtin("abs-contract");
  const AveragingSet set(SetKind::kCube, 0.05, 2);
  const auto report = certify_epsD(g, pt(0.01, -0.01), set, make_quadrature(set, 8, 0), 1e-9);
  bool witness_ok = false;
  std::string where = "none";
  if (report.epsD_certificate) {
    const Point& w = report.epsD_certificate->witness;
    witness_ok = set.contains(w - pt(0.01, -0.01));
    for (int i = 0; i < 2; ++i) {
      witness_ok = witness_ok && subgradient_interval(g, i, w).distance_to_zero() <= 1e-9;
    }
    where = "(" + num(w[0]) + ", " + num(w[1]) + ")";
  }
  bool zero = true;
  int points = 0;
  for (const auto& name : builtin_names()) {
    for (const auto& x : known_equilibria(name)) {
      const auto rep = certify_equilibrium(builtin(name), x, 1e-9);
      zero = zero && rep.per_player_residual.cwiseAbs().maxCoeff() == 0.0;
      ++points;
    }
  }
  return {witness_ok && zero && points > 0,
          "witness " + where + "; " + std::to_string(points) + " known equilibria with zero residual"};
}

Outcome ac12(const std::string& exe) {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "nash_acceptance_determinism";
  fs::remove_all(root);
  auto compare = [](const fs::path& a, const fs::path& b, int& files) {
    bool same = true;
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      same = same && fs::exists(b / e.path().filename()) &&
             slurp(e.path()) == slurp(b / e.path().filename());
    }
    return same;
  };
  cli::RunConfig c;
  c.game = "builtin:abs-contract";
  c.algorithms = {Algorithm::kAlg2, Algorithm::kAlg4, Algorithm::kAlg5};
  c.multistart = 2;
  c.solver.seed = 12;
  std::ostringstream sink;
  for (const char* run : {"a", "b"}) {
    c.trace_dir = (root / run).string();
    cli::run(c, sink, sink);
  }
  int files = 0;
  bool same = compare(root / "a", root / "b", files);
  std::string detail = std::to_string(files) + " in-process traces identical";
  if (!exe.empty()) {
    int bin_files = 0;
    bool launched = true;
    for (const char* run : {"c", "d"}) {
      const std::string cmd = "\"" + exe +
                              "\" solve --game builtin:cycle2 --alg exact_cd,alg2,alg4 "
                              "--multistart 2 --seed 5 --trace-dir \"" +
                              (root / run).string() + "\" > /dev/null 2>&1";
      launched = launched && std::system(cmd.c_str()) != -1;
    }
    same = same && launched && compare(root / "c", root / "d", bin_files) && bin_files == 6;
    detail += ", " + std::to_string(bin_files) + " CLI traces identical";
  }
  return {same && files == 6, detail};
}

Outcome ac13() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(-3, 3);
  Point x0(5);
  for (int j = 0; j < 5; ++j) x0[j] = dist(rng);
  SolverConfig cfg;
  const Trace t = algorithm1(builtin("quad-m"), x0, cfg);
  std::vector<double> ratios;
  for (std::size_t k = 1; k < t.records.size() && k <= 5; ++k) {
    ratios.push_back(t.records[k].residual_norm / t.records[k - 1].residual_norm);
  }
  bool decreasing = !ratios.empty();
  for (std::size_t k = 1; k < ratios.size(); ++k) decreasing = decreasing && ratios[k] < ratios[k - 1];
  const bool below = !ratios.empty() && ratios.back() < 1e-3;
  std::string list;
  for (double r : ratios) list += (list.empty() ? "" : ", ") + num(r);
  return {t.converged() && decreasing && below && t.iterations <= 5,
          std::to_string(t.iterations) + " iterations, ratios [" + list + "]"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cycling and averaging on cycle2", ac1},
      {"divergence and swap on diverge2", ac2},
      {"dm-maxfun values", ac3},
      {"Newton exactness on diverge2", ac4},
      {"smoothing of |x1|", ac5},
      {"phi gradient matches finite differences", ac6},
      {"phi convex in own coordinate", ac7},
      {"Lipschitz formulas", ac8},
      {"nonsmooth convergence on abs-contract", ac9},
      {"regularized step matrix bounds", ac10},
      {"certificate soundness", ac11},
      {"byte-identical traces", [&exe] { return ac12(exe); }},
      {"fast residual decay on quad-m", ac13},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("AC%02zu %s  %s: %s\n", n + 1, o.pass ? "PASS" : "FAIL",
                criteria[n].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
