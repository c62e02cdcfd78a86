#include <cmath>
#include <sstream>

#include "nash/errors.hpp"
#include "nash/solver.hpp"
#include "solver_common.hpp"

namespace nash {

namespace {

constexpr double kLineSearchTol = 1e-8;

}  // namespace

double merit_xi(const Game& game, const Point& x) {
  return residual_theta(game, x).squaredNorm();
}

Trace algorithm1(const Game& game, const Point& x0, const SolverConfig& cfg) {
  detail::check_start(game, x0, cfg);
  const detail::OracleScope scope;
  Trace trace;
  trace.algorithm = to_string(Algorithm::kAlg1);
  const VectorMap theta = [&game](const Point& p) { return residual_theta(game, p); };

  Point x = x0;
  double lambda = 0.0;
  int k = 0;
  for (;; ++k) {
    const Vector th = theta(x);
    const auto& rec = trace.add(x, th, lambda, 0.0, Event::kNone, cfg.eps_k(k));
    if (rec.residual_norm <= cfg.eps) {
      trace.status = Status::kConverged;
      break;
    }
    if (k >= cfg.max_iters) {
      trace.status = Status::kMaxIters;
      break;
    }
    Vector delta;
    try {
      delta = newton_direction(th, fd_jacobian(theta, x));
    } catch (const SingularJacobian& e) {
      std::ostringstream os;
      os << e.what() << " at iterate " << k << ", x = " << detail::format_point(x);
      throw SingularJacobian(os.str());
    }
    const double t = line_search_residual(theta, x, delta, kLineSearchTol,
                                          cfg.eps_k(k));
    if (t == 0.0) {
      trace.status = Status::kMaxIters;
      break;
    }
    const Vector step = t * delta;
    lambda = step.norm();
    x += step;
    if (!game.box().contains(x)) {
      trace.add(x, theta(x), lambda, 0.0, Event::kDivergenceDetected,
                cfg.eps_k(k + 1));
      trace.status = Status::kDiverged;
      ++k;
      break;
    }
  }
  trace.iterations = k;
  trace.final_point = x;
  trace.last_iterate = x;
  trace.oracle_calls = scope.elapsed();
  return trace;
}

namespace {

Trace smoothing_newton(const Game& game, const Point& x0,
                       const SolverConfig& cfg, bool always_regularize,
                       const RegNewtonObserver& observer) {
  detail::check_start(game, x0, cfg);
  const detail::OracleScope scope;
  Trace trace;
  trace.algorithm =
      to_string(always_regularize ? Algorithm::kRegNewton : Algorithm::kAlg5);

  SmoothedGame smoothed = detail::make_smoothed(game, cfg);
  const double L = game.max_lipschitz();
  const int m = game.players();
  int s = 0;
  double lambda = 0.0;
  Point x = x0;
  int k = 0;
  for (;; ++k) {
    const VectorMap theta_s = [&smoothed](const Point& p) {
      return smoothed.Phi_grad_vector(p);
    };
    const Vector theta = theta_s(x);
    const double d = smoothed.set().diameter();
    const double res_norm =
        trace.add(x, theta, lambda, d, Event::kNone, cfg.eps_k(s)).residual_norm;
    if (detail::at_diameter_floor(d, cfg)) {
      if (detail::finish_with_witness(game, smoothed, x, lambda, cfg.eps_k(s),
                                      cfg, trace)) {
        break;
      }
      if (res_norm <= cfg.eps) {
        trace.status = Status::kConverged;
        trace.final_point = x;
        break;
      }
    }
    if (k >= cfg.max_iters) {
      trace.status = Status::kMaxIters;
      break;
    }

    const Matrix jac = smoothed.Phi_hessian(x);
    Vector step;
    bool stepped = false;
    if (!always_regularize) {
      try {
        Vector delta = newton_direction(theta, jac);
        // The smoothed model is only informative on the scale of D.
        if (delta.norm() > d) delta *= d / delta.norm();
        const double t =
            line_search_residual(theta_s, x, delta, kLineSearchTol, cfg.eps_k(k));
        if (t > 0.0) {
          step = t * delta;
          stepped = true;
        }
      } catch (const SingularJacobian&) {
      }
    }
    if (!stepped) {
      const double L_s = L / d;
      const Matrix jac_reg = clip_spectral_norm(jac, L_s) +
                             2.0 * L_s * Matrix::Identity(m, m);
      if (observer) observer(k, x, jac_reg, L_s);
      const Vector delta = jac_reg.partialPivLu().solve(-theta);
      const VectorMap reg = regularized_map(theta_s, L_s, x);
      const double t =
          line_search_residual(reg, x, delta, kLineSearchTol, cfg.eps_k(k));
      step = t * delta;
    }
    lambda = step.norm();
    x += step;
    if (!game.box().contains(x)) {
      trace.add(x, theta_s(x), lambda, d, Event::kDivergenceDetected, cfg.eps_k(s));
      trace.status = Status::kDiverged;
      ++k;
      break;
    }
    if (!detail::at_diameter_floor(d, cfg) &&
        check_step_diameter(lambda, d, cfg.eps_k(s), 2)) {
      trace.add(x, theta_s(x), lambda, d, Event::kShrink, cfg.eps_k(s));
      smoothed = smoothed.with_radius(smoothed.set().radius * cfg.shrink_rho);
      ++s;
    }
  }
  trace.iterations = k;
  if (trace.final_point.size() == 0) trace.final_point = x;
  if (trace.last_iterate.size() == 0) trace.last_iterate = x;
  trace.oracle_calls = scope.elapsed();
  return trace;
}

}  // namespace

Trace algorithm5(const Game& game, const Point& x0, const SolverConfig& cfg) {
  return smoothing_newton(game, x0, cfg, false, {});
}

Trace reg_newton(const Game& game, const Point& x0, const SolverConfig& cfg,
                 const RegNewtonObserver& observer) {
  return smoothing_newton(game, x0, cfg, true, observer);
}

Trace solve(const Game& game, const Point& x0, const SolverConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kAlg1: return algorithm1(game, x0, cfg);
    case Algorithm::kExactCd: return exact_coordinate_descent(game, x0, cfg);
    case Algorithm::kAlg2: return algorithm2(game, x0, cfg);
    case Algorithm::kAlg3: return algorithm3(game, x0, cfg);
    case Algorithm::kAlg4: return algorithm4(game, x0, cfg);
    case Algorithm::kAlg5: return algorithm5(game, x0, cfg);
    case Algorithm::kRegNewton: return reg_newton(game, x0, cfg);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace nash
