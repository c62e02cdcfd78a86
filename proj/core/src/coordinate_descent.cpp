#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "nash/best_response.hpp"
#include "nash/errors.hpp"
#include "nash/solver.hpp"
#include "solver_common.hpp"

namespace nash {

namespace {

int cycle_period_cap(const SolverConfig& cfg, int m) {
  return cfg.cycle_max_period > 0 ? cfg.cycle_max_period : 2 * m + 2;
}

}  // namespace

Trace exact_coordinate_descent(const Game& game, const Point& x0,
                               const SolverConfig& cfg) {
  detail::check_start(game, x0, cfg);
  const detail::OracleScope scope;
  const int m = game.players();
  Trace trace;
  trace.algorithm = to_string(Algorithm::kExactCd);

  Point x = x0;
  std::vector<Point> history{x};
  trace.add(x, subgradient_residuals(game, x), 0.0, 0.0);
  int sweep = 0;
  trace.status = Status::kMaxIters;
  while (sweep < cfg.max_iters) {
    if (trace.records.back().residual_norm <= cfg.eps) {
      trace.status = Status::kConverged;
      break;
    }
    ++sweep;
    bool stop = false;
    for (int i = 0; i < m && !stop; ++i) {
      const double before = x[i];
      x[i] = exact_best_response(game, i, x);
      history.push_back(x);
      auto& rec = trace.add(x, subgradient_residuals(game, x),
                            std::abs(x[i] - before), 0.0);
      const double tol = cfg.cycle_tol * (1.0 + x.norm());
      if (auto period = detect_cycle(history, tol, cycle_period_cap(cfg, m), 2)) {
        rec.event = Event::kCycleDetected;
        trace.cycle_period = period;
        trace.status = Status::kCycleDetected;
        stop = true;
      } else if (detect_divergence(history, cfg.divergence_window, game.box(), m)) {
        rec.event = Event::kDivergenceDetected;
        trace.status = Status::kDiverged;
        stop = true;
      }
    }
    if (stop) break;
  }
  trace.iterations = sweep;
  trace.final_point = x;
  trace.last_iterate = x;
  trace.oracle_calls = scope.elapsed();
  return trace;
}

namespace {

constexpr long kMaxWalk = 1000000;
constexpr int kWitnessEvery = 5;
constexpr double kLambdaFloorFactor = 1e-6;

/// Constant-step coordinate descent shared by algorithms 2, 3 and 4. Works in
/// the coordinates of the current (possibly relabelled) game and reports
/// points and residuals in the original ones.
class ConstantStepEngine {
 public:
  ConstantStepEngine(const Game& game, const Point& x0, const SolverConfig& cfg,
                     Trace& trace, bool smoothing)
      : original_(game),
        cfg_(cfg),
        trace_(trace),
        m_(game.players()),
        perm_(m_),
        y_(x0),
        lambda_(cfg.lambda0),
        prev_sign_(m_, 0),
        cur_sign_(m_, 0) {
    std::iota(perm_.begin(), perm_.end(), 0);
    if (smoothing) {
      original_smooth_.emplace(detail::make_smoothed(game, cfg));
    }
  }

  const Game& current() const {
    return permuted_ ? permuted_->game : original_;
  }
  const SmoothedGame& current_smooth() const {
    return current_smooth_ ? *current_smooth_ : *original_smooth_;
  }
  bool smoothing() const { return original_smooth_.has_value(); }
  double lambda() const { return lambda_; }
  double diameter() const {
    return smoothing() ? original_smooth_->set().diameter() : 0.0;
  }
  int shrinks() const { return shrinks_; }
  const SmoothedGame& smooth() const { return *original_smooth_; }

  Point x() const {
    Point x(m_);
    for (int k = 0; k < m_; ++k) x[perm_[k]] = y_[k];
    return x;
  }

  Vector residual() const {
    const Point p = x();
    if (!smoothing()) return subgradient_residuals(original_, p);
    return original_smooth_->phi_grad_vector(p).cwiseAbs();
  }

  double eps_k() const { return cfg_.eps_k(shrinks_); }

  IterationRecord& record(Event event) {
    return trace_.add(x(), residual(), lambda_, diameter(), event, eps_k());
  }

  /// One pass over the coordinates. Returns true when λ was halved.
  bool sweep() {
    bool halved = false;
    const Box& box = current().box();
    for (int i = 0; i < m_; ++i) {
      double best = loss(i, y_);
      int moved = 0;
      for (int dir : {1, -1}) {
        long steps = 0;
        Point z = y_;
        while (steps < kMaxWalk) {
          z[i] = y_[i] + dir * lambda_;
          if (z[i] < box.lower[i] || z[i] > box.upper[i]) break;
          const double f = loss(i, z);
          if (!(f < best)) break;
          best = f;
          y_[i] = z[i];
          ++steps;
        }
        if (steps > 0) {
          moved = dir;
          break;
        }
      }
      if (moved == 0) {
        if (lambda_ > kLambdaFloorFactor * cfg_.effective_lambda_min()) {
          lambda_ *= 0.5;
          halved = true;
        }
      } else {
        cur_sign_[i] = moved;
      }
      stalls_.push_back(y_);
      if (static_cast<int>(stalls_.size()) > 2 * m_) stalls_.pop_front();
    }
    ++sweeps_since_clear_;
    sweep_ends_.push_back(y_);
    return halved;
  }

  /// Averages the last 2m stall points when some coordinate reversed its
  /// direction between the last two sweeps.
  bool maybe_average() {
    bool reversed = false;
    for (int i = 0; i < m_; ++i) {
      reversed = reversed || prev_sign_[i] * cur_sign_[i] < 0;
    }
    const bool ready = sweeps_since_clear_ >= 2 &&
                       static_cast<int>(stalls_.size()) == 2 * m_;
    prev_sign_ = cur_sign_;
    std::fill(cur_sign_.begin(), cur_sign_.end(), 0);
    if (!(ready && reversed)) return false;
    y_ = average_points({stalls_.begin(), stalls_.end()});
    reset_histories();
    return true;
  }

  enum class Guard { kOk, kSwapped, kDiverged };

  Guard check_divergence() {
    if (!detect_divergence(sweep_ends_, cfg_.divergence_window, current().box(),
                           m_)) {
      return Guard::kOk;
    }
    if (swaps_ >= cfg_.max_swaps || m_ < 2 ||
        !current().box().contains(y_)) {
      return Guard::kDiverged;
    }
    // Coordinates ranked by growth of their own step over the window.
    const int n = static_cast<int>(sweep_ends_.size());
    const int w = cfg_.divergence_window;
    std::vector<double> growth(m_);
    for (int j = 0; j < m_; ++j) {
      const double first =
          std::abs(sweep_ends_[n - w][j] - sweep_ends_[n - w - 1][j]);
      const double last = std::abs(sweep_ends_[n - 1][j] - sweep_ends_[n - 2][j]);
      growth[j] = last > 0.0 ? last / std::max(first, 1e-300) : 0.0;
    }
    std::vector<int> order(m_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return growth[a] > growth[b]; });
    std::vector<int> perm = perm_;
    std::swap(perm[order[0]], perm[order[1]]);
    try {
      const Point x_now = x();
      permuted_.emplace(permute_game(original_, perm, cfg_.swap_mode));
      perm_ = perm;
      y_ = permuted_->to_permuted(x_now);
      if (smoothing()) {
        current_smooth_.emplace(permuted_->game, original_smooth_->set(),
                                cfg_.quadrature_level, cfg_.seed,
                                cfg_.fd_step_factor);
      }
    } catch (const ConvexityError&) {
      return Guard::kDiverged;
    }
    ++swaps_;
    reset_histories();
    return Guard::kSwapped;
  }

  void shrink() {
    const double r = original_smooth_->set().radius * cfg_.shrink_rho;
    original_smooth_.emplace(original_smooth_->with_radius(r));
    if (current_smooth_) current_smooth_.emplace(current_smooth_->with_radius(r));
    ++shrinks_;
  }

  /// Stopping test at the diameter floor (or for the unsmoothed method).
  bool try_finish(int attempt) {
    const double r = residual().maxCoeff();
    const bool small = r <= cfg_.eps && lambda_ <= cfg_.effective_lambda_min();
    if (!smoothing()) {
      if (small) {
        trace_.status = Status::kConverged;
        trace_.final_point = x();
      }
      return small;
    }
    if (small || attempt % kWitnessEvery == 0) {
      if (detail::finish_with_witness(original_, *original_smooth_, x(),
                                      lambda_, eps_k(), cfg_, trace_)) {
        return true;
      }
    }
    if (small) {
      trace_.status = Status::kConverged;
      trace_.final_point = x();
    }
    return small;
  }

 private:
  double loss(int i, const Point& y) const {
    return smoothing() ? current_smooth().phi(i, y) : evaluate(current(), i, y);
  }

  void reset_histories() {
    stalls_.clear();
    sweep_ends_.clear();
    std::fill(prev_sign_.begin(), prev_sign_.end(), 0);
    std::fill(cur_sign_.begin(), cur_sign_.end(), 0);
    sweeps_since_clear_ = 0;
  }

  const Game& original_;
  const SolverConfig& cfg_;
  Trace& trace_;
  int m_;
  std::vector<int> perm_;  // y_k = x_{perm_[k]}
  std::optional<PermutedGame> permuted_;
  std::optional<SmoothedGame> original_smooth_;
  std::optional<SmoothedGame> current_smooth_;
  Point y_;
  double lambda_;
  int shrinks_ = 0;
  int swaps_ = 0;
  std::deque<Point> stalls_;
  std::vector<Point> sweep_ends_;
  std::vector<int> prev_sign_;
  std::vector<int> cur_sign_;
  int sweeps_since_clear_ = 0;
};

using Guard = ConstantStepEngine::Guard;

/// Runs averaging and the divergence guard after a sweep. Returns false when
/// the run must stop as diverged.
bool safeguards(ConstantStepEngine& engine, Trace& trace) {
  if (engine.maybe_average()) {
    engine.record(Event::kAverage);
    return true;
  }
  switch (engine.check_divergence()) {
    case Guard::kOk: return true;
    case Guard::kSwapped:
      engine.record(Event::kSwap);
      return true;
    case Guard::kDiverged:
      engine.record(Event::kDivergenceDetected);
      trace.status = Status::kDiverged;
      return false;
  }
  return true;
}

void finish(Trace& trace, const ConstantStepEngine& engine, int sweeps,
            const detail::OracleScope& scope) {
  trace.iterations = sweeps;
  if (trace.final_point.size() == 0) trace.final_point = engine.x();
  if (trace.last_iterate.size() == 0) trace.last_iterate = engine.x();
  trace.oracle_calls = scope.elapsed();
}

}  // namespace

Trace algorithm2(const Game& game, const Point& x0, const SolverConfig& cfg) {
  detail::check_start(game, x0, cfg);
  const detail::OracleScope scope;
  Trace trace;
  trace.algorithm = to_string(Algorithm::kAlg2);
  trace.status = Status::kMaxIters;
  ConstantStepEngine engine(game, x0, cfg, trace, false);
  engine.record(Event::kNone);
  int sweeps = 0;
  if (!engine.try_finish(0)) {
    while (sweeps < cfg.max_iters) {
      ++sweeps;
      engine.record(engine.sweep() ? Event::kHalve : Event::kNone);
      if (engine.try_finish(sweeps)) break;
      if (!safeguards(engine, trace)) break;
    }
  }
  finish(trace, engine, sweeps, scope);
  return trace;
}

Trace algorithm3(const Game& game, const Point& x0, const SolverConfig& cfg) {
  detail::check_start(game, x0, cfg);
  const detail::OracleScope scope;
  Trace trace;
  trace.algorithm = to_string(Algorithm::kAlg3);
  trace.status = Status::kMaxIters;
  ConstantStepEngine engine(game, x0, cfg, trace, true);
  engine.record(Event::kNone);
  int sweeps = 0;
  int floor_sweeps = 0;
  bool done = false;
  while (!done && sweeps < cfg.max_iters) {
    const bool at_floor = detail::at_diameter_floor(engine.diameter(), cfg);
    const double tol = std::max(cfg.eps, engine.eps_k());
    const double step_tol =
        std::max(cfg.effective_lambda_min(), engine.eps_k() * engine.diameter());
    int inner = 0;
    while (sweeps < cfg.max_iters && (at_floor || inner < cfg.inner_max_sweeps)) {
      ++sweeps;
      ++inner;
      const auto& rec = engine.record(engine.sweep() ? Event::kHalve : Event::kNone);
      const bool inner_done = rec.residual_norm <= tol && engine.lambda() <= step_tol;
      if (at_floor && engine.try_finish(++floor_sweeps)) {
        done = true;
        break;
      }
      if (!safeguards(engine, trace)) {
        done = true;
        break;
      }
      if (!at_floor && inner_done) break;
    }
    if (!done && !at_floor && sweeps < cfg.max_iters) {
      engine.record(Event::kShrink);
      engine.shrink();
    }
  }
  finish(trace, engine, sweeps, scope);
  return trace;
}

Trace algorithm4(const Game& game, const Point& x0, const SolverConfig& cfg) {
  detail::check_start(game, x0, cfg);
  const detail::OracleScope scope;
  Trace trace;
  trace.algorithm = to_string(Algorithm::kAlg4);
  trace.status = Status::kMaxIters;
  ConstantStepEngine engine(game, x0, cfg, trace, true);
  engine.record(Event::kNone);
  int sweeps = 0;
  int floor_sweeps = 0;
  while (sweeps < cfg.max_iters) {
    ++sweeps;
    engine.record(engine.sweep() ? Event::kHalve : Event::kNone);
    const bool at_floor = detail::at_diameter_floor(engine.diameter(), cfg);
    if (at_floor && engine.try_finish(++floor_sweeps)) break;
    if (!safeguards(engine, trace)) break;
    if (!at_floor && check_step_diameter(engine.lambda(), engine.diameter(),
                                         engine.eps_k(), cfg.order)) {
      engine.record(Event::kShrink);
      engine.shrink();
    }
  }
  finish(trace, engine, sweeps, scope);
  return trace;
}

}  // namespace nash
