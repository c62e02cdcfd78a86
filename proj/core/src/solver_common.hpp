#pragma once

#include <sstream>
#include <string>

#include "nash/errors.hpp"
#include "nash/solver.hpp"

namespace nash::detail {

class OracleScope {
 public:
  OracleScope() : start_(oracle_calls()) {}
  std::uint64_t elapsed() const { return oracle_calls() - start_; }

 private:
  std::uint64_t start_;
};

inline std::string format_point(const Point& x) {
  std::ostringstream os;
  os << '(';
  for (long j = 0; j < x.size(); ++j) os << (j ? ", " : "") << x[j];
  os << ')';
  return os.str();
}

inline void check_start(const Game& game, const Point& x0,
                        const SolverConfig& cfg) {
  cfg.validate();
  if (x0.size() != game.players()) {
    std::ostringstream os;
    os << "start point has dimension " << x0.size() << ", game has "
       << game.players() << " players";
    throw DimensionError(os.str());
  }
  if (!game.box().contains(x0)) {
    throw ConfigError("start point " + format_point(x0) + " lies outside the box");
  }
}

inline SmoothedGame make_smoothed(const Game& game, const SolverConfig& cfg) {
  return SmoothedGame(game, AveragingSet(cfg.set_kind, cfg.radius, game.players()),
                      cfg.quadrature_level, cfg.seed, cfg.fd_step_factor);
}

inline bool at_diameter_floor(double d, const SolverConfig& cfg) {
  return d <= cfg.effective_d_min() * (1.0 + 1e-12);
}

/// Ends a smoothing solver at an ε(D) witness near x when one exists.
inline bool finish_with_witness(const Game& game, const SmoothedGame& smoothed,
                                const Point& x, double lambda, double eps_k,
                                const SolverConfig& cfg, Trace& trace) {
  const EquilibriumReport report =
      certify_epsD(game, x, smoothed.set(), smoothed.rule(), cfg.eps);
  if (!report.epsD_certificate) return false;
  const auto& cert = *report.epsD_certificate;
  trace.add(cert.witness, cert.residual, lambda, smoothed.set().diameter(),
            Event::kNone, eps_k);
  trace.final_point = cert.witness;
  trace.last_iterate = x;
  trace.status = Status::kConverged;
  return true;
}

}  // namespace nash::detail
