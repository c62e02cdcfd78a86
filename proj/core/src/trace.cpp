#include "nash/trace.hpp"

#include <cstdio>
#include <limits>

namespace nash {

std::string to_string(Event event) {
  switch (event) {
    case Event::kNone: return "none";
    case Event::kHalve: return "halve";
    case Event::kAverage: return "average";
    case Event::kSwap: return "swap";
    case Event::kShrink: return "shrink";
    case Event::kCycleDetected: return "cycle_detected";
    case Event::kDivergenceDetected: return "divergence_detected";
  }
  return "none";
}

std::string to_string(Status status) {
  switch (status) {
    case Status::kConverged: return "converged";
    case Status::kMaxIters: return "max_iters";
    case Status::kDiverged: return "diverged";
    case Status::kCycleDetected: return "cycle_detected";
  }
  return "max_iters";
}

IterationRecord& Trace::add(const Point& x, const Vector& residual,
                            double lambda, double diameter, Event event,
                            double eps_k) {
  IterationRecord rec;
  rec.k = static_cast<int>(records.size());
  rec.x = x;
  rec.residual = residual;
  rec.residual_norm = residual.size() ? residual.cwiseAbs().maxCoeff() : 0.0;
  rec.lambda = lambda;
  rec.diameter = diameter;
  rec.event = event;
  rec.eps_k = eps_k;
  records.push_back(std::move(rec));
  return records.back();
}

double Trace::final_residual() const {
  if (records.empty()) return std::numeric_limits<double>::quiet_NaN();
  return records.back().residual_norm;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  const long m = trace.records.empty() ? trace.final_point.size()
                                       : trace.records.front().x.size();
  os << "k";
  for (long j = 1; j <= m; ++j) os << ",x" << j;
  os << ",res_norm,lambda,diameter,event\n";
  for (const auto& rec : trace.records) {
    os << rec.k;
    for (long j = 0; j < m; ++j) os << ',' << format_double(rec.x[j]);
    os << ',' << format_double(rec.residual_norm) << ','
       << format_double(rec.lambda) << ',' << format_double(rec.diameter)
       << ',' << to_string(rec.event) << '\n';
  }
}

}  // namespace nash
