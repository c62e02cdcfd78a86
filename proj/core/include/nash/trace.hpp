#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nash/types.hpp"

namespace nash {

enum class Event {
  kNone,
  kHalve,
  kAverage,
  kSwap,
  kShrink,
  kCycleDetected,
  kDivergenceDetected,
};

enum class Status { kConverged, kMaxIters, kDiverged, kCycleDetected };

std::string to_string(Event event);
std::string to_string(Status status);

struct IterationRecord {
  int k = 0;
  Point x;
  Vector residual;
  double residual_norm = 0.0;  ///< max-norm of `residual`
  double lambda = 0.0;
  double diameter = 0.0;
  Event event = Event::kNone;
  double eps_k = 0.0;  ///< schedule value in force when the record was taken
};

struct Trace {
  std::string algorithm;
  std::vector<IterationRecord> records;
  Status status = Status::kMaxIters;
  Point final_point;
  /// Last iterate of the solver. Differs from final_point when a smoothing
  /// solver finishes on a certificate witness.
  Point last_iterate;
  std::optional<int> cycle_period;
  int iterations = 0;
  std::uint64_t oracle_calls = 0;

  /// Appends with k = records.size(). Returns the stored record.
  IterationRecord& add(const Point& x, const Vector& residual, double lambda,
                       double diameter, Event event = Event::kNone,
                       double eps_k = 0.0);
  bool converged() const { return status == Status::kConverged; }
  double final_residual() const;
};

/// CSV with header k,x1..xm,res_norm,lambda,diameter,event. Numbers use 17
/// significant digits so equal traces give equal bytes.
void write_trace_csv(std::ostream& os, const Trace& trace);

std::string format_double(double v);

}  // namespace nash
