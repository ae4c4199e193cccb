#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "memclust/types.hpp"

namespace memclust {

struct ConvergenceEvent {
  double elapsed_seconds = 0.0;
  std::uint64_t seed = 0;
  double modularity = 0.0;

  friend bool operator==(const ConvergenceEvent&, const ConvergenceEvent&) = default;
};

/// Improvement events of one run. Scores are strictly increasing and times
/// non-decreasing; record() silently ignores non-improvements.
class ConvergenceLog {
 public:
  using Clock = std::chrono::steady_clock;

  explicit ConvergenceLog(std::uint64_t seed = 0, Clock::time_point start = Clock::now())
      : seed_(seed), start_(start) {}

  /// Records `modularity` at the current elapsed time if it improves.
  bool record(double modularity) { return record_at(elapsed(), modularity); }
  bool record_at(double elapsed_seconds, double modularity);

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  std::uint64_t seed() const { return seed_; }
  Clock::time_point start() const { return start_; }
  const std::vector<ConvergenceEvent>& events() const { return events_; }
  bool empty() const { return events_.empty(); }

 private:
  std::uint64_t seed_;
  Clock::time_point start_;
  std::vector<ConvergenceEvent> events_;
};

/// Time-ordered events of several concurrent logs (e.g. islands of one run),
/// keeping only those that raise the overall best. Events are relabeled with
/// `seed`.
std::vector<ConvergenceEvent> merge_improvements(std::span<const ConvergenceLog> logs,
                                                 std::uint64_t seed);

struct CurvePoint {
  double elapsed_seconds;
  double mean_modularity;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Event-based average over repeated runs. The first point averages the first
/// event of every run; then the remaining events are swept in time order,
/// each replacing its run's current score and emitting the new mean.
/// Output has 1 + sum(len(run) - 1) points. Throws Error on an empty input
/// or an empty run.
std::vector<CurvePoint> event_average(const std::vector<std::vector<ConvergenceEvent>>& runs);

/// Groups events by seed, preserving first-seen seed order.
std::vector<std::vector<ConvergenceEvent>> split_by_seed(std::span<const ConvergenceEvent> events);

/// CSV with header `elapsed_seconds,seed,modularity`, one event per line.
void write_convergence_csv(std::ostream& out, std::span<const ConvergenceEvent> events);
std::vector<ConvergenceEvent> read_convergence_csv(std::istream& in);

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);

}  // namespace memclust
