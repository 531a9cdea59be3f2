#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "smspsa/markov.hpp"

namespace smspsa {

struct TrajectoryPoint {
  std::size_t iteration = 0;
  double objective = 0.0;
  std::vector<double> p;      // adjustable entries of P^(i), row-major
  std::vector<double> theta;  // adjustable entries of Theta^(i), row-major
};

// Recorded optimizer path. Iteration indices strictly increase and every
// objective value is finite.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const std::vector<TrajectoryPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const TrajectoryPoint& back() const { return points_.back(); }

  void append(TrajectoryPoint point);

  std::vector<double> objectives() const;
  std::vector<std::size_t> iterations() const;

  // Header `iter,objective,P_<m>_<n>...,theta_<m>_<n>...`; values in
  // shortest round-trip form so equal runs give equal bytes.
  std::string to_csv() const;
  static Trajectory from_csv(const std::string& text);

 private:
  std::vector<Entry> entries_;
  std::vector<TrajectoryPoint> points_;
};

}  // namespace smspsa
