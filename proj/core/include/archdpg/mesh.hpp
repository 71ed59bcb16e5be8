#pragma once

#include <vector>

namespace archdpg {

/// Partition 0 = x_0 < x_1 < ... < x_N = 1 of the unit interval.
class Mesh {
 public:
  /// Throws std::invalid_argument unless nodes start at 0, end at 1 and
  /// increase strictly, with at least one element.
  explicit Mesh(std::vector<double> nodes);

  static Mesh uniform(int num_elements);

  int num_elements() const { return static_cast<int>(nodes_.size()) - 1; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  double node(int i) const { return nodes_[i]; }
  double h(int element) const { return nodes_[element + 1] - nodes_[element]; }
  double h_max() const;
  const std::vector<double>& nodes() const { return nodes_; }

  /// Element containing x (the left one at interior nodes).
  int locate(double x) const;

 private:
  std::vector<double> nodes_;
};

}  // namespace archdpg
