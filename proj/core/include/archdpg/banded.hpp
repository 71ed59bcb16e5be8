#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace archdpg {

/// Symmetric matrix with lower-band storage: entry (i, j) is stored only for
/// 0 <= i - j <= bandwidth.
class SymmetricBandMatrix {
 public:
  SymmetricBandMatrix() = default;
  SymmetricBandMatrix(int size, int bandwidth);

  int size() const { return size_; }
  int bandwidth() const { return bandwidth_; }

  /// Symmetric access; zero outside the band.
  double operator()(int i, int j) const;
  /// Adds v to (i, j) and, implicitly, (j, i). Throws std::out_of_range
  /// outside the band.
  void add(int i, int j, double v);

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd to_dense() const;

 private:
  double& lower(int i, int j) { return data_[static_cast<std::size_t>(j) * (bandwidth_ + 1) + (i - j)]; }
  double lower(int i, int j) const {
    return data_[static_cast<std::size_t>(j) * (bandwidth_ + 1) + (i - j)];
  }

  int size_ = 0;
  int bandwidth_ = 0;
  std::vector<double> data_;

  friend class BandCholesky;
};

class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, int pivot) : std::runtime_error(what), pivot_(pivot) {}
  int pivot() const { return pivot_; }

 private:
  int pivot_;
};

/// Band Cholesky A = L L^T in O(n b^2). Throws FactorizationError on the first
/// non-positive pivot.
class BandCholesky {
 public:
  explicit BandCholesky(SymmetricBandMatrix a);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  SymmetricBandMatrix factor_;
};

}  // namespace archdpg
