#include "archdpg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace archdpg {

SymmetricBandMatrix::SymmetricBandMatrix(int size, int bandwidth)
    : size_(size), bandwidth_(bandwidth), data_(static_cast<std::size_t>(size) * (bandwidth + 1), 0.0) {
  if (size < 0 || bandwidth < 0) throw std::invalid_argument("band matrix dimensions must be nonnegative");
}

double SymmetricBandMatrix::operator()(int i, int j) const {
  if (i < j) std::swap(i, j);
  if (i - j > bandwidth_) return 0.0;
  return lower(i, j);
}

void SymmetricBandMatrix::add(int i, int j, double v) {
  if (i < j) std::swap(i, j);
  if (i - j > bandwidth_ || j < 0 || i >= size_)
    throw std::out_of_range("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") lies outside the band");
  lower(i, j) += v;
}

Eigen::VectorXd SymmetricBandMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(size_);
  for (int j = 0; j < size_; ++j) {
    y(j) += lower(j, j) * x(j);
    const int last = std::min(size_ - 1, j + bandwidth_);
    for (int i = j + 1; i <= last; ++i) {
      const double a = lower(i, j);
      y(i) += a * x(j);
      y(j) += a * x(i);
    }
  }
  return y;
}

Eigen::MatrixXd SymmetricBandMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(size_, size_);
  for (int i = 0; i < size_; ++i)
    for (int j = std::max(0, i - bandwidth_); j <= i; ++j) d(i, j) = d(j, i) = lower(i, j);
  return d;
}

BandCholesky::BandCholesky(SymmetricBandMatrix a) : factor_(std::move(a)) {
  const int n = factor_.size_;
  const int b = factor_.bandwidth_;
  for (int j = 0; j < n; ++j) {
    double d = factor_.lower(j, j);
    for (int k = std::max(0, j - b); k < j; ++k) d -= factor_.lower(j, k) * factor_.lower(j, k);
    if (!(d > 0.0) || !std::isfinite(d))
      throw FactorizationError("band Cholesky: non-positive pivot at row " + std::to_string(j), j);
    const double ljj = std::sqrt(d);
    factor_.lower(j, j) = ljj;
    const int last = std::min(n - 1, j + b);
    for (int i = j + 1; i <= last; ++i) {
      double s = factor_.lower(i, j);
      for (int k = std::max(0, i - b); k < j; ++k) s -= factor_.lower(i, k) * factor_.lower(j, k);
      factor_.lower(i, j) = s / ljj;
    }
  }
}

Eigen::VectorXd BandCholesky::solve(const Eigen::VectorXd& rhs) const {
  const int n = factor_.size_;
  const int b = factor_.bandwidth_;
  Eigen::VectorXd x = rhs;
  for (int i = 0; i < n; ++i) {
    double s = x(i);
    for (int k = std::max(0, i - b); k < i; ++k) s -= factor_.lower(i, k) * x(k);
    x(i) = s / factor_.lower(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x(i);
    const int last = std::min(n - 1, i + b);
    for (int k = i + 1; k <= last; ++k) s -= factor_.lower(k, i) * x(k);
    x(i) = s / factor_.lower(i, i);
  }
  return x;
}

}  // namespace archdpg
