#pragma once

#include <utility>
#include <vector>

namespace archdpg {

/// One closed-form term of a load or field expression on [0,1].
///
/// A term is either a polynomial sum_k c_k t^k or a trigonometric term
/// amplitude * cos/sin(frequency * t + phase). When `reflected` is set, the
/// term is evaluated at t = 1 - x instead of t = x, which keeps the mirror map
/// x -> 1 - x an exact involution on stored data.
struct ExprTerm {
  enum class Kind { Polynomial, Cos, Sin };

  Kind kind = Kind::Polynomial;
  std::vector<double> coefficients;  // Polynomial only
  double amplitude = 0.0;            // Cos / Sin only
  double frequency = 0.0;
  double phase = 0.0;
  bool reflected = false;

  double operator()(double x) const;
  bool operator==(const ExprTerm&) const = default;
};

/// Finite sum of polynomial and trigonometric terms.
///
/// Closed under differentiation, antidifferentiation from 0, scaling and the
/// reflection x -> 1 - x. This is the structured expression set used for loads
/// and manufactured solutions.
class Expr {
 public:
  Expr() = default;

  static Expr constant(double c);
  static Expr polynomial(std::vector<double> coefficients);
  static Expr cos(double amplitude, double frequency, double phase = 0.0);
  static Expr sin(double amplitude, double frequency, double phase = 0.0);

  double operator()(double x) const;

  Expr derivative() const;
  /// Antiderivative F with F(0) = 0.
  Expr antiderivative() const;
  /// x -> g(1 - x).
  Expr reflected() const;

  bool is_zero() const { return terms_.empty(); }
  const std::vector<ExprTerm>& terms() const { return terms_; }
  void add_term(ExprTerm term);

  Expr operator-() const;
  friend Expr operator+(Expr a, const Expr& b);
  friend Expr operator-(Expr a, const Expr& b) { return std::move(a) + (-b); }
  friend Expr operator*(double s, Expr e);

  bool operator==(const Expr&) const = default;

 private:
  std::vector<ExprTerm> terms_;
};

}  // namespace archdpg
