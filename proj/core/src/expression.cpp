#include "archdpg/expression.hpp"

#include <cmath>
#include <utility>

namespace archdpg {

namespace {

double horner(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

ExprTerm poly_term(std::vector<double> c, bool reflected) {
  ExprTerm t;
  t.kind = ExprTerm::Kind::Polynomial;
  t.coefficients = std::move(c);
  t.reflected = reflected;
  return t;
}

ExprTerm trig_term(ExprTerm::Kind kind, double a, double f, double ph, bool reflected) {
  ExprTerm t;
  t.kind = kind;
  t.amplitude = a;
  t.frequency = f;
  t.phase = ph;
  t.reflected = reflected;
  return t;
}

// d/dt of the term as a function of its own argument t.
ExprTerm differentiate_in_argument(const ExprTerm& term) {
  switch (term.kind) {
    case ExprTerm::Kind::Polynomial: {
      std::vector<double> d;
      for (std::size_t k = 1; k < term.coefficients.size(); ++k)
        d.push_back(static_cast<double>(k) * term.coefficients[k]);
      return poly_term(std::move(d), term.reflected);
    }
    case ExprTerm::Kind::Cos:
      return trig_term(ExprTerm::Kind::Sin, -term.amplitude * term.frequency, term.frequency,
                       term.phase, term.reflected);
    case ExprTerm::Kind::Sin:
      return trig_term(ExprTerm::Kind::Cos, term.amplitude * term.frequency, term.frequency,
                       term.phase, term.reflected);
  }
  return term;
}

// Primitive in the term's own argument t (any constant).
ExprTerm integrate_in_argument(const ExprTerm& term) {
  switch (term.kind) {
    case ExprTerm::Kind::Polynomial: {
      std::vector<double> c(term.coefficients.size() + 1, 0.0);
      for (std::size_t k = 0; k < term.coefficients.size(); ++k)
        c[k + 1] = term.coefficients[k] / static_cast<double>(k + 1);
      return poly_term(std::move(c), term.reflected);
    }
    case ExprTerm::Kind::Cos:
      if (term.frequency == 0.0)
        return poly_term({0.0, term.amplitude * std::cos(term.phase)}, term.reflected);
      return trig_term(ExprTerm::Kind::Sin, term.amplitude / term.frequency, term.frequency,
                       term.phase, term.reflected);
    case ExprTerm::Kind::Sin:
      if (term.frequency == 0.0)
        return poly_term({0.0, term.amplitude * std::sin(term.phase)}, term.reflected);
      return trig_term(ExprTerm::Kind::Cos, -term.amplitude / term.frequency, term.frequency,
                       term.phase, term.reflected);
  }
  return term;
}

ExprTerm negate(ExprTerm t) {
  for (double& c : t.coefficients) c = -c;
  t.amplitude = -t.amplitude;
  return t;
}

}  // namespace

double ExprTerm::operator()(double x) const {
  const double t = reflected ? 1.0 - x : x;
  switch (kind) {
    case Kind::Polynomial:
      return horner(coefficients, t);
    case Kind::Cos:
      return amplitude * std::cos(frequency * t + phase);
    case Kind::Sin:
      return amplitude * std::sin(frequency * t + phase);
  }
  return 0.0;
}

Expr Expr::constant(double c) { return polynomial({c}); }

Expr Expr::polynomial(std::vector<double> coefficients) {
  Expr e;
  e.add_term(poly_term(std::move(coefficients), false));
  return e;
}

Expr Expr::cos(double amplitude, double frequency, double phase) {
  Expr e;
  e.add_term(trig_term(ExprTerm::Kind::Cos, amplitude, frequency, phase, false));
  return e;
}

Expr Expr::sin(double amplitude, double frequency, double phase) {
  Expr e;
  e.add_term(trig_term(ExprTerm::Kind::Sin, amplitude, frequency, phase, false));
  return e;
}

void Expr::add_term(ExprTerm term) { terms_.push_back(std::move(term)); }

double Expr::operator()(double x) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t(x);
  return v;
}

Expr Expr::derivative() const {
  Expr d;
  for (const auto& t : terms_) {
    // d/dx g(1-x) = -g'(1-x)
    ExprTerm dt = differentiate_in_argument(t);
    d.add_term(t.reflected ? negate(std::move(dt)) : std::move(dt));
  }
  return d;
}

Expr Expr::antiderivative() const {
  Expr a;
  for (const auto& t : terms_) {
    ExprTerm prim = integrate_in_argument(t);
    if (!t.reflected) {
      // int_0^x g = G(x) - G(0)
      const double g0 = prim(0.0);
      a.add_term(std::move(prim));
      if (g0 != 0.0) a.add_term(poly_term({-g0}, false));
    } else {
      // int_0^x g(1-s) ds = G(1) - G(1-x)
      ExprTerm unreflected = prim;
      unreflected.reflected = false;
      const double g1 = unreflected(1.0);
      a.add_term(negate(std::move(prim)));
      if (g1 != 0.0) a.add_term(poly_term({g1}, false));
    }
  }
  return a;
}

Expr Expr::reflected() const {
  Expr r = *this;
  for (auto& t : r.terms_) t.reflected = !t.reflected;
  return r;
}

Expr Expr::operator-() const {
  Expr r;
  for (const auto& t : terms_) r.add_term(negate(t));
  return r;
}

Expr operator+(Expr a, const Expr& b) {
  for (const auto& t : b.terms_) a.add_term(t);
  return a;
}

Expr operator*(double s, Expr e) {
  for (auto& t : e.terms_) {
    for (double& c : t.coefficients) c *= s;
    t.amplitude *= s;
  }
  return e;
}

}  // namespace archdpg
