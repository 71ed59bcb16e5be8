#include <doctest.h>

#include <cmath>
#include <numbers>

#include "archdpg/expression.hpp"
#include "support/generators.hpp"

using archdpg::Expr;
using archdpg::testing::Gen;

TEST_CASE("expression terms evaluate in closed form") {
  const Expr p = Expr::polynomial({1.0, -2.0, 0.5});
  CHECK(p(0.0) == doctest::Approx(1.0));
  CHECK(p(2.0) == doctest::Approx(1.0 - 4.0 + 2.0));
  CHECK(Expr::cos(2.0, 3.0, 0.25)(0.4) == doctest::Approx(2.0 * std::cos(1.2 + 0.25)));
  CHECK(Expr::sin(-1.0, std::numbers::pi)(0.5) == doctest::Approx(-1.0));
  CHECK(Expr::constant(3.5)(0.123) == 3.5);
  CHECK(Expr()(0.7) == 0.0);
  CHECK(Expr().is_zero());
}

TEST_CASE("derivative of sin(pi x) is pi cos(pi x)") {
  const Expr d = Expr::sin(1.0, std::numbers::pi).derivative();
  for (double x : {0.0, 0.3, 1.0}) CHECK(d(x) == doctest::Approx(std::numbers::pi * std::cos(std::numbers::pi * x)));
}

TEST_CASE("antiderivative starts at zero, also for reflected terms") {
  const Expr f = Expr::sin(1.0, std::numbers::pi).reflected() + Expr::polynomial({2.0, 1.0});
  const Expr F = f.antiderivative();
  CHECK(F(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  // int_0^1 sin(pi (1 - s)) ds = 2 / pi, int_0^1 (2 + s) ds = 2.5
  CHECK(F(1.0) == doctest::Approx(2.0 / std::numbers::pi + 2.5).epsilon(1e-14));
}

TEST_CASE("property: derivative matches a central difference") {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr e = gen.expr();
    const Expr d = e.derivative();
    const double x = gen.uniform(0.05, 0.95);
    const double h = 1e-5;
    const double fd = (e(x + h) - e(x - h)) / (2 * h);
    CHECK(d(x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("property: antiderivative inverts differentiation") {
  Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr e = gen.expr();
    const Expr back = e.antiderivative().derivative();
    const double x = gen.uniform(0.0, 1.0);
    CHECK(std::abs(back(x) - e(x)) <= 1e-12 * (1.0 + std::abs(e(x))));
    CHECK(std::abs(e.antiderivative()(0.0)) <= 1e-14);
  }
}

TEST_CASE("property: reflection is an exact involution") {
  Gen gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr e = gen.expr();
    CHECK(e.reflected().reflected() == e);
    const double x = gen.uniform(0.0, 1.0);
    CHECK(e.reflected()(x) == doctest::Approx(e(1.0 - x)).epsilon(1e-14));
  }
}

TEST_CASE("property: arithmetic is pointwise") {
  Gen gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const Expr a = gen.expr();
    const Expr b = gen.expr();
    const double s = gen.uniform(-3, 3);
    const double x = gen.uniform(0.0, 1.0);
    CHECK((a + b)(x) == doctest::Approx(a(x) + b(x)).epsilon(1e-14));
    CHECK((a - b)(x) == doctest::Approx(a(x) - b(x)).epsilon(1e-14));
    CHECK((s * a)(x) == doctest::Approx(s * a(x)).epsilon(1e-14));
    CHECK((-a)(x) == -a(x));
  }
}
