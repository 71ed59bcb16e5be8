#include <doctest.h>

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "archdpg/banded.hpp"
#include "archdpg/basis.hpp"
#include "archdpg/quadrature.hpp"
#include "support/generators.hpp"

using namespace archdpg;

TEST_CASE("Gauss-Legendre rules integrate monomials up to their exactness") {
  for (int g : {1, 2, 5, 12, 33, 64}) {
    const QuadratureRule rule = gauss_legendre(g);
    CHECK(rule.size() == g);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int k = 0; k <= rule.exactness(); ++k) {
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      const double approx = rule.integrate([k](double x) { return std::pow(x, k); });
      CHECK(std::abs(approx - exact) <= 1e-13);
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), std::out_of_range);
  CHECK_THROWS_AS(gauss_legendre(kMaxQuadraturePoints + 1), std::out_of_range);
}

TEST_CASE("integrate maps to arbitrary intervals") {
  const QuadratureRule rule = gauss_legendre(10);
  CHECK(rule.integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  CHECK(rule.integrate([](double x) { return x * x; }, 2.0, 3.0) == doctest::Approx(19.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("Legendre basis values, derivatives and mass") {
  const LegendreBasis basis(4);
  CHECK(basis.size() == 5);
  std::vector<double> v(5), d(5);
  basis.evaluate(1.0, v, d);
  for (int k = 0; k < 5; ++k) {
    CHECK(v[k] == doctest::Approx(1.0));
    CHECK(d[k] == doctest::Approx(k * (k + 1) / 2.0));
  }
  basis.evaluate(0.3, v, d);
  CHECK(v[2] == doctest::Approx(0.5 * (3 * 0.09 - 1)));
  CHECK(d[3] == doctest::Approx(0.5 * (15 * 0.09 - 3)));

  const QuadratureRule rule = gauss_legendre(8);
  const Eigen::MatrixXd vals = basis.values(rule.points);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());
  const Eigen::MatrixXd mass = vals.transpose() * w.asDiagonal() * vals;
  const Eigen::MatrixXd expected = basis.mass_diagonal().asDiagonal();
  CHECK((mass - expected).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK_THROWS_AS(LegendreBasis(-1), std::invalid_argument);
}

TEST_CASE("property: L2 projection reproduces polynomials and expansions evaluate consistently") {
  archdpg::testing::Gen gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = gen.integer(0, 8);
    const LegendreBasis basis(p);
    const Expr poly = gen.polynomial(p);
    const double a = gen.uniform(-1, 0.5), b = a + gen.uniform(0.01, 1.0);
    const Eigen::VectorXd c = project_l2([&](double x) { return poly(x); }, basis, a, b);
    for (int k = 0; k < 5; ++k) {
      const double x = gen.uniform(a, b);
      const double xi = (2 * x - a - b) / (b - a);
      CHECK(std::abs(evaluate_expansion(std::span<const double>(c.data(), c.size()), xi) - poly(x)) <= 1e-11);
      CHECK(std::abs(evaluate_expansion_derivative(std::span<const double>(c.data(), c.size()), xi) * 2 / (b - a) -
                       poly.derivative()(x)) <= 1e-8);
    }
  }
}

TEST_CASE("property: band Cholesky agrees with a dense solve") {
  archdpg::testing::Gen gen(62);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen.integer(1, 40), bw = gen.integer(0, 6);
    SymmetricBandMatrix a(n, bw);
    for (int i = 0; i < n; ++i) {
      a.add(i, i, 2.0 * bw + 1.0 + gen.uniform(0, 1));
      for (int j = std::max(0, i - bw); j < i; ++j) a.add(i, j, gen.uniform(-1, 1));
    }
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = gen.uniform(-1, 1);
    const Eigen::MatrixXd dense = a.to_dense();
    CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::VectorXd x = BandCholesky(a).solve(rhs);
    const Eigen::VectorXd xd = dense.llt().solve(rhs);
    CHECK((x - xd).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((a.multiply(x) - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("band matrix rejects entries outside the band and indefinite input") {
  SymmetricBandMatrix a(4, 1);
  CHECK_THROWS_AS(a.add(3, 0, 1.0), std::out_of_range);
  CHECK(a(0, 3) == 0.0);
  a.add(0, 0, 1.0);
  a.add(1, 1, -1.0);
  a.add(2, 2, 1.0);
  a.add(3, 3, 1.0);
  try {
    BandCholesky chol(a);
    FAIL("expected a factorization error");
  } catch (const FactorizationError& e) {
    CHECK(e.pivot() == 1);
  }
}

TEST_CASE("quadrature and projection examples") {
  const QuadratureRule one = gauss_legendre(1);
  CHECK(one.points[0] == 0.0);
  CHECK(one.weights[0] == doctest::Approx(2.0));
  const QuadratureRule two = gauss_legendre(2);
  CHECK(std::abs(two.integrate([](double x) { return x * x * x; })) <= 1e-15);
  CHECK(two.integrate([](double x) { return x * x; }) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const LegendreBasis p0(0);
  CHECK(project_l2([](double x) { return x; }, p0, 0.0, 1.0)(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(project_l2([](double x) { return std::cos(x); }, p0, 0.0, 1.0, 12)(0) ==
        doctest::Approx(std::sin(1.0)).epsilon(1e-14));
  std::vector<double> v(1), d(1);
  p0.evaluate(0.37, v, d);
  CHECK(v[0] == 1.0);
  CHECK(d[0] == 0.0);
}

TEST_CASE("property: projection is idempotent") {
  archdpg::testing::Gen gen(63);
  for (int trial = 0; trial < 50; ++trial) {
    const LegendreBasis basis(gen.integer(0, 6));
    const Expr f = gen.expr();
    const double a = gen.uniform(0, 0.5), b = a + gen.uniform(0.05, 0.5);
    const Eigen::VectorXd c = project_l2([&](double x) { return f(x); }, basis, a, b);
    const Eigen::VectorXd c2 = project_l2(
        [&](double x) {
          return evaluate_expansion(std::span<const double>(c.data(), c.size()), (2 * x - a - b) / (b - a));
        }, basis, a, b);
    CHECK((c - c2).cwiseAbs().maxCoeff() <= 1e-13);
  }
}
