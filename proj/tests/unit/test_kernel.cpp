#include <doctest.h>

#include <cmath>
#include <numbers>

#include "archdpg/kernel.hpp"
#include "archdpg/quadrature.hpp"
#include "archdpg/stability.hpp"
#include "support/generators.hpp"

using namespace archdpg;

namespace {

struct QuadNorms {
  double n_sq = 0, q_sq = 0, m_sq = 0;
  double n_mean = 0, m_mean = 0;
};

// Composite Gauss rule: 4 panels of 16 points.
QuadNorms quadrature_norms(const KernelField& k) {
  static const QuadratureRule rule = gauss_legendre(16);
  QuadNorms out;
  for (int panel = 0; panel < 4; ++panel) {
    const double a = panel * 0.25;
    for (int g = 0; g < rule.size(); ++g) {
      const double x = a + 0.125 * (rule.points[g] + 1.0);
      const double w = 0.125 * rule.weights[g];
      const KernelValues v = kernel_evaluate(k, x);
      out.n_sq += w * v.n * v.n;
      out.q_sq += w * v.q * v.q;
      out.m_sq += w * v.m * v.m;
      out.n_mean += w * v.n;
      out.m_mean += w * v.m;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("kernel evaluation examples") {
  const KernelValues a = kernel_evaluate({1.0, 0.0, 0.0, std::numbers::pi}, 0.0);
  CHECK(a.n == 1.0);
  CHECK(a.q == 0.0);
  CHECK(a.m == 0.0);
  const KernelValues b = kernel_evaluate({0.0, 1.0, 0.0, std::numbers::pi / 2}, 1.0);
  CHECK(b.n == doctest::Approx(-1.0));
  CHECK(std::abs(b.q) < 1e-15);
  CHECK(b.m == doctest::Approx(-2.0 / std::numbers::pi));
}

TEST_CASE("kernel norm examples") {
  const KernelNorms k = kernel_l2_norms({1.0, 0.0, 0.0, std::numbers::pi});
  CHECK(k.n_sq == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(k.q_sq == doctest::Approx(0.5).epsilon(1e-15));
  const KernelNorms z = kernel_l2_norms({0.0, 0.0, 0.0, 2.0});
  CHECK(z.n_sq == 0.0);
  CHECK(z.q_sq == 0.0);
}

TEST_CASE("eigen bounds") {
  const EigenBounds pi = eigen_bounds(std::numbers::pi);
  CHECK(pi.min_eig == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pi.max_eig == doctest::Approx(1.0).epsilon(1e-15));
  const EigenBounds half = eigen_bounds(std::numbers::pi / 2);
  CHECK(half.min_eig == doctest::Approx(1 - 2 / std::numbers::pi));
  CHECK(half.max_eig == doctest::Approx(1 + 2 / std::numbers::pi));
}

TEST_CASE("property: kernel fields satisfy the equilibrium equations") {
  archdpg::testing::Gen gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    const KernelField k{gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-2, 2), gen.lambda()};
    const double x = gen.uniform(0.01, 0.99), h = 1e-5;
    const KernelValues lo = kernel_evaluate(k, x - h), mid = kernel_evaluate(k, x), hi = kernel_evaluate(k, x + h);
    CHECK(std::abs((hi.n - lo.n) / (2 * h) + k.lambda * mid.q) < 1e-7);
    CHECK(std::abs((hi.q - lo.q) / (2 * h) - k.lambda * mid.n) < 1e-7);
    CHECK(std::abs((hi.m - lo.m) / (2 * h) + mid.q) < 1e-7);
    CHECK(mid.n * mid.n + mid.q * mid.q == doctest::Approx(k.n0 * k.n0 + k.q0 * k.q0).epsilon(1e-13));
  }
}

TEST_CASE("property: closed-form norms match quadrature and obey the curvature bounds") {
  archdpg::testing::Gen gen(42);
  for (int trial = 0; trial < 500; ++trial) {
    const KernelField k{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1), gen.lambda()};
    const KernelNorms closed = kernel_l2_norms(k);
    const QuadNorms quad = quadrature_norms(k);
    const double scale = k.n0 * k.n0 + k.q0 * k.q0;
    CHECK(std::abs(closed.n_sq - quad.n_sq) <= 1e-12 * scale);
    CHECK(std::abs(closed.q_sq - quad.q_sq) <= 1e-12 * scale);
    CHECK(closed.q_sq <= curvature_constant_q(k.lambda) * closed.n_sq + 1e-12 * scale);
  }
}

TEST_CASE("property: n-m identity and the sharp bound ||n||^2 <= lambda^2 ||m||^2 + mean(n)^2") {
  archdpg::testing::Gen gen(45);
  for (int trial = 0; trial < 500; ++trial) {
    const KernelField k{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1), gen.lambda()};
    const QuadNorms quad = quadrature_norms(k);
    const double lam = k.lambda, nb = quad.n_mean, mb = quad.m_mean;
    const double form = nb * k.n0 - lam * nb * k.m0 + lam * k.n0 * mb - lam * lam * mb * k.m0;
    const double scale = 1.0 + quad.n_sq + lam * lam * quad.m_sq;
    CHECK(std::abs(quad.n_sq - (lam * lam * quad.m_sq + form)) <= 1e-12 * scale);
    CHECK(quad.n_sq <= lam * lam * quad.m_sq + nb * nb + 1e-12 * scale);
  }
}

TEST_CASE("the curvature constant C_n does not bound ||n|| by ||m|| on the whole kernel") {
  // Kernel field with lambda = 1 and m0 chosen to make m nearly orthogonal to constants.
  const double lam = 1.0;
  const KernelField k{1.0, 0.0, (1.0 - std::sin(lam) / lam) / lam, lam};
  const QuadNorms quad = quadrature_norms(k);
  CHECK(std::abs(quad.m_mean) <= 1e-14);
  CHECK(quad.n_sq > curvature_constant_n(lam) * quad.m_sq);
  CHECK(quad.n_sq <= lam * lam * quad.m_sq + quad.n_mean * quad.n_mean + 1e-14);
}

TEST_CASE("property: the extremal direction attains C_q") {
  archdpg::testing::Gen gen(43);
  for (int trial = 0; trial < 200; ++trial) {
    const double lam = gen.lambda();
    const auto d = kernel_extremal_direction(lam);
    const KernelNorms k = kernel_l2_norms({d[0], d[1], 0.0, lam});
    CHECK(std::abs(k.q_sq / k.n_sq - curvature_constant_q(lam)) <= 1e-8 * curvature_constant_q(lam));
    const EigenBounds e = eigen_bounds(lam);
    CHECK(e.max_eig / e.min_eig == doctest::Approx(curvature_constant_q(lam)).epsilon(1e-12));
  }
}

TEST_CASE("property: q0 = 0 gives the ratio C_q0") {
  archdpg::testing::Gen gen(44);
  for (int trial = 0; trial < 200; ++trial) {
    const double lam = gen.lambda();
    const KernelNorms k = kernel_l2_norms({gen.uniform(0.1, 2.0), 0.0, gen.uniform(-1, 1), lam});
    CHECK(std::abs(k.q_sq - curvature_constant_q0(lam) * k.n_sq) <= 1e-12 * k.n_sq);
  }
}

TEST_CASE("zero initial stresses give the zero kernel") {
  for (double x : {0.0, 0.4, 1.0}) {
    const KernelValues v = kernel_evaluate({0.0, 0.0, 0.7, 2.0}, x);
    CHECK(v.n == 0.0);
    CHECK(v.q == 0.0);
    CHECK(v.m == 0.7);
  }
}
