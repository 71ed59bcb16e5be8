#include <doctest.h>

#include <cmath>

#include "archdpg/fem.hpp"
#include "archdpg/oracle.hpp"
#include "archdpg/solver.hpp"
#include "support/cases.hpp"
#include "support/generators.hpp"

using namespace archdpg;

TEST_CASE("zero load gives zero displacements and zero energy") {
  ArchConfig config = archdpg::testing::cantilever();
  config.load.point_loads.clear();
  for (bool reduced : {true, false}) {
    const FemSolution s = fem_solve(config, Mesh::uniform(8), reduced);
    for (int i = 0; i < 9; ++i) {
      CHECK(s.u[i] == 0.0);
      CHECK(s.w[i] == 0.0);
      CHECK(s.theta[i] == 0.0);
    }
    CHECK(s.energy == 0.0);
  }
}

TEST_CASE("dof accounting and kinematic constraints") {
  CHECK(fem_constrained_dofs(BcPair::parse("fc")) == 3);
  CHECK(fem_constrained_dofs(BcPair::parse("cc")) == 6);
  CHECK(fem_constrained_dofs(BcPair::parse("sd")) == 3);
  CHECK(fem_constrained_dofs(BcPair::parse("ff")) == 0);
  const FemSolution s = fem_solve(archdpg::testing::cantilever(), Mesh::uniform(8), true);
  CHECK(s.num_dofs() == 27);
  CHECK(s.u[8] == 0.0);
  CHECK(s.w[8] == 0.0);
  CHECK(s.theta[8] == 0.0);
  CHECK(s.n.size() == 8);
}

TEST_CASE("tip location follows the free end") {
  CHECK(tip_location(BcPair::parse("fc")) == 0.0);
  CHECK(tip_location(BcPair::parse("cf")) == 1.0);
  CHECK(tip_location(BcPair::parse("cc")) == 0.5);
}

TEST_CASE("rigid-body modes are reported") {
  ArchConfig config = archdpg::testing::cantilever();
  config.bc = BcPair::parse("ff");
  CHECK_THROWS_AS(fem_solve(config, Mesh::uniform(4), true), SolverError);
  config.bc = BcPair::parse("rf");
  CHECK_THROWS_AS(fem_solve(config, Mesh::uniform(4), true), SolverError);
}

TEST_CASE("energy decreases under uniform refinement") {
  for (bool reduced : {true, false}) {
    double previous = INFINITY;
    for (int n : {8, 16, 32, 64}) {
      const FemSolution s = fem_solve(archdpg::testing::cantilever(), Mesh::uniform(n), reduced);
      CHECK(s.energy <= previous + 1e-12);
      CHECK(s.energy == doctest::Approx(fem_energy(s, archdpg::testing::cantilever())).epsilon(1e-13));
      previous = s.energy;
    }
  }
}

TEST_CASE("property: doubling the load quadruples the energy") {
  archdpg::testing::Gen gen(91);
  for (int trial = 0; trial < 20; ++trial) {
    ArchConfig config;
    config.params = ArchParameters(gen.log_uniform(1e-3, 1.0), gen.uniform(0.1, 2.0), gen.lambda());
    config.bc = BcPair::parse(gen.coin() ? "cc" : "fc");
    config.load.f_u = gen.expr();
    config.load.f_w = gen.expr();
    const Mesh mesh = gen.mesh(16);
    const bool reduced = gen.coin();
    const double e1 = fem_solve(config, mesh, reduced).energy;
    config.load.f_u = 2.0 * config.load.f_u;
    config.load.f_w = 2.0 * config.load.f_w;
    const double e2 = fem_solve(config, mesh, reduced).energy;
    CHECK(e2 == doctest::Approx(4.0 * e1).epsilon(1e-9));
    CHECK(e1 <= 0.0);
  }
}

TEST_CASE("resultants are elementwise constants of the strains") {
  const ArchConfig config = archdpg::testing::cantilever();
  const FemSolution s = fem_solve(config, Mesh::uniform(4), true);
  const double x0 = 0.3, x1 = 0.45;  // same element
  CHECK(s.resultant(Component::N, x0) == s.resultant(Component::N, x1));
  const double h = 0.25, lam = 6.0;
  const double membrane = (s.u[2] - s.u[1]) / h + lam * 0.5 * (s.w[1] + s.w[2]);
  CHECK(s.n[1] == doctest::Approx(membrane / 1e-8));
  CHECK(s.m[1] == doctest::Approx((s.theta[2] - s.theta[1]) / h));
}

TEST_CASE("reduced FEM and DPG displacements are within an order of magnitude at N = 64") {
  const ArchConfig config = archdpg::testing::cantilever();
  OracleOptions options;
  options.elements = 256;
  options.richardson_check = false;
  const ReferenceSolution ref = solve_reference(config, options);
  const FemSolution fem = fem_solve(config, Mesh::uniform(64), true);
  const Solution dpg = solve(config, Mesh::uniform(64), DiscretizationConfig::standard(1));
  const auto fem_err = fem_displacement_errors(fem, ref.evaluator());
  const ErrorTable dpg_err = l2_errors(dpg.fields, ref.evaluator());
  for (int c = 0; c < 3; ++c) {
    CHECK(fem_err[c] / dpg_err.error[c] <= 10.0);
    CHECK(dpg_err.error[c] / fem_err[c] <= 10.0);
  }
}
