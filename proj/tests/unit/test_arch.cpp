#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "archdpg/arch.hpp"
#include "archdpg/mesh.hpp"
#include "support/generators.hpp"

using namespace archdpg;
using archdpg::testing::Gen;

TEST_CASE("parameters are validated") {
  CHECK_NOTHROW(ArchParameters(1e-4, 0.0, 6.0));
  CHECK_THROWS_AS(ArchParameters(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArchParameters(-1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArchParameters(1.0, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArchParameters(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ArchParameters(1.0, 1.0, 2.0 * std::numbers::pi), std::invalid_argument);
  CHECK_THROWS_AS(ArchParameters(std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArchParameters(1.0, 1.0, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("boundary masks") {
  using C = Component;
  const auto mask = [](char letter) {
    const auto e = essential_components(boundary_from_letter(letter));
    return std::set<C>(e.begin(), e.end());
  };
  CHECK(mask('c') == std::set<C>{C::U, C::W, C::Theta});
  CHECK(mask('p') == std::set<C>{C::U, C::W, C::M});
  CHECK(mask('s') == std::set<C>{C::W, C::Theta, C::N});
  CHECK(mask('d') == std::set<C>{C::U, C::Q, C::M});
  CHECK(mask('r') == std::set<C>{C::Theta, C::N, C::Q});
  CHECK(mask('f') == std::set<C>{C::N, C::Q, C::M});
}

TEST_CASE("every support prescribes one of each dual pair") {
  for (char letter : std::string("cpsdrf")) {
    const BoundaryKind kind = boundary_from_letter(letter);
    for (Component c : kAllComponents)
      CHECK(is_essential(kind, c) != is_essential(kind, dual_component(c)));
  }
}

TEST_CASE("boundary codes parse and print") {
  for (char l : std::string("cpsdrf"))
    for (char r : std::string("cpsdrf")) {
      const std::string code{l, r};
      CHECK(BcPair::parse(code).code() == code);
    }
  CHECK_THROWS_AS(BcPair::parse("c"), std::invalid_argument);
  CHECK_THROWS_AS(BcPair::parse("cx"), std::invalid_argument);
  CHECK_THROWS_AS(BcPair::parse("ccc"), std::invalid_argument);
  CHECK_THROWS_AS(BcPair::parse("CF"), std::invalid_argument);
}

TEST_CASE("dual pairs and mirror signs") {
  CHECK(dual_component(Component::U) == Component::N);
  CHECK(dual_component(Component::W) == Component::Q);
  CHECK(dual_component(Component::Theta) == Component::M);
  CHECK(dual_component(Component::Q) == Component::W);
  CHECK(mirror_sign(Component::U) == -1.0);
  CHECK(mirror_sign(Component::W) == 1.0);
  CHECK(mirror_sign(Component::Theta) == -1.0);
  CHECK(mirror_sign(Component::N) == 1.0);
  CHECK(mirror_sign(Component::Q) == -1.0);
  CHECK(mirror_sign(Component::M) == 1.0);
}

TEST_CASE("point loads sit at an endpoint on a displacement component") {
  LoadSpec load;
  CHECK_NOTHROW(load.add_point_load(0.0, Component::W, 1.0));
  CHECK_NOTHROW(load.add_point_load(1.0, Component::Theta, -2.0));
  CHECK_THROWS_AS(load.add_point_load(0.5, Component::W, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(load.add_point_load(0.0, Component::Q, 1.0), std::invalid_argument);
  REQUIRE(load.point_loads.size() == 2);
  CHECK(load.point_loads[1].endpoint == 1);
}

TEST_CASE("essential values: tip load becomes a stress trace with the virtual-work sign") {
  ArchConfig cfg;
  cfg.bc = BcPair::parse("fc");
  cfg.load.add_point_load(0.0, Component::W, 2.5);
  const auto left = essential_values(cfg, 0, true);
  CHECK(left[index(Component::Q)] == -2.5);
  CHECK(essential_values(cfg, 0, false)[index(Component::Q)] == 0.0);

  ArchConfig right;
  right.bc = BcPair::parse("cf");
  right.load.add_point_load(1.0, Component::U, 1.5);
  CHECK(essential_values(right, 1, true)[index(Component::N)] == 1.5);

  ArchConfig bad;
  bad.bc = BcPair::parse("cc");
  bad.boundary_values.push_back({0, Component::N, 1.0});
  CHECK_THROWS_AS(essential_values(bad, 0, false), std::invalid_argument);
}

TEST_CASE("mirror examples") {
  ArchConfig cfg;
  cfg.bc = BcPair::parse("cf");
  cfg.load.f_w = Expr::sin(1.0, 1.0);
  const ArchConfig m = mirror_problem(cfg);
  CHECK(m.bc.code() == "fc");
  for (double x : {0.0, 0.25, 1.0}) CHECK(m.load.f_w(x) == doctest::Approx(std::sin(1.0 - x)));
}

TEST_CASE("property: mirror_problem is an exact involution") {
  Gen gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    ArchConfig cfg;
    cfg.params = gen.params();
    cfg.bc = gen.bc_pair();
    cfg.load.f_u = gen.expr();
    cfg.load.f_w = gen.expr();
    if (gen.coin()) cfg.load.add_point_load(gen.coin() ? 0.0 : 1.0, kAllComponents[gen.integer(0, 2)], gen.uniform(-2, 2));
    const ArchConfig m = mirror_problem(cfg);
    CHECK(mirror_problem(m) == cfg);
    const double x = gen.uniform(0, 1);
    CHECK(m.load.f_u(x) == doctest::Approx(-cfg.load.f_u(1 - x)).epsilon(1e-14));
    CHECK(m.load.f_w(x) == doctest::Approx(cfg.load.f_w(1 - x)).epsilon(1e-14));
  }
}

TEST_CASE("mesh construction and location") {
  const Mesh m = Mesh::uniform(4);
  CHECK(m.num_elements() == 4);
  CHECK(m.num_nodes() == 5);
  CHECK(m.h(2) == doctest::Approx(0.25));
  CHECK(m.locate(0.0) == 0);
  CHECK(m.locate(0.5) == 1);
  CHECK(m.locate(0.51) == 2);
  CHECK(m.locate(1.0) == 3);
  CHECK_THROWS_AS(Mesh({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Mesh({0.1, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Mesh({0.0, 0.6, 0.4, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Mesh::uniform(0), std::invalid_argument);
  const Mesh g({0.0, 0.1, 0.7, 1.0});
  CHECK(g.h_max() == doctest::Approx(0.6));
}
