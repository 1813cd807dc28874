#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mtlz/families.hpp"
#include "mtlz/verifier.hpp"

using namespace mtlz;

namespace {

using Vec = std::vector<double>;

double det2(const Vec& x, const Vec& y) { return x[0] * y[1] - x[1] * y[0]; }

// Cycle 1~3~2~4 on vertices {0,1,2,3} = {1,2,3,4}: edges 13,14,23,24.
Graph cycle_1324() {
  return Graph::from_edges(4, {Edge{0, 2}, Edge{0, 3}, Edge{1, 2}, Edge{1, 3}});
}

// The consistent full data set on the 4-cycle: forms from the non-bipartite
// transform with r = -1 at zero rapidity, gamma = 1, arrows 3->1, 3->2,
// 1->4, 2->4.
MTLZData c4_data() {
  MTLZData d;
  d.graph = cycle_1324();
  d.forms.dim = 2;
  d.forms.forms.resize(4);
  d.forms.forms[static_cast<std::size_t>(d.graph.edge_index(0, 2))] = {1, 0};  // A13
  d.forms.forms[static_cast<std::size_t>(d.graph.edge_index(0, 3))] = {0, 1};  // A14
  d.forms.forms[static_cast<std::size_t>(d.graph.edge_index(1, 3))] = {1, 0};  // A24
  d.forms.forms[static_cast<std::size_t>(d.graph.edge_index(1, 2))] = {0, 1};  // A23
  d.orientation.signs.assign(4, 0);
  auto set_sign = [&](int a, int b, int s) {
    d.orientation.signs[static_cast<std::size_t>(d.graph.edge_index(a, b))] =
        static_cast<std::int8_t>(s);
  };
  set_sign(0, 2, +1);  // s^{13} = +1
  set_sign(1, 3, -1);  // s^{24} = -1
  set_sign(1, 2, +1);  // s^{23} = +1
  set_sign(0, 3, -1);  // s^{14} = -1
  d.gamma.assign(4, 1.0);
  return d;
}

}  // namespace

TEST_CASE("cycle transforms at zero rapidity") {
  CycleTransform t{1, 1, 0.0};
  auto [a24, a23] = apply_cycle_transform({1, 0}, {0, 1}, t, CycleOrientationClass::NonBipartite);
  CHECK(a24 == Vec{1, 0});
  CHECK(a23 == Vec{0, -1});

  auto [b24, b23] = apply_cycle_transform({1, 0}, {0, 1}, t, CycleOrientationClass::Bipartite);
  CHECK(b24 == Vec{0, 1});
  CHECK(b23 == Vec{1, 0});

  CHECK_THROWS_AS(
      apply_cycle_transform({1, 0}, {0, 1}, t, CycleOrientationClass::Invalid),
      VerifierError);
}

TEST_CASE("wedge identities hold for 1000 random transform draws") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> theta(-3.0, 3.0);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::bernoulli_distribution coin;
  for (int trial = 0; trial < 1000; ++trial) {
    Vec a13{coord(rng), coord(rng)};
    Vec a14{coord(rng), coord(rng)};
    if (std::abs(det2(a13, a14)) < 1e-3) continue;  // need an independent base
    CycleTransform t{coin(rng) ? 1 : -1, coin(rng) ? 1 : -1, theta(rng)};

    auto [n24, n23] = apply_cycle_transform(a13, a14, t, CycleOrientationClass::NonBipartite);
    CHECK(std::abs(det2(n23, n24) - t.r * det2(a13, a14)) <= 1e-12 * 64);
    CHECK(std::abs(det2(a14, n24) - t.r * det2(a13, n23)) <= 1e-12 * 64);

    auto [b24, b23] = apply_cycle_transform(a13, a14, t, CycleOrientationClass::Bipartite);
    CHECK(std::abs(det2(b23, b24) - t.r * det2(a13, a14)) <= 1e-12 * 64);
    CHECK(std::abs(det2(a14, b24) + t.r * det2(a13, b23)) <= 1e-12 * 64);
  }
}

TEST_CASE("transform-generated forms reduce the wedge sum to the magnitude equation") {
  // On a 4-cycle with forms related by a cycle transform, the multipath sum
  // for pair (1,2) collapses to (sqrt(g13 g23) + r sqrt(g14 g24)) A13^A23
  // for the non-bipartite kind, and with -r for the bipartite kind on the
  // companion pair, which is exactly the scalar magnitude equation.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> theta(-2.0, 2.0);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> mag(0.2, 3.0);
  std::bernoulli_distribution coin;
  for (int trial = 0; trial < 200; ++trial) {
    Vec a13{coord(rng), coord(rng)}, a14{coord(rng), coord(rng)};
    if (std::abs(det2(a13, a14)) < 1e-3) continue;
    CycleTransform t{coin(rng) ? 1 : -1, coin(rng) ? 1 : -1, theta(rng)};
    auto kind = coin(rng) ? CycleOrientationClass::NonBipartite
                          : CycleOrientationClass::Bipartite;
    auto [a24, a23] = apply_cycle_transform(a13, a14, t, kind);

    MTLZData d;
    d.graph = cycle_1324();
    d.forms.dim = 2;
    d.forms.forms.resize(4);
    d.forms.forms[static_cast<std::size_t>(d.graph.edge_index(0, 2))] = a13;
    d.forms.forms[static_cast<std::size_t>(d.graph.edge_index(0, 3))] = a14;
    d.forms.forms[static_cast<std::size_t>(d.graph.edge_index(1, 3))] = a24;
    d.forms.forms[static_cast<std::size_t>(d.graph.edge_index(1, 2))] = a23;
    d.orientation.signs.assign(4, 1);
    d.gamma = {mag(rng), mag(rng), mag(rng), mag(rng)};
    auto gam = [&](int a, int b) {
      return d.gamma[static_cast<std::size_t>(d.graph.edge_index(a, b))];
    };

    auto rep = check_multipath_property(d, 1e-9);
    for (const auto& item : rep.items) {
      // both diagonal pairs carry r for the non-bipartite kind; the
      // bipartite kind flips the sign on the (1,2) pair
      bool pair12 = item.subject == std::vector<int>{0, 1};
      double w = pair12 ? std::abs(det2(a13, a23)) : std::abs(det2(a13, a14));
      double r_eff =
          (!pair12 || kind == CycleOrientationClass::NonBipartite) ? t.r : -t.r;
      double expected = pair12 ? std::abs(std::sqrt(gam(0, 2) * gam(1, 2)) +
                                          r_eff * std::sqrt(gam(0, 3) * gam(1, 3))) *
                                     w
                               : std::abs(std::sqrt(gam(0, 2) * gam(0, 3)) +
                                          r_eff * std::sqrt(gam(1, 2) * gam(1, 3))) *
                                     w;
      CHECK(item.residual == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("fundamental cycles span the cycle space") {
  Graph q3 = build("Q(3)");
  auto cycles = fundamental_cycles(q3);
  CHECK(cycles.size() == static_cast<std::size_t>(q3.edge_count() - q3.vertex_count() + 1));
  for (const auto& cyc : cycles) {
    CHECK(cyc.size() >= 4);
    for (std::size_t i = 0; i < cyc.size(); ++i)
      CHECK(q3.adjacent(cyc[i], cyc[(i + 1) % cyc.size()]));
  }
}

TEST_CASE("the 4-cycle full data set passes both identities") {
  MTLZData d = c4_data();
  CHECK(check_cycle_property(d, 1e-12).max_residual == 0.0);
  CHECK(check_multipath_property(d, 1e-12).max_residual == 0.0);
}

TEST_CASE("flipping any single sign breaks the cycle property") {
  for (std::size_t e = 0; e < 4; ++e) {
    MTLZData d = c4_data();
    d.orientation.signs[e] = static_cast<std::int8_t>(-d.orientation.signs[e]);
    CHECK(check_cycle_property(d, 1e-12).max_residual == 2.0);
  }
}

TEST_CASE("uniform signs fail the cycle property with residual 2") {
  MTLZData d = c4_data();
  d.orientation.signs.assign(4, 1);
  CHECK(check_cycle_property(d, 1e-12).max_residual == 2.0);
}

TEST_CASE("a triangle cannot satisfy the cycle property") {
  MTLZData d;
  d.graph = Graph::from_edges(3, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}});
  d.forms.dim = 2;
  d.forms.forms = {{1, 0}, {0, 1}, {1, 1}};
  d.gamma.assign(3, 1.0);
  double best = 1e300;
  for (int mask = 0; mask < 8; ++mask) {
    d.orientation.signs = {static_cast<std::int8_t>(mask & 1 ? 1 : -1),
                           static_cast<std::int8_t>(mask & 2 ? 1 : -1),
                           static_cast<std::int8_t>(mask & 4 ? 1 : -1)};
    best = std::min(best, check_cycle_property(d, 1e-12).max_residual);
  }
  CHECK(best >= 1.0);
}

TEST_CASE("a single-path pair necessarily fails the multipath property") {
  MTLZData d;
  d.graph = Graph::from_edges(3, {Edge{0, 1}, Edge{1, 2}});  // path, one 2-path
  d.forms.dim = 2;
  d.forms.forms = {{1, 0}, {0, 1}};
  d.orientation.signs.assign(2, 1);
  d.gamma.assign(2, 1.0);
  CHECK(check_multipath_property(d, 1e-12).max_residual == 1.0);
}

TEST_CASE("constructed fan data passes both identities") {
  // K_{2,3} with hubs 0,1 and spokes 2,3,4. Boost forms at distinct
  // rapidities; the third spoke swaps roles and carries doubled gamma.
  Graph g = build("K(2,3)");
  MTLZData d;
  d.graph = g;
  d.forms.dim = 2;
  d.forms.forms.resize(6);
  d.orientation.signs.assign(6, 0);
  d.gamma.assign(6, 1.0);
  const double t1 = 0.3, t2 = -0.7, t3 = 0.2;
  auto form = [&](int a, int b) -> Vec& {
    return d.forms.forms[static_cast<std::size_t>(g.edge_index(a, b))];
  };
  auto sign = [&](int a, int b) -> std::int8_t& {
    return d.orientation.signs[static_cast<std::size_t>(g.edge_index(a, b))];
  };
  form(0, 2) = {std::cosh(t1), std::sinh(t1)};
  form(1, 2) = {std::sinh(t1), std::cosh(t1)};
  form(0, 3) = {std::cosh(t2), std::sinh(t2)};
  form(1, 3) = {std::sinh(t2), std::cosh(t2)};
  form(0, 4) = {std::sinh(t3), std::cosh(t3)};
  form(1, 4) = {std::cosh(t3), std::sinh(t3)};
  // arrows: 0->2, 0->3, 1->2, 1->3, 4->0, 4->1
  sign(0, 2) = -1;
  sign(0, 3) = -1;
  sign(1, 2) = -1;
  sign(1, 3) = -1;
  sign(0, 4) = +1;
  sign(1, 4) = +1;
  d.gamma[static_cast<std::size_t>(g.edge_index(0, 4))] = 2.0;
  d.gamma[static_cast<std::size_t>(g.edge_index(1, 4))] = 2.0;

  CHECK(check_cycle_property(d, 1e-12).pass(1e-12));
  CHECK(check_multipath_property(d, 1e-12).pass(1e-12));
}

TEST_CASE("validation rejects incomplete data") {
  MTLZData d = c4_data();
  d.gamma.pop_back();
  CHECK_THROWS_AS(check_multipath_property(d, 1e-9), VerifierError);
  MTLZData d2 = c4_data();
  d2.forms.forms[0] = {1, 0, 0};
  CHECK_THROWS_AS(check_cycle_property(d2, 1e-9), VerifierError);
}
