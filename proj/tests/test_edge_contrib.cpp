#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwloc/edge_contrib.hpp"
#include "gwloc/generators.hpp"
#include "gwloc/oracles.hpp"

using namespace gwloc;

namespace {

int find_edge(const ActionSpec& spec, const std::string& a, const std::string& b) {
  for (std::size_t i = 0; i < spec.edges.size(); ++i)
    if (spec.components[spec.edges[i].from].id == a && spec.components[spec.edges[i].to].id == b)
      return static_cast<int>(i);
  throw std::runtime_error("edge not found");
}

RF scalar_part(const LocalClass& c) {
  return c.psi_coeff(0, 0).coeff(c.ring()->unit_index());
}

}  // namespace

TEST_CASE("edge K-class summand counts") {
  ActionSpec p1 = projective_space_spec(1, {0, 1});
  SUBCASE("P1 primitive: one Q+ and one Q- summand") {
    EdgeInputs in = make_edge_inputs(p1, find_edge(p1, "0", "1"), 1, 0);
    auto ks = edge_kclass(in);
    CHECK(ks.items.size() == 2);
    CHECK(ks.items[0].kind == KSummand::QPlusSource);
    CHECK(ks.items[1].kind == KSummand::QMinusSink);
  }
  SUBCASE("P1 double cover: l in {0,1} on each side") {
    EdgeInputs in = make_edge_inputs(p1, find_edge(p1, "0", "1"), 2, 0);
    auto ks = edge_kclass(in);
    CHECK(ks.items.size() == 4);
  }
  SUBCASE("P2 (0,5) primitive: summand count = number of contributing sections") {
    ActionSpec p2 = projective_space_spec(2, {0, 1, 5});
    EdgeInputs in = make_edge_inputs(p2, find_edge(p2, "0", "2"), 1, 0);
    auto ks = edge_kclass(in);
    // sections: {t, 5t} at the source, {-4t, -5t} at the sink
    CHECK(ks.items.size() == 4);
    CHECK(in.cover_n == 1);
    CHECK(in.cover_m == 5);
  }
}

TEST_CASE("edge Euler class: closed formula") {
  ActionSpec p1 = projective_space_spec(1, {0, 1});
  int e01 = find_edge(p1, "0", "1");
  SUBCASE("primitive edge on the point carrier: -t^2") {
    EdgeInputs in = make_edge_inputs(p1, e01, 1, 0);
    CHECK(scalar_part(edge_euler(in)) == RF::t_power(Rational(-1), 2));
  }
  SUBCASE("double cover: t^4/4") {
    EdgeInputs in = make_edge_inputs(p1, e01, 2, 0);
    CHECK(scalar_part(edge_euler(in)) == RF::t_power(Rational(1, 4), 4));
  }
  SUBCASE("rank-0 inputs: empty product = 1") {
    EdgeInputs in = make_edge_inputs(p1, e01, 1, 0);
    in.source_plus.clear();
    in.sink_minus.clear();
    CHECK(edge_euler(in) == LocalClass::unit(in.carrier, 0));
  }
  SUBCASE("psi terms appear at positive truncation bound") {
    EdgeInputs in = make_edge_inputs(p1, e01, 2, 2);
    LocalClass e = edge_euler(in);
    // factor (t/2 - psi1/2) contributes a psi1 coefficient
    CHECK_FALSE(e.psi_coeff(1, 0).is_zero());
    CHECK(scalar_part(e) == RF::t_power(Rational(1, 4), 4));
  }
}

TEST_CASE("edge Euler equals the classical oracle on every edge, d = 1..3") {
  ActionSpec p1 = projective_space_spec(1, {0, 1});
  ActionSpec p2 = projective_space_spec(2, {0, 1, 5});
  struct Case {
    const ActionSpec* spec;
    std::vector<long> weights;
  } cases[] = {{&p1, {0, 1}}, {&p2, {0, 1, 5}}};
  for (const auto& c : cases)
    for (std::size_t ei = 0; ei < c.spec->edges.size(); ++ei)
      for (long d = 1; d <= 3; ++d) {
        const auto& ge = c.spec->edges[ei];
        CAPTURE(c.spec->components[ge.from].id);
        CAPTURE(c.spec->components[ge.to].id);
        CAPTURE(d);
        RF oracle = classical_edge_euler(c.weights, std::stoi(c.spec->components[ge.from].id),
                                         std::stoi(c.spec->components[ge.to].id), d);
        EdgeInputs in = make_edge_inputs(*c.spec, static_cast<int>(ei), d, 0);
        CHECK(scalar_part(edge_euler(in)) == oracle);
      }
}

TEST_CASE("Euler class is multiplicative over the K-class sum") {
  ActionSpec p2 = projective_space_spec(2, {0, 1, 5});
  for (long d : {1L, 2L, 3L}) {
    EdgeInputs in = make_edge_inputs(p2, find_edge(p2, "1", "2"), d, 2);
    auto ks = edge_kclass(in);
    LocalClass product = LocalClass::unit(in.carrier, in.psi_bound);
    LocalClass denom = LocalClass::unit(in.carrier, in.psi_bound);
    for (const auto& s : ks.items)
      (s.sign > 0 ? product : denom) *= euler_of_summand(in, s);
    CHECK(product * denom.invert() == edge_euler(in));
  }
}

TEST_CASE("non-generic edges are detected") {
  ActionSpec p2 = projective_space_spec(2, {0, 1, 5});
  // the 5-fold cover of the (0,5) line has a fixed transverse section
  EdgeInputs in = make_edge_inputs(p2, find_edge(p2, "0", "2"), 5, 0);
  CHECK_THROWS_WITH_AS(edge_euler(in), doctest::Contains("non-generic"), EdgeError);
}

TEST_CASE("fixed virtual class") {
  ActionSpec p1 = projective_space_spec(1, {0, 1});
  SUBCASE("isolated edge: unit class") {
    EdgeInputs in = make_edge_inputs(p1, 0, 1, 0);
    auto fc = edge_fixed_class(in);
    CHECK(fc.value == RingClass::unit(in.carrier));
    CHECK(fc.provenance == "isolated");
  }
  SUBCASE("product generic edge: fundamental class of Y") {
    ActionSpec y = trivial_spec(GradedRing::projective_ring(1), 1, {Rational(2)}, {{Rational(1)}});
    ActionSpec xy = product_spec(p1, y);
    EdgeInputs in = make_edge_inputs(xy, 0, 1, 0);
    auto fc = edge_fixed_class(in);
    CHECK(fc.value == RingClass::unit(in.carrier));
    CHECK(fc.provenance == "fundamental");
  }
  SUBCASE("non-generic omega without declared datum errors") {
    ActionSpec y = trivial_spec(GradedRing::projective_ring(1), 1, {Rational(2)}, {{Rational(1)}});
    ActionSpec xy = product_spec(p1, y);
    EdgeInputs in = make_edge_inputs(xy, 0, 1, 0);
    in.cover_m = 3;  // pretend a fractional cover
    CHECK_THROWS_WITH_AS(edge_fixed_class(in), doctest::Contains("declared"), EdgeError);
    in.declared_fixed_class = RingClass::unit(in.carrier);
    CHECK(edge_fixed_class(in).provenance == "declared");
  }
}

TEST_CASE("c_operator") {
  ActionSpec p1 = projective_space_spec(1, {0, 1});
  EdgeInputs in = make_edge_inputs(p1, 0, 1, 0);
  RingClass one = RingClass::unit(in.source_ring);
  SUBCASE("primitive edge, alpha = 1, n1 = n2 = 0: -1/t^2 on the sink") {
    RingClass out = c_operator(in, 0, 0, one);
    CHECK(out == RingClass::scalar(in.sink_ring, RF::t_power(Rational(-1), -2)));
  }
  SUBCASE("psi power beyond the truncation bound: 0") {
    CHECK(c_operator(in, 9, 0, one).is_zero());
  }
  SUBCASE("alpha = 0: 0 by linearity") {
    CHECK(c_operator(in, 0, 0, RingClass::zero(in.source_ring)).is_zero());
  }
  SUBCASE("pushforward path consistency") {
    // integrate(c_operator numerator) == integrate([M]^vir / euler)
    RingClass out = c_operator(in, 0, 0, one);
    RF direct = (LocalClass::from_ring_class(edge_fixed_class(in).value, 0) *
                 edge_euler(in).invert())
                    .psi_coeff(0, 0)
                    .integrate();
    CHECK(out.integrate() == direct);
  }
}

TEST_CASE("blow-up tangent delta") {
  SUBCASE("ordinary surface point blow-up: c1 = -[E]") {
    auto d = blowup_tangent_delta({{1, 2}});
    CHECK(d.rank() == 0);
    CHECK(d.c1_multiple() == Rational(-1));
  }
  SUBCASE("blow-up along a divisor: c1 = 0") {
    auto d = blowup_tangent_delta({{1, 1}});
    CHECK(d.c1_multiple() == Rational(0));
  }
  SUBCASE("weights {1,2}, ranks {1,1}: c1 = -2[E]") {
    auto d = blowup_tangent_delta({{1, 1}, {2, 1}});
    CHECK(d.c1_multiple() == Rational(-2));
    CHECK(d.rank() == 0);
    // summand inventory: O_E(E) + 1 + 2 subtracted pieces
    CHECK(d.items.size() == 4);
  }
}
