#include <random>

#include "doctest.h"
#include "roundness/error.hpp"
#include "roundness/group.hpp"

using namespace roundness;

namespace {

GroupElement random_element(const Group& g, std::mt19937_64& rng, int max_len = 6) {
  auto gens = g.standard_generators();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(0, max_len);
  std::bernoulli_distribution flip(0.5);
  auto acc = g.identity();
  for (int i = len(rng); i > 0; --i) {
    const auto& s = gens[pick(rng)];
    acc = g.multiply(acc, flip(rng) ? s : g.inverse(s));
  }
  return acc;
}

const std::vector<std::string> kSpecs = {"Z^1", "Z^2", "Z^3", "Z/8", "Z/9", "F_2", "F_3",
                                         "Z/2 * Z/3", "Z * Z/4", "D_5", "D_6", "Z^1 x Z/2",
                                         "Z/4 x Z/6", "F_2 x Z/3"};

}  // namespace

TEST_CASE("basic arithmetic") {
  Group z2(GroupSpec::free_abelian(2));
  CHECK(z2.multiply(z2.parse("(1,0)"), z2.parse("(0,1)")) == z2.parse("(1,1)"));

  Group f2(GroupSpec::free(2));
  auto x = f2.parse("x");
  CHECK(f2.multiply(x, f2.inverse(x)) == f2.identity());
  CHECK(f2.format(f2.parse("y^-1*x")) == "y^-1*x");
  CHECK(f2.format(f2.parse("x*y*y^-1*x")) == "x^2");

  Group z8(GroupSpec::cyclic(8));
  CHECK(z8.multiply(z8.parse("5"), z8.parse("5")) == z8.parse("2"));
  CHECK(z8.parse("-3") == z8.parse("5"));
}

TEST_CASE("spec strings round-trip") {
  for (const auto& s : kSpecs) CHECK(to_string(parse_group_spec(s)) == s);
  CHECK(parse_group_spec("Z") == GroupSpec::free_abelian(1));
  CHECK(parse_group_spec("Z * Z") == GroupSpec::free_product({0, 0}));
  CHECK(parse_group_spec("Z/2 * Z/3").orders == std::vector<long long>{2, 3});
}

TEST_CASE("spec and element errors") {
  CHECK_THROWS_AS(parse_group_spec("Q"), Error);
  try {
    parse_group_spec("Z/x");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  try {
    parse_group_spec("Z/1");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParameter);
  }
  Group z2(GroupSpec::free_abelian(2));
  Group z3(GroupSpec::free_abelian(3));
  try {
    z2.multiply(z2.parse("(1,0)"), z3.parse("(1,0,0)"));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecMismatch);
  }
  try {
    z2.parse("(1,2,3)");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecMismatch);
  }
  Group f2(GroupSpec::free(2));
  CHECK_THROWS_AS(f2.parse("q"), Error);
}

TEST_CASE("free products of cyclic groups") {
  Group g(parse_group_spec("Z/2 * Z/3"));
  auto x = g.parse("x");
  auto y = g.parse("y");
  CHECK(g.multiply(x, x) == g.identity());
  CHECK(g.power(y, 3) == g.identity());
  CHECK(g.inverse(y) == g.parse("y^2"));
  CHECK(g.order(x) == 2);
  CHECK(g.order(y) == 3);
  CHECK_FALSE(g.order(g.multiply(x, y)).has_value());
  auto conj = g.multiply(g.multiply(y, x), g.inverse(y));
  CHECK(g.order(conj) == 2);
  CHECK(g.format(conj) == "y*x*y^2");
  CHECK_FALSE(g.size().has_value());
}

TEST_CASE("dihedral arithmetic") {
  Group d4(GroupSpec::dihedral(4));
  auto r = d4.parse("r");
  auto s = d4.parse("s");
  CHECK(d4.power(r, 4) == d4.identity());
  CHECK(d4.multiply(d4.multiply(s, r), s) == d4.inverse(r));
  CHECK(d4.order(s) == 2);
  CHECK(d4.order(r) == 4);
  CHECK(d4.order(d4.parse("r^2")) == 2);
  CHECK(d4.size() == 8);
  CHECK(d4.format(d4.multiply(r, s)) == "r*s");
}

TEST_CASE("direct products") {
  Group g(parse_group_spec("Z^1 x Z/2"));
  auto a = g.parse("(1;1)");
  CHECK(g.multiply(a, a) == g.parse("(2;0)"));
  CHECK(g.order(g.parse("(0;1)")) == 2);
  CHECK_FALSE(g.order(a).has_value());
  CHECK(g.format(a) == "(1;1)");
  Group h(parse_group_spec("Z/4 x Z/6"));
  CHECK(h.order(h.parse("(1;1)")) == 12);
  CHECK(h.size() == 24);
}

TEST_CASE("element orders") {
  Group z9(GroupSpec::cyclic(9));
  CHECK(z9.order(z9.parse("3")) == 3);
  CHECK(z9.order(z9.parse("2")) == 9);
  CHECK(z9.order(z9.identity()) == 1);
  Group f2(GroupSpec::free(2));
  CHECK_FALSE(f2.order(f2.parse("x*y*x^-1")).has_value());
  CHECK(f2.order(f2.identity()) == 1);
  Group z2(GroupSpec::free_abelian(2));
  CHECK_FALSE(z2.order(z2.parse("(0,1)")).has_value());
}

TEST_CASE("group axioms hold on random elements") {
  std::mt19937_64 rng(7);
  for (const auto& s : kSpecs) {
    CAPTURE(s);
    Group g(parse_group_spec(s));
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_element(g, rng);
      auto b = random_element(g, rng);
      auto c = random_element(g, rng);
      CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
      CHECK(g.multiply(a, g.identity()) == a);
      CHECK(g.multiply(g.identity(), a) == a);
      CHECK(g.multiply(a, g.inverse(a)) == g.identity());
      CHECK(g.inverse(g.inverse(a)) == a);
      CHECK(g.parse(g.format(a)) == a);
      CHECK(GroupElementHash{}(g.parse(g.format(a))) == GroupElementHash{}(a));
      auto p3 = g.multiply(g.multiply(a, a), a);
      CHECK(g.power(a, 3) == p3);
      CHECK(g.power(a, -3) == g.inverse(p3));
      if (auto o = g.order(a)) {
        CHECK(g.power(a, *o) == g.identity());
        for (long long d = 1; d < *o; ++d) CHECK(g.power(a, d) != g.identity());
      }
    }
  }
}

TEST_CASE("top-level splitting") {
  CHECK(split_top_level("(1,0),(0,1)") == std::vector<std::string>{"(1,0)", "(0,1)"});
  CHECK(split_top_level("x, y ,y^-1*x") == std::vector<std::string>{"x", "y", "y^-1*x"});
}
