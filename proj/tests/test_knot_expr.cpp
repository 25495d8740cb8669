#include <numeric>
#include <random>

#include "doctest.h"
#include "knotgeo/knot_expr.hpp"

using namespace knotgeo;

namespace {

KnotExpr torus(std::int64_t c, std::int64_t p, std::int64_t q) {
  KnotExpr k;
  k.terms.push_back(Term{c, TorusKnot{p, q}});
  return k;
}

}  // namespace

TEST_CASE("parse: single torus knot") {
  const KnotExpr k = parse("T(2,3)");
  REQUIRE(k.terms.size() == 1);
  CHECK(k.terms[0].coefficient == 1);
  CHECK(std::get<TorusKnot>(k.terms[0].base) == TorusKnot{2, 3});
}

TEST_CASE("parse: coefficients, mirrors and sums") {
  const KnotExpr k = parse("2*T(5,9) # -3*T(5,13)");
  REQUIRE(k.terms.size() == 2);
  CHECK(k.terms[0].coefficient == 2);
  CHECK(std::get<TorusKnot>(k.terms[0].base) == TorusKnot{5, 9});
  CHECK(k.terms[1].coefficient == -3);
  CHECK(std::get<TorusKnot>(k.terms[1].base) == TorusKnot{5, 13});
}

TEST_CASE("parse: whitespace-insensitive, plus signs, named knots") {
  CHECK(parse("  T( 2 , 3 )#+ 2*4_1 ") == parse("T(2,3) # 2*4_1"));
  const KnotExpr named = parse("4_1");
  CHECK(std::get<NamedKnot>(named.terms[0].base).name == "4_1");
  CHECK(parse("U").terms.size() == 1);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("T(2,4)"), parse_error);     // gcd != 1
  CHECK_THROWS_AS(parse("T(0,5)"), parse_error);     // p < 1
  CHECK_THROWS_AS(parse("T(2,3) #"), parse_error);   // dangling '#'
  CHECK_THROWS_AS(parse("3_1"), parse_error);        // unknown name
  CHECK_THROWS_AS(parse("17"), parse_error);         // bare integer
  CHECK_THROWS_AS(parse(""), parse_error);
  CHECK_THROWS_AS(parse("--T(2,3)"), parse_error);
  CHECK_THROWS_AS(parse("2000000*T(2,3)"), parse_error);  // coefficient bound
  CHECK_THROWS_AS(parse("T(2,3000001)"), parse_error);    // index bound
  try {
    parse("T(2,3) @ T(2,5)");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.position == 7);  // offset of the offending separator
  }
}

TEST_CASE("normalize: index symmetry, unknot, merging") {
  CHECK(normalize(torus(1, 3, 2)) == torus(1, 2, 3));
  CHECK(normalize(torus(1, 1, 7)).is_unknot());
  CHECK(normalize(parse("U")).is_unknot());

  // T(2,3) # -T(2,3): coefficients merge to zero, leaving the empty sum.
  CHECK(normalize(parse("T(2,3) # -T(2,3)")).is_unknot());

  KnotExpr merged = normalize(parse("T(3,2) # 2*T(2,3) # 4_1"));
  REQUIRE(merged.terms.size() == 2);
  CHECK(merged.terms[0].coefficient == 3);
  CHECK(std::get<TorusKnot>(merged.terms[0].base) == TorusKnot{2, 3});
  CHECK(std::get<NamedKnot>(merged.terms[1].base).name == "4_1");
}

TEST_CASE("normalize: canonical order is (p,q) then name") {
  const KnotExpr k = normalize(parse("4_1 # T(5,9) # T(2,7)"));
  REQUIRE(k.terms.size() == 3);
  CHECK(std::get<TorusKnot>(k.terms[0].base) == TorusKnot{2, 7});
  CHECK(std::get<TorusKnot>(k.terms[1].base) == TorusKnot{5, 9});
  CHECK(std::get<NamedKnot>(k.terms[2].base).name == "4_1");
}

TEST_CASE("mirror: involution, coefficient negation, unknot fixed") {
  const KnotExpr k = normalize(parse("2*T(5,9) # -3*T(5,13)"));
  CHECK(mirror(mirror(k)) == k);
  CHECK(mirror(k).terms[0].coefficient == -2);
  CHECK(mirror(k).terms[1].coefficient == 3);
  CHECK(mirror(KnotExpr{}).is_unknot());
  CHECK(normalize(mirror(k)) == mirror(normalize(k)));
}

TEST_CASE("to_text: canonical rendering") {
  CHECK(to_text(normalize(parse("T(2,3)"))) == "T(2,3)");
  CHECK(to_text(normalize(parse("-T(2,3)"))) == "-T(2,3)");
  CHECK(to_text(normalize(parse("2*T(5,9) # -3*T(5,13)"))) == "2*T(5,9) # -3*T(5,13)");
  CHECK(to_text(KnotExpr{}) == "U");
}

TEST_CASE("property: parse/to_text round-trip and normalize idempotence") {
  std::mt19937 rng(20240917);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> n_terms(0, 4);
  std::uniform_int_distribution<int> pick(0, 5);
  const TorusKnot pool[] = {{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}, {5, 9}};

  for (int iter = 0; iter < 300; ++iter) {
    KnotExpr k;
    const int t = n_terms(rng);
    for (int i = 0; i < t; ++i) {
      int c = coeff(rng);
      if (c == 0) c = 1;
      if (pick(rng) == 0) k.terms.push_back(Term{c, NamedKnot{"4_1"}});
      else k.terms.push_back(Term{c, pool[pick(rng)]});
    }
    const KnotExpr n = normalize(k);
    CHECK(normalize(n) == n);
    CHECK(normalize(parse(to_text(n))) == n);
    CHECK(mirror(mirror(n)) == n);
    CHECK(normalize(mirror(k)) == mirror(normalize(k)));
  }
}

TEST_CASE("normalize(T(q,p)) equals normalize(T(p,q)) for coprime pairs") {
  for (std::int64_t p = 1; p <= 12; ++p)
    for (std::int64_t q = 1; q <= 12; ++q) {
      if (std::gcd(p, q) != 1) continue;
      CHECK(normalize(torus(1, p, q)) == normalize(torus(1, q, p)));
    }
}
