#include <numeric>

#include "doctest.h"
#include "knotgeo/geography.hpp"
#include "knotgeo/invariants.hpp"

using namespace knotgeo;

namespace {

const Registry& reg() {
  static const Registry r = Registry::builtin();
  return r;
}

KnotExpr expr(const std::string& text) {
  const auto names = reg().known_names();
  return normalize(parse(text, &names));
}

}  // namespace

TEST_CASE("signature_torus: anchors") {
  CHECK(signature_torus(2, 3) == -2);
  CHECK(signature_torus(3, 7) == -8);
  CHECK(signature_torus(5, 9) == -24);
  CHECK(signature_torus(5, 13) == -32);
  CHECK(signature_torus(3, 4) == -6);
  CHECK(signature_torus(3, 5) == -8);
  CHECK_THROWS_AS(signature_torus(2, 4), std::domain_error);
  CHECK_THROWS_AS(signature_torus(1, 5), std::domain_error);
}

TEST_CASE("signature_torus matches -(n-1) for T(2,n)") {
  for (std::int64_t n = 3; n <= 199; n += 2)
    CHECK(signature_torus(2, n) == -(n - 1));
}

TEST_CASE("signature_torus matches the recursion oracle and closed forms for T(3,n)") {
  for (std::int64_t n = 2; n <= 200; ++n) {
    if (n % 3 == 0) continue;
    const BigInt got = signature_torus(3, n);
    CHECK(got == signature_torus_oracle(3, n));
    BigInt closed;
    switch (n % 6) {
      case 1: closed = (-4 * n + 4) / 3; break;
      case 2: closed = (-4 * n + 2) / 3; break;
      case 4: closed = (-4 * n - 2) / 3; break;
      case 5: closed = (-4 * n - 4) / 3; break;
    }
    CHECK(got == closed);
    CHECK(got % 2 == 0);
  }
}

TEST_CASE("signature oracle anchors and domain") {
  CHECK(signature_torus_oracle(2, 9) == -8);
  CHECK(signature_torus_oracle(3, 8) == -10);
  CHECK(signature_torus_oracle(3, 5) == -8);
  CHECK_THROWS_AS(signature_torus_oracle(5, 9), std::domain_error);
}

TEST_CASE("upsilon1_torus: anchors") {
  CHECK(upsilon1_torus(3, 4).value == -2);
  CHECK(upsilon1_torus(5, 13).value == -15);
  CHECK(upsilon1_torus(5, 9).value == -10);
  CHECK(upsilon1_torus(2, 7).value == -3);
  CHECK(upsilon1_torus(1, 9).value == 0);
  CHECK_FALSE(upsilon1_torus(5, 13).extrapolated);
  CHECK(upsilon1_torus(6, 7).extrapolated);
  CHECK(upsilon1_torus(7, 9).extrapolated);
  CHECK_THROWS_AS(upsilon1_torus(2, 4), std::domain_error);
}

TEST_CASE("upsilon1_torus: alternating property for T(2,n), closed form for T(3,n)") {
  for (std::int64_t n = 3; n <= 399; n += 2)
    CHECK(upsilon1_torus(2, n).value == Rational(signature_torus_oracle(2, n)) / 2);
  for (std::int64_t n = 2; n <= 400; ++n) {
    if (n % 3 == 0) continue;
    const Rational closed = (n % 3 == 1) ? Rational(-2 * n + 2, 3) : Rational(-2 * n + 1, 3);
    CHECK(upsilon1_torus(3, n).value == closed);
  }
}

TEST_CASE("determinant: anchors and multiplicativity") {
  CHECK(determinant(expr("T(2,3)"), reg()) == 3);
  CHECK(determinant(expr("T(5,9)"), reg()) == 1);
  CHECK(determinant(KnotExpr{}, reg()) == 1);
  CHECK(determinant(expr("4_1"), reg()) == 5);

  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{2, 5}, {3, 8}, {4, 7}}) {
    // |Delta(-1)| from the polynomial route equals the closed form.
    CHECK(determinant(KnotExpr{{Term{1, TorusKnot{p, q}}}}, reg()) ==
          boost::multiprecision::abs(alexander_torus(p, q).evaluate_at_minus_one()));
  }

  const BigInt lhs = determinant(expr("2*T(2,5) # -T(2,7) # 4_1"), reg());
  CHECK(lhs == BigInt(5) * 5 * 7 * 5);
  CHECK(lhs % 2 == 1);
  CHECK(determinant(mirror(expr("2*T(2,5) # 4_1")), reg()) ==
        determinant(expr("2*T(2,5) # 4_1"), reg()));
}

TEST_CASE("arf: anchors and mod-2 additivity on T(2,n) pairs") {
  CHECK(arf(expr("T(2,3)"), reg()) == 1);
  CHECK(arf(expr("T(2,7)"), reg()) == 0);
  CHECK(arf(KnotExpr{}, reg()) == 0);
  CHECK(arf(expr("4_1"), reg()) == 1);

  // Arf from the multiplicative determinant is mod-2 additive; exhaust pairs.
  for (std::int64_t a = 3; a <= 33; a += 2) {
    for (std::int64_t b = a; b <= 33; b += 2) {
      KnotExpr sum;
      sum.terms.push_back(Term{1, TorusKnot{2, a}});
      sum.terms.push_back(Term{1, TorusKnot{2, b}});
      const int lhs = arf(sum, reg());
      const int rhs = (arf(expr("T(2," + std::to_string(a) + ")"), reg()) +
                       arf(expr("T(2," + std::to_string(b) + ")"), reg())) %
                      2;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("signature of expressions") {
  CHECK(signature(expr("-T(2,3)"), reg()) == 2);
  CHECK(signature(expr("2*T(5,9) # -3*T(5,13)"), reg()) == 48);  // sigma/2 = 4c+16, c=2
  CHECK(signature(KnotExpr{}, reg()) == 0);
  CHECK(signature(expr("4_1"), reg()) == 0);
}

TEST_CASE("upsilon1 of expressions") {
  CHECK(upsilon1(expr("T(5,9) # -2*T(5,13)"), reg()).value == 20);  // 5c+15 at c=1
  CHECK(upsilon1(expr("4_1"), reg()).value == 0);
  CHECK(upsilon1(KnotExpr{}, reg()).value == 0);
}

TEST_CASE("genus4_upper") {
  CHECK(genus4_upper(expr("T(2,7)"), reg()) == 3);
  CHECK(genus4_upper(expr("T(3,5)"), reg()) == 4);
  CHECK(genus4_upper(expr("T(5,9)"), reg()) == 16);
  CHECK(genus4_upper(expr("T(5,9)"), reg()) * 2 >= 24);  // >= |sigma|/2 sanity
}

TEST_CASE("delta_lookup") {
  CHECK(delta_lookup(expr("T(5,9)"), reg()) == Rational(4));
  CHECK(delta_lookup(expr("2*T(5,9) # -3*T(5,13)"), reg()) == Rational(-4));
  CHECK_FALSE(delta_lookup(expr("T(2,3)"), reg()).has_value());
  CHECK_FALSE(delta_lookup(expr("T(5,9) # T(2,3)"), reg()).has_value());
  CHECK(delta_lookup(expr("-T(5,9)"), reg()) == Rational(-4));
}

TEST_CASE("bundle: trefoil anchor") {
  const InvariantBundle b = bundle(expr("T(2,3)"), reg());
  CHECK(b.sigma == -2);
  CHECK(b.upsilon1 == -1);
  CHECK(b.arf == 1);
  CHECK(b.det == 3);
  CHECK_FALSE(b.delta.has_value());
  CHECK(b.g4_upper == 1);
  CHECK(b.gamma4_upper == 1);
  // apexes contain the Moebius point and both genus points
  auto has = [&](std::int64_t e, std::int64_t h) {
    for (const Apex& a : b.apexes)
      if (a.point == LatticePoint{e, h}) return true;
    return false;
  };
  CHECK(has(-6, 1));
  CHECK(has(2, 3));
  CHECK(has(-2, 3));
}

TEST_CASE("bundle: unknot and 4_1") {
  const InvariantBundle u = bundle(KnotExpr{}, reg());
  CHECK(u.sigma == 0);
  CHECK(u.upsilon1 == 0);
  CHECK(u.arf == 0);
  CHECK(u.det == 1);
  CHECK(u.gamma4_upper == 1);
  REQUIRE(u.apexes.size() == 2);
  CHECK(u.apexes[0].point == LatticePoint{-2, 1});
  CHECK(u.apexes[1].point == LatticePoint{2, 1});

  const InvariantBundle f = bundle(expr("4_1"), reg());
  CHECK(f.gamma4_upper == 2);
  REQUIRE(f.gamma4_exact.has_value());
  CHECK(*f.gamma4_exact == 2);
  REQUIRE(f.forbidden_facts.size() == 1);
  CHECK(f.forbidden_facts[0].kind == ForbiddenFact::Kind::HLevel);
  bool has_registry_apex = false;
  for (const Apex& a : f.apexes)
    if (a.point == LatticePoint{4, 2} &&
        a.certificate.kind == Certificate::Kind::RegistryApex)
      has_registry_apex = true;
  CHECK(has_registry_apex);
}

TEST_CASE("gamma4_upper: per-summand path and anchors") {
  CHECK(bundle(expr("2*T(5,9) # -3*T(5,13)"), reg()).gamma4_upper == 7);  // 3c+1, c=2
  CHECK(bundle(expr("T(3,11)"), reg()).gamma4_upper == 1);
  CHECK(bundle(expr("T(2,9)"), reg()).gamma4_upper == 1);
  CHECK(bundle(expr("T(5,9)"), reg()).gamma4_upper == 2);
  CHECK(bundle(expr("T(5,13)"), reg()).gamma4_upper == 1);
}

TEST_CASE("bundle: extrapolated Upsilon base is gated") {
  KnotExpr k;
  k.terms.push_back(Term{1, TorusKnot{6, 7}});
  CHECK_THROWS_AS(bundle(k, reg()), std::domain_error);
  BundleOptions opt;
  opt.allow_extrapolated_upsilon_base = true;
  const InvariantBundle b = bundle(k, reg(), opt);
  CHECK(b.upsilon1_extrapolated);
  CHECK(b.upsilon1 == -9);  // single recursion step: base(6) = -floor(36/4)
}

TEST_CASE("bundle: unresolved named knot") {
  KnotExpr k;
  k.terms.push_back(Term{1, NamedKnot{"mystery"}});
  CHECK_THROWS_AS(bundle(k, reg()), registry_error);
}

TEST_CASE("mirror antisymmetry of sigma/upsilon, invariance of det/arf") {
  for (const char* text : {"T(2,5)", "T(3,7)", "2*T(5,9) # -3*T(5,13)", "T(2,3) # 4_1"}) {
    const KnotExpr k = expr(text);
    CHECK(signature(mirror(k), reg()) == -signature(k, reg()));
    CHECK(upsilon1(mirror(k), reg()).value == -upsilon1(k, reg()).value);
    CHECK(determinant(mirror(k), reg()) == determinant(k, reg()));
    CHECK(arf(mirror(k), reg()) == arf(k, reg()));
  }
}

TEST_CASE("OSS consistency: |Upsilon - sigma/2| <= gamma4_upper across expressions") {
  for (const char* text :
       {"T(2,3)", "T(2,9)", "T(3,4)", "T(3,8)", "T(5,9)", "T(5,13)",
        "2*T(5,9) # -3*T(5,13)", "T(2,5) # T(3,7)", "4_1 # T(2,3)"}) {
    const InvariantBundle b = bundle(expr(text), reg());
    Rational oss = b.upsilon1 - b.sigma_rat() / 2;
    if (oss < 0) oss = -oss;
    CHECK(oss <= Rational(b.gamma4_upper));
  }
}
