#include "doctest.h"
#include "knotgeo/geography.hpp"

using namespace knotgeo;

namespace {

const Registry& reg() {
  static const Registry r = Registry::builtin();
  return r;
}

InvariantBundle make(const std::string& text, BundleOptions opt = {}) {
  const auto names = reg().known_names();
  return bundle(normalize(parse(text, &names)), reg(), opt);
}

bool has_apex(const std::vector<Apex>& apexes, std::int64_t e, std::int64_t h) {
  for (const Apex& a : apexes)
    if (a.point == LatticePoint{e, h}) return true;
  return false;
}

Status status_at(const ClassifierContext& ctx, std::int64_t e, std::int64_t h) {
  return ctx.classify(LatticePoint{e, h}).status;
}

}  // namespace

TEST_CASE("wedge geometry") {
  const Wedge w{Rational(-6), Rational(1)};
  CHECK(w.contains(LatticePoint{-6, 1}));
  CHECK(w.contains(LatticePoint{-8, 2}));
  CHECK(w.contains(LatticePoint{-4, 2}));
  CHECK_FALSE(w.contains(LatticePoint{-2, 1}));
  // upward closure
  for (std::int64_t e = -20; e <= 8; ++e)
    for (std::int64_t h = 1; h <= 8; ++h)
      if (w.contains(LatticePoint{e, h})) {
        CHECK(w.contains(LatticePoint{e - 2, h + 1}));
        CHECK(w.contains(LatticePoint{e + 2, h + 1}));
      }
}

TEST_CASE("construction_apexes: T(2,5), T(3,4), mirror") {
  const InvariantBundle b25 = make("T(2,5)");
  CHECK(b25.apexes.size() == 3);
  CHECK(has_apex(b25.apexes, -10, 1));
  CHECK(has_apex(b25.apexes, 2, 5));
  CHECK(has_apex(b25.apexes, -2, 5));

  const InvariantBundle b34 = make("T(3,4)");
  CHECK(b34.apexes.size() == 3);
  CHECK(has_apex(b34.apexes, -10, 1));  // (-8*4+2)/3
  CHECK(has_apex(b34.apexes, 2, 7));
  CHECK(has_apex(b34.apexes, -2, 7));

  const InvariantBundle bm = make("-T(2,3)");
  CHECK(has_apex(bm.apexes, 6, 1));
  CHECK(has_apex(bm.apexes, 2, 3));
  CHECK(has_apex(bm.apexes, -2, 3));

  const InvariantBundle b35 = make("T(3,5)");
  CHECK(has_apex(b35.apexes, -14, 1));  // (-8*5-2)/3
}

TEST_CASE("construction_apexes: summand combinations") {
  // 3 copies of T(2,3): one apex per copy, coordinates added.
  const InvariantBundle b = make("3*T(2,3)");
  CHECK(has_apex(b.apexes, -18, 3));
  bool found = false;
  for (const Apex& a : b.apexes)
    if (a.point == LatticePoint{-18, 3}) {
      CHECK(a.certificate.kind == Certificate::Kind::SummandCombination);
      CHECK(a.certificate.parents.size() == 3);
      found = true;
    }
  CHECK(found);

  // 4_1 # T(2,3): both registry apexes combine with the Moebius apex.
  const InvariantBundle mixed = make("4_1 # T(2,3)");
  CHECK(has_apex(mixed.apexes, -2, 3));
  CHECK(has_apex(mixed.apexes, -10, 3));

  // T(5,9) summands have no Moebius apex, so only genus apexes appear.
  const InvariantBundle family = make("2*T(5,9) # -3*T(5,13)");
  CHECK(family.apexes.size() == 2);
  CHECK(has_apex(family.apexes, -2, 209));
  CHECK(has_apex(family.apexes, 2, 209));
}

TEST_CASE("allowed_region anchors") {
  const auto [r1_23, r2_23] = allowed_region(make("T(2,3)"));
  CHECK(r1_23 == Wedge{Rational(-4), 0});
  CHECK(r2_23 == Wedge{Rational(-4), 0});
  const auto [r1_37, r2_37] = allowed_region(make("T(3,7)"));
  CHECK(r1_37 == Wedge{Rational(-16), 0});
  CHECK(r2_37 == Wedge{Rational(-16), 0});
  const auto [r1_35, r2_35] = allowed_region(make("T(3,5)"));
  CHECK(r1_35 == Wedge{Rational(-16), 0});
  CHECK(r2_35 == Wedge{Rational(-12), 0});
}

TEST_CASE("definiteness_at") {
  const InvariantBundle b23 = make("T(2,3)");
  const DefinitenessInfo d = definiteness_at(b23, LatticePoint{0, 2});
  CHECK(d.cover_signature == -2);
  CHECK(d.cover_b2 == 2);
  CHECK(d.cls == DefinitenessInfo::Class::NegativeDefinite);

  const DefinitenessInfo d41 = definiteness_at(make("4_1"), LatticePoint{0, 2});
  CHECK(d41.cls == DefinitenessInfo::Class::Indefinite);

  const DefinitenessInfo d25 = definiteness_at(make("T(2,5)"), LatticePoint{-16, 3});
  CHECK(d25.cover_signature == 4);
  CHECK(d25.cls == DefinitenessInfo::Class::Indefinite);
}

TEST_CASE("klein_obstruction anchors") {
  CHECK(klein_obstruction(make("T(2,7)"), LatticePoint{-8, 2}).has_value());
  CHECK_FALSE(klein_obstruction(make("T(2,5)"), LatticePoint{-4, 2}).has_value());
  CHECK(klein_obstruction(make("T(3,8)"), LatticePoint{-16, 2}).has_value());
  // not applicable off h=2 or at indefinite points
  CHECK_FALSE(klein_obstruction(make("T(2,7)"), LatticePoint{-10, 1}).has_value());
  CHECK_FALSE(klein_obstruction(make("4_1"), LatticePoint{0, 2}).has_value());
}

TEST_CASE("delta_line_obstruction") {
  const auto line2 = delta_line_obstruction(make("2*T(5,9) # -3*T(5,13)"));
  REQUIRE(line2.has_value());
  CHECK(line2->right_arm);
  CHECK(line2->sigma_offset == 48);
  CHECK(line2->on_line(LatticePoint{98, 1}));
  CHECK(line2->on_line(LatticePoint{100, 2}));
  CHECK_FALSE(line2->on_line(LatticePoint{96, 1}));

  CHECK_FALSE(delta_line_obstruction(make("T(2,3)")).has_value());  // det != 1, no delta

  const auto line1 = delta_line_obstruction(make("T(5,9) # -2*T(5,13)"));
  REQUIRE(line1.has_value());
  CHECK(line1->sigma_offset == 40);

  // Mirror variant fires on the left arm unless disabled.
  const auto mirrored = delta_line_obstruction(make("-2*T(5,9) # 3*T(5,13)"));
  REQUIRE(mirrored.has_value());
  CHECK_FALSE(mirrored->right_arm);
  BundleOptions no_mirror;
  no_mirror.mirror_delta = false;
  CHECK_FALSE(
      delta_line_obstruction(make("-2*T(5,9) # 3*T(5,13)", no_mirror)).has_value());
}

TEST_CASE("classify_point: trefoil worked example") {
  const InvariantBundle b = make("T(2,3)");
  const ClassifierContext ctx(b);

  const auto moebius = ctx.classify(LatticePoint{-6, 1});
  CHECK(moebius.status == Status::Realizable);
  CHECK(moebius.certificate.kind == Certificate::Kind::MoebiusConstruction);

  const auto klein = ctx.classify(LatticePoint{0, 2});
  CHECK(klein.status == Status::NotRealizable);
  CHECK(klein.certificate.kind == Certificate::Kind::KleinArf);

  const auto propagated = ctx.classify(LatticePoint{-2, 1});
  CHECK(propagated.status == Status::NotRealizable);
  CHECK(propagated.certificate.kind == Certificate::Kind::DownwardPropagation);
  CHECK(propagated.certificate.parent == LatticePoint{0, 2});
  CHECK(propagated.certificate.root_kind == Certificate::Kind::KleinArf);

  CHECK(ctx.classify(LatticePoint{-3, 1}).certificate.kind ==
        Certificate::Kind::ParityViolation);
  CHECK(ctx.classify(LatticePoint{-14, 1}).certificate.kind ==
        Certificate::Kind::SignatureWedge);
}

TEST_CASE("classify_point: unknown points") {
  CHECK(status_at(ClassifierContext(make("T(2,5)")), -6, 1) == Status::Unknown);
  CHECK(status_at(ClassifierContext(make("4_1")), 0, 2) == Status::Unknown);
}

TEST_CASE("classify_point: upsilon wedge fires where R2 is strictly smaller") {
  // T(3,5): R1 center -16, R2 center -12; the positive-definite R1 arm is
  // outside R2.
  const ClassifierContext ctx(make("T(3,5)"));
  const auto v = ctx.classify(LatticePoint{-18, 1});
  CHECK(v.status == Status::NotRealizable);
  CHECK(v.certificate.kind == Certificate::Kind::UpsilonWedge);
}

TEST_CASE("classify_point: registry forbidden level for 4_1") {
  const ClassifierContext ctx(make("4_1"));
  const auto v = ctx.classify(LatticePoint{2, 1});
  CHECK(v.status == Status::NotRealizable);
  CHECK(v.certificate.kind == Certificate::Kind::RegistryForbidden);
}

TEST_CASE("classify_box: trefoil box has no unknowns; T(2,9) has eight") {
  const InvariantBundle b23 = make("T(2,3)");
  std::size_t unknown = 0;
  for (const PointClass& pc : classify_box(b23, Box{-12, 6, 4}))
    if (pc.status == Status::Unknown) ++unknown;
  CHECK(unknown == 0);

  const InvariantBundle b29 = make("T(2,9)");
  std::size_t unknown9 = 0;
  for (const PointClass& pc : classify_box(b29, Box{-30, 10, 9}))
    if (pc.status == Status::Unknown) ++unknown9;
  CHECK(unknown9 == 8);
}

TEST_CASE("classify_box: unknot realizable set is exactly |e/2| <= h") {
  const InvariantBundle b = bundle(KnotExpr{}, reg());
  for (const PointClass& pc : classify_box(b, Box{-8, 8, 4})) {
    CHECK(pc.status != Status::Unknown);
    const bool in_cone = 2 * pc.point.h >= std::abs(pc.point.e);
    CHECK((pc.status == Status::Realizable) == in_cone);
  }
}

TEST_CASE("classify_box: empty box and cap") {
  CHECK(classify_box(make("T(2,3)"), Box{4, -4, 3}).empty());
  CHECK_THROWS_AS(classify_box(make("T(2,3)"), Box{-3000000, 3000000, 2000}),
                  std::domain_error);
}

TEST_CASE("box extension stability") {
  const ClassifierContext ctx(make("T(2,7)"));
  const auto small = classify_box(ctx, Box{-10, 2, 3});
  const auto large = classify_box(ctx, Box{-40, 20, 9});
  for (const PointClass& pc : small) {
    bool found = false;
    for (const PointClass& qc : large)
      if (qc.point == pc.point) {
        found = true;
        CHECK(qc.status == pc.status);
      }
    CHECK(found);
  }
}

TEST_CASE("default_box derives from apex span and genus") {
  const InvariantBundle b = make("T(2,9)");
  const Box box = default_box(b);
  CHECK(box.e_min == -26);
  CHECK(box.e_max == 10);
  CHECK(box.h_max == 11);  // max(8, 2*4+3)
}
