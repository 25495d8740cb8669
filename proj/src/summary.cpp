#include <algorithm>
#include <stdexcept>

#include "knotgeo/geography.hpp"

namespace knotgeo {

namespace {

// Walk margin and unstructured-sweep margin above the region vertex.
constexpr std::int64_t kSweepMargin = 8;

struct ArmGeometry {
  Rational m;  // right-arm offset: min(sigma, 2 Upsilon)
  Rational M;  // left-arm offset: max(sigma, 2 Upsilon)
};

ArmGeometry arms_of(const InvariantBundle& b) {
  const Rational s = b.sigma_rat();
  const Rational u2 = b.two_upsilon();
  return {std::min(s, u2), std::max(s, u2)};
}

/// Row of the allowed region R1 cap R2 at height h: e in [2(M-h), 2(m+h)].
struct RegionRow {
  std::int64_t e_lo, e_hi;
  bool empty;
};

RegionRow region_row(const ArmGeometry& arms, std::int64_t h) {
  const Rational lo = 2 * (arms.M - h);
  const Rational hi = 2 * (arms.m + h);
  if (lo > hi) return {0, 0, true};
  return {to_int64_strict(rational_ceil(lo), "region row"),
          to_int64_strict(rational_floor(hi), "region row"), false};
}

/// True when the arm has parity-valid lattice points at all: its offset must
/// be an even integer (e = 2(offset + h) with e == 2h mod 4).
bool arm_is_lattice(const Rational& offset) {
  return is_integer(offset) && boost::multiprecision::numerator(offset) % 2 == 0;
}

LatticePoint arm_point(const ArmGeometry& arms, bool right, std::int64_t h) {
  const Rational e = right ? Rational(2 * (arms.m + h)) : Rational(2 * (arms.M - h));
  return LatticePoint{to_int64_strict(rational_floor(e), "arm point"), h};
}

/// Heights at which finitely supported obstruction sources live; every
/// propagation kill lands strictly below one of them.
std::int64_t obstruction_top(const ClassifierContext& ctx) {
  std::int64_t top = 0;
  for (const auto& [pt, cert] : ctx.klein_points()) top = std::max(top, pt.h);
  for (const ForbiddenFact& f : ctx.bundle().forbidden_facts) top = std::max(top, f.h);
  return top;
}

std::int64_t vertex_height(const ArmGeometry& arms) {
  return to_int64_strict(rational_ceil((arms.M - arms.m) / 2), "vertex height");
}

Ray walk_arm(const ClassifierContext& ctx, const ArmGeometry& arms, bool right) {
  const std::int64_t kill_top = obstruction_top(ctx);
  const std::int64_t h_start = std::max<std::int64_t>(1, vertex_height(arms));
  for (std::int64_t h = h_start; h <= h_start + kill_top + kSweepMargin; ++h) {
    const LatticePoint pt = arm_point(arms, right, h);
    if (h <= kill_top) continue;  // possibly propagation-killed; never a start
    const auto v = ctx.classify(pt);
    if (v.status == Status::Unknown) return Ray{pt, right ? 2 : -2};
    if (v.status == Status::Realizable)
      throw internal_error("uncovered arm contains realizable point " + pt.str());
  }
  throw internal_error("no ray start found on an uncovered arm");
}

std::vector<LatticePoint> sweep_unknowns(const ClassifierContext& ctx,
                                         const ArmGeometry& arms, std::int64_t h_top,
                                         const std::vector<Ray>& exclude_rays) {
  std::vector<LatticePoint> unknowns;
  for (std::int64_t h = 1; h <= h_top; ++h) {
    const RegionRow row = region_row(arms, h);
    if (row.empty) continue;
    for (std::int64_t e = row.e_lo; e <= row.e_hi; ++e) {
      const LatticePoint pt{e, h};
      if (!pt.parity_valid()) continue;
      bool on_ray = false;
      for (const Ray& r : exclude_rays) {
        if (pt.h < r.start.h) continue;
        const std::int64_t steps = pt.h - r.start.h;
        if (pt.e == r.start.e + r.direction_e * steps) on_ray = true;
      }
      if (on_ray) continue;
      if (ctx.classify(pt).status == Status::Unknown) unknowns.push_back(pt);
    }
  }
  return unknowns;
}

}  // namespace

GeographyReport symbolic_summary(const InvariantBundle& b) {
  const ClassifierContext ctx(b);
  const ArmGeometry arms = arms_of(b);

  GeographyReport report;
  report.bundle = b;
  report.realizable_wedges = ctx.maximal_apexes();
  report.r1 = ctx.r1();
  report.r2 = ctx.r2();
  report.delta_line = ctx.delta_line();
  report.klein_points = ctx.klein_points();
  report.parity_class = 0;

  // Arm coverage: a wedge with apex (e0,h0) eventually covers the right arm
  // iff e0/2 - h0 >= m, the left arm iff e0/2 + h0 <= M. Offsets within 2 of
  // those cover every interior lattice column beside the arm.
  std::optional<Rational> best_right, best_left;
  std::optional<Apex> right_wedge, left_wedge;
  for (const Apex& a : ctx.maximal_apexes()) {
    const Rational r = Rational(a.point.e) / 2 - a.point.h;
    const Rational l = Rational(a.point.e) / 2 + a.point.h;
    if (!best_right || r > *best_right) {
      best_right = r;
      right_wedge = a;
    }
    if (!best_left || l < *best_left) {
      best_left = l;
      left_wedge = a;
    }
  }
  const bool covered_right = best_right && *best_right >= arms.m;
  const bool covered_left = best_left && *best_left <= arms.M;
  const bool interior_right = best_right && *best_right >= arms.m - 2;
  const bool interior_left = best_left && *best_left <= arms.M + 2;
  const bool delta_right = report.delta_line && report.delta_line->right_arm;
  const bool delta_left = report.delta_line && !report.delta_line->right_arm;

  const auto pair_height = [&]() -> std::int64_t {
    // Height above which the best left and right wedges cover every region row
    // (up to the uncovered arms themselves and parity).
    const Rational cl = Rational(left_wedge->point.e);
    const Rational cr = Rational(right_wedge->point.e);
    const Rational bl = Rational(left_wedge->point.h);
    const Rational br = Rational(right_wedge->point.h);
    Rational hp = (cr - cl) / 4 + (bl + br) / 2;
    hp = std::max(hp, bl);
    hp = std::max(hp, br);
    return std::max<std::int64_t>(1, to_int64_strict(rational_ceil(hp), "cover height"));
  };

  if (covered_right && covered_left) {
    const std::int64_t H = pair_height();
    report.unknown.kind = UnknownSummary::Kind::Finite;
    report.unknown.sweep_bound = H;
    report.unknown.points = sweep_unknowns(ctx, arms, H, {});
  } else {
    bool structured = true;
    std::vector<Ray> rays;
    if (!covered_right) {
      if (delta_right) {
        structured = structured && interior_right;
      } else if (!arm_is_lattice(arms.m) || !interior_right) {
        structured = false;
      } else {
        rays.push_back(walk_arm(ctx, arms, true));
      }
    }
    if (!covered_left) {
      if (delta_left) {
        structured = structured && interior_left;
      } else if (!arm_is_lattice(arms.M) || !interior_left) {
        structured = false;
      } else {
        rays.push_back(walk_arm(ctx, arms, false));
      }
    }
    if (structured) {
      std::int64_t H = pair_height();
      H = std::max(H, obstruction_top(ctx) + 1);
      for (const Ray& r : rays) H = std::max(H, r.start.h);
      std::sort(rays.begin(), rays.end(),
                [](const Ray& a, const Ray& b) { return a.start < b.start; });
      report.unknown.kind = UnknownSummary::Kind::Rays;
      report.unknown.sweep_bound = H;
      report.unknown.rays = std::move(rays);
      report.unknown.points = sweep_unknowns(ctx, arms, H, report.unknown.rays);
    } else {
      const std::int64_t B = vertex_height(arms) + kSweepMargin;
      report.unknown.kind = UnknownSummary::Kind::Unstructured;
      report.unknown.sweep_bound = B;
      report.unknown.points = sweep_unknowns(ctx, arms, B, {});
    }
  }

  std::string lower_cert, upper_cert;
  auto [lower, upper] = gamma4_bounds(b, report, &lower_cert, &upper_cert);
  report.gamma4_lower = lower;
  report.gamma4_upper = upper;
  report.gamma4_lower_certificate = lower_cert;
  report.gamma4_upper_certificate = upper_cert;
  return report;
}

std::pair<BigInt, BigInt> gamma4_bounds(const InvariantBundle& b,
                                        const GeographyReport& report,
                                        std::string* lower_certificate,
                                        std::string* upper_certificate) {
  Rational oss = b.upsilon1 - b.sigma_rat() / 2;
  if (oss < 0) oss = -oss;

  BigInt lower = 1;
  std::string lower_cert = "every knot bounds a surface with h >= 1";
  if (rational_ceil(oss) > lower) {
    lower = rational_ceil(oss);
    lower_cert = "|Upsilon(1) - sigma/2| <= gamma4";
  }
  if (report.delta_line) {
    const BigInt improved = rational_ceil(oss) + 1;
    if (improved > lower) {
      lower = improved;
      lower_cert = std::string("delta line removes the ") +
                   (report.delta_line->right_arm ? "right" : "left") +
                   " arm, raising |Upsilon(1) - sigma/2| by 1";
    }
  }
  if (b.gamma4_exact && *b.gamma4_exact > lower) {
    // Registry-exact value of a named knot; mirror-invariant. The upper side
    // already entered gamma4_upper through the per-summand bounds.
    lower = *b.gamma4_exact;
    lower_cert = "registry gamma4_exact for " + to_text(b.knot);
  }

  const BigInt upper = b.gamma4_upper;
  std::string upper_cert;
  {
    const BigInt genus_path = 2 * b.g4_upper + 1;
    BigInt min_apex = genus_path;
    for (const Apex& a : b.apexes) min_apex = std::min(min_apex, BigInt(a.point.h));
    if (upper == min_apex && min_apex < genus_path)
      upper_cert = "height of the lowest construction apex";
    else if (upper == genus_path)
      upper_cert = "2 g4 + 1 via an orientable surface plus a crosscap";
    else
      upper_cert = "sum of per-summand nonorientable genus bounds";
  }

  if (lower > upper)
    throw internal_error("gamma4 lower bound " + lower.str() + " exceeds upper bound " +
                         upper.str() + " for " + to_text(b.knot));
  if (lower_certificate) *lower_certificate = lower_cert;
  if (upper_certificate) *upper_certificate = upper_cert;
  return {lower, upper};
}

namespace {

Certificate reflect_certificate(Certificate c) {
  using K = Certificate::Kind;
  switch (c.kind) {
    case K::MoebiusConstruction:
      c.e0 = -c.e0;
      break;
    case K::CrosscapSum:
    case K::DownwardPropagation:
      c.parent.e = -c.parent.e;
      break;
    case K::SummandCombination:
      for (LatticePoint& p : c.parents) p.e = -p.e;
      std::sort(c.parents.begin(), c.parents.end());
      break;
    case K::KleinArf:
      c.negative_definite = !c.negative_definite;
      break;
    case K::DeltaLine:
      c.right_arm = !c.right_arm;
      break;
    default:
      break;
  }
  return c;
}

}  // namespace

GeographyReport mirror_report(const GeographyReport& report) {
  GeographyReport out = report;

  InvariantBundle& b = out.bundle;
  b.knot = normalize(mirror(report.bundle.knot));
  b.sigma = -report.bundle.sigma;
  b.upsilon1 = -report.bundle.upsilon1;
  if (report.bundle.delta) b.delta = -*report.bundle.delta;
  b.apexes.clear();
  for (const Apex& a : report.bundle.apexes)
    b.apexes.push_back(Apex{LatticePoint{-a.point.e, a.point.h},
                            reflect_certificate(a.certificate)});
  std::sort(b.apexes.begin(), b.apexes.end(),
            [](const Apex& x, const Apex& y) { return x.point < y.point; });
  b.forbidden_facts.clear();
  for (ForbiddenFact f : report.bundle.forbidden_facts) {
    if (f.kind == ForbiddenFact::Kind::Point) f.e = -f.e;
    b.forbidden_facts.push_back(std::move(f));
  }

  out.realizable_wedges.clear();
  for (const Apex& a : report.realizable_wedges)
    out.realizable_wedges.push_back(Apex{LatticePoint{-a.point.e, a.point.h},
                                         reflect_certificate(a.certificate)});
  std::sort(out.realizable_wedges.begin(), out.realizable_wedges.end(),
            [](const Apex& x, const Apex& y) { return x.point < y.point; });

  out.r1 = report.r1.mirrored();
  out.r2 = report.r2.mirrored();
  if (report.delta_line)
    out.delta_line = DeltaLineInfo{!report.delta_line->right_arm,
                                   -report.delta_line->sigma_offset};
  out.klein_points.clear();
  for (const auto& [pt, cert] : report.klein_points)
    out.klein_points.emplace_back(LatticePoint{-pt.e, pt.h}, reflect_certificate(cert));
  std::sort(out.klein_points.begin(), out.klein_points.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  for (LatticePoint& p : out.unknown.points) p.e = -p.e;
  std::sort(out.unknown.points.begin(), out.unknown.points.end());
  for (Ray& r : out.unknown.rays) {
    r.start.e = -r.start.e;
    r.direction_e = -r.direction_e;
  }
  std::sort(out.unknown.rays.begin(), out.unknown.rays.end(),
            [](const Ray& x, const Ray& y) { return x.start < y.start; });
  return out;
}

namespace {

struct TheoremSets {
  // Statuses under the literal parameter ranges and under the resolved
  // reading (stated unknown ranges minus stated realizable points).
  Status literal;
  Status resolved;
};

TheoremSets theorem_status_t2(std::int64_t n, const LatticePoint& pt) {
  const Wedge w1{Rational(-2 * n), 1};
  const bool realizable =
      w1.contains(pt) || (pt.h >= n && pt.e == 2 * (pt.h - n) + 2);
  const std::int64_t h_lo = (n % 4 == 1) ? 1 : 3;
  const bool on_unknown_range =
      pt.e == 2 * pt.h - 2 * n + 2 && pt.h >= h_lo && pt.h <= n;
  TheoremSets out{};
  out.literal = on_unknown_range ? Status::Unknown
                : realizable     ? Status::Realizable
                                 : Status::NotRealizable;
  out.resolved = realizable          ? Status::Realizable
                 : on_unknown_range  ? Status::Unknown
                                     : Status::NotRealizable;
  return out;
}

TheoremSets theorem_status_t3(std::int64_t n, const LatticePoint& pt) {
  const std::int64_t e0 = (n % 3 == 1) ? (-8 * n + 2) / 3 : (-8 * n - 2) / 3;
  const Wedge w1{Rational(e0), 1};
  const bool realizable = w1.contains(pt);
  bool unknown = false;
  if (n % 6 == 1)
    unknown = 3 * pt.e == 6 * pt.h + 8 - 8 * n && pt.h >= 1;
  else if (n % 6 == 2)
    unknown = 3 * pt.e == 6 * pt.h - 8 * n + 4 && pt.h >= 3;
  const Status s = realizable ? Status::Realizable
                   : unknown  ? Status::Unknown
                              : Status::NotRealizable;
  return TheoremSets{s, s};
}

}  // namespace

TheoremComparison verify_torus_theorem(int family, std::int64_t n, const Box& box,
                                       const Registry& reg) {
  if (family != 2 && family != 3)
    throw std::domain_error("verify_torus_theorem: family must be 2 or 3");
  if (family == 2 && (n < 3 || n % 2 == 0))
    throw std::domain_error("verify t2 requires odd n >= 3");
  if (family == 3 && (n < 2 || n % 3 == 0))
    throw std::domain_error("verify t3 requires n >= 2 coprime to 3");

  TheoremComparison cmp;
  cmp.family = family;
  cmp.n = n;
  cmp.box = box;

  KnotExpr k;
  k.terms.push_back(Term{1, TorusKnot{family, n}});
  const InvariantBundle b = bundle(k, reg);
  const ClassifierContext ctx(b);

  for (const PointClass& pc : classify_box(ctx, box)) {
    const TheoremSets t = family == 2 ? theorem_status_t2(n, pc.point)
                                      : theorem_status_t3(n, pc.point);
    if (pc.status == Status::Unknown) ++cmp.engine_unknown_count;
    if (pc.status != t.literal)
      cmp.diff_literal.push_back(TheoremDiffEntry{pc.point, pc.status, t.literal});
    if (pc.status != t.resolved)
      cmp.diff_resolved.push_back(TheoremDiffEntry{pc.point, pc.status, t.resolved});
  }

  if (family == 2) {
    // 4k unknown pairs for n = 4k+1 and n = 4k+3.
    cmp.expected_unknown_count = static_cast<std::size_t>(n % 4 == 1 ? n - 1 : n - 3);
  } else if (n % 6 == 4 || n % 6 == 5) {
    cmp.expected_unknown_count = 0;
  }

  const GeographyReport report = symbolic_summary(b);
  if (!report.unknown.rays.empty()) cmp.engine_ray = report.unknown.rays.front();
  if (family == 3 && n % 6 == 1)
    cmp.theorem_ray = Ray{LatticePoint{8 * (1 - n) / 3 + 2, 1}, 2};
  else if (family == 3 && n % 6 == 2)
    cmp.theorem_ray = Ray{LatticePoint{8 * (2 - n) / 3 + 2, 3}, 2};
  return cmp;
}

}  // namespace knotgeo
