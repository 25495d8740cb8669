#include "knotgeo/geography.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace knotgeo {

namespace {

constexpr std::int64_t kBoxPointCap = 10000000;

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

// Moebius-band apex of a single positive torus-knot copy, when one is known:
// T(2,n) bounds one with e = -2n; T(3,n) with e = (-8n+2)/3 or (-8n-2)/3
// depending on n mod 3. Other torus knots contribute no per-copy apex.
std::optional<std::int64_t> moebius_euler(const TorusKnot& tk) {
  if (tk.p == 2) return -2 * tk.q;
  if (tk.p == 3) {
    if (tk.q % 3 == 1) return (-8 * tk.q + 2) / 3;
    return (-8 * tk.q - 2) / 3;
  }
  return std::nullopt;
}

struct CopyOption {
  LatticePoint apex;
  Certificate certificate;  // certificate when this copy is used alone
};

struct PartialSum {
  std::int64_t e = 0;
  std::int64_t h = 0;
  std::vector<LatticePoint> parents;
};

}  // namespace

std::vector<Apex> construction_apexes(const KnotExpr& k, const InvariantBundle& b,
                                      const Registry& reg) {
  const KnotExpr expr = normalize(k);
  std::vector<Apex> out;

  // Per-copy apex options, one entry per summand copy of the connected sum.
  bool combinable = !expr.terms.empty();
  std::vector<std::vector<CopyOption>> copies;
  for (const Term& t : expr.terms) {
    std::vector<CopyOption> options;
    if (std::holds_alternative<TorusKnot>(t.base)) {
      const TorusKnot& tk = std::get<TorusKnot>(t.base);
      if (auto e0 = moebius_euler(tk)) {
        const std::int64_t e = t.coefficient > 0 ? *e0 : -*e0;
        options.push_back({LatticePoint{e, 1}, Certificate::moebius(e)});
      }
    } else {
      const NamedEntry* entry = reg.named(std::get<NamedKnot>(t.base).name);
      if (!entry)
        throw registry_error("named knot '" + std::get<NamedKnot>(t.base).name +
                             "' is not in the registry");
      for (const LatticePoint& a : entry->apexes) {
        const std::int64_t e = t.coefficient > 0 ? a.e : -a.e;
        options.push_back(
            {LatticePoint{e, a.h}, Certificate::registry_apex(entry->name)});
      }
    }
    if (options.empty()) {
      combinable = false;
      break;
    }
    std::sort(options.begin(), options.end(),
              [](const CopyOption& a, const CopyOption& b) { return a.apex < b.apex; });
    for (std::int64_t c = 0; c < abs64(t.coefficient); ++c) copies.push_back(options);
  }

  if (combinable) {
    // Boundary connected sum: one apex per summand copy, coordinates added.
    // Copies of one base are interchangeable, so accumulate sums as a set.
    std::map<std::pair<std::int64_t, std::int64_t>, PartialSum> sums;
    sums[{0, 0}] = PartialSum{};
    for (const auto& options : copies) {
      std::map<std::pair<std::int64_t, std::int64_t>, PartialSum> next;
      for (const auto& [key, partial] : sums) {
        for (const CopyOption& opt : options) {
          PartialSum grown = partial;
          grown.e += opt.apex.e;
          grown.h += opt.apex.h;
          grown.parents.push_back(opt.apex);
          next.emplace(std::make_pair(grown.e, grown.h), std::move(grown));
        }
      }
      sums = std::move(next);
      if (sums.size() > 4096)
        throw internal_error("construction_apexes: combination blow-up");
    }
    std::vector<Apex> combined;
    for (auto& [key, sum] : sums) {
      Certificate cert = (copies.size() == 1 && sum.parents.size() == 1)
                             // a single summand keeps its own construction
                             ? [&] {
                                 for (const CopyOption& opt : copies[0])
                                   if (opt.apex == sum.parents[0]) return opt.certificate;
                                 return Certificate::combination(sum.parents);
                               }()
                             : Certificate::combination(sum.parents);
      combined.push_back(Apex{LatticePoint{sum.e, sum.h}, std::move(cert)});
    }
    // Strictly dominated combinations add nothing; drop them.
    for (const Apex& a : combined) {
      bool dominated = false;
      for (const Apex& other : combined) {
        if (other.point == a.point) continue;
        if (Wedge{Rational(other.point.e), Rational(other.point.h)}.strictly_contains(
                a.point)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) out.push_back(a);
    }
  }

  // Orientable genus surface plus one crosscap, for the whole expression.
  const std::int64_t genus_h = to_int64_strict(2 * b.g4_upper + 1, "genus apex height");
  for (const std::int64_t e : {std::int64_t{-2}, std::int64_t{2}}) {
    const LatticePoint pt{e, genus_h};
    const bool duplicate =
        std::any_of(out.begin(), out.end(), [&](const Apex& a) { return a.point == pt; });
    if (!duplicate) out.push_back(Apex{pt, Certificate::genus()});
  }

  std::sort(out.begin(), out.end(),
            [](const Apex& a, const Apex& b) { return a.point < b.point; });
  return out;
}

std::pair<Wedge, Wedge> allowed_region(const InvariantBundle& b) {
  return {Wedge{Rational(2 * b.sigma), 0}, Wedge{Rational(4) * b.upsilon1, 0}};
}

DefinitenessInfo definiteness_at(const InvariantBundle& b, const LatticePoint& pt) {
  if (!pt.parity_valid())
    throw internal_error("definiteness_at: parity-invalid point " + pt.str());
  if (pt.e % 2 != 0)
    throw internal_error("definiteness_at: odd Euler number " + pt.str());
  DefinitenessInfo info;
  info.cover_signature = b.sigma - BigInt(pt.e) / 2;
  info.cover_b2 = pt.h;
  if (info.cover_signature == -BigInt(pt.h))
    info.cls = DefinitenessInfo::Class::NegativeDefinite;
  else if (info.cover_signature == BigInt(pt.h))
    info.cls = DefinitenessInfo::Class::PositiveDefinite;
  else
    info.cls = DefinitenessInfo::Class::Indefinite;
  return info;
}

std::optional<Certificate> klein_obstruction(const InvariantBundle& b,
                                             const LatticePoint& pt) {
  if (pt.h != 2 || !pt.parity_valid()) return std::nullopt;
  const DefinitenessInfo info = definiteness_at(b, pt);
  if (info.cls == DefinitenessInfo::Class::Indefinite) return std::nullopt;
  const int residue =
      static_cast<int>(((b.sigma + 4 * b.arf) % 8 + 8) % 8);
  if (info.cls == DefinitenessInfo::Class::NegativeDefinite) {
    if (residue != 0 && residue != 4 && residue != 6)
      return Certificate::klein(true);
  } else {
    if (residue != 0 && residue != 2 && residue != 4)
      return Certificate::klein(false);
  }
  return std::nullopt;
}

std::optional<DeltaLineInfo> delta_line_obstruction(const InvariantBundle& b) {
  if (!b.delta || b.det != 1) return std::nullopt;
  const Rational sigma = b.sigma_rat();
  const Rational two_ups = b.two_upsilon();
  if (sigma <= two_ups && *b.delta < 0)
    return DeltaLineInfo{true, b.sigma};
  if (b.options.mirror_delta && sigma >= two_ups && *b.delta > 0)
    return DeltaLineInfo{false, b.sigma};
  return std::nullopt;
}

ClassifierContext::ClassifierContext(const InvariantBundle& b) : bundle_(&b) {
  auto [r1, r2] = allowed_region(b);
  r1_ = r1;
  r2_ = r2;

  // Keep only maximal apex wedges; dominated ones classify nothing new.
  for (const Apex& a : b.apexes) {
    bool dominated = false;
    for (const Apex& other : b.apexes) {
      if (other.point == a.point) continue;
      if (Wedge{Rational(other.point.e), Rational(other.point.h)}.contains(a.point)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal_.push_back(a);
  }
  std::sort(maximal_.begin(), maximal_.end(),
            [](const Apex& x, const Apex& y) { return x.point < y.point; });

  delta_line_ = delta_line_obstruction(b);
  if (delta_line_) {
    for (const Apex& a : maximal_)
      if (delta_line_->on_line(a.point))
        throw internal_error("construction apex " + a.point.str() +
                             " lies on the obstructed delta line");
  }

  // Obstructed definite h = 2 points; e = 2 sigma +- 4 are the only ones.
  const std::int64_t sigma2 = to_int64_strict(2 * b.sigma, "2 sigma");
  for (const std::int64_t e : {sigma2 + 4, sigma2 - 4}) {
    const LatticePoint pt{e, 2};
    if (auto cert = klein_obstruction(b, pt)) {
      for (const Apex& a : maximal_)
        if (Wedge{Rational(a.point.e), Rational(a.point.h)}.contains(pt))
          throw internal_error("Klein-obstructed point " + pt.str() +
                               " lies in the wedge of apex " + a.point.str());
      klein_points_.emplace_back(pt, *cert);
    }
  }
}

ClassifierContext::Verdict ClassifierContext::classify(const LatticePoint& pt) const {
  const InvariantBundle& b = *bundle_;

  if (pt.h < 1 || !pt.parity_valid())
    return {Status::NotRealizable, Certificate::parity()};

  for (const Apex& a : maximal_) {
    const Wedge w{Rational(a.point.e), Rational(a.point.h)};
    if (w.contains(pt))
      return {Status::Realizable,
              pt == a.point ? a.certificate : Certificate::crosscap(a.point)};
  }

  if (!r1_.contains(pt)) return {Status::NotRealizable, Certificate::signature_wedge()};
  if (!r2_.contains(pt)) return {Status::NotRealizable, Certificate::upsilon_wedge()};

  if (delta_line_ && delta_line_->on_line(pt))
    return {Status::NotRealizable, Certificate::delta_line(delta_line_->right_arm)};

  for (const ForbiddenFact& f : b.forbidden_facts) {
    const bool hit = (f.kind == ForbiddenFact::Kind::HLevel)
                         ? pt.h == f.h
                         : pt == LatticePoint{f.e, f.h};
    if (hit) return {Status::NotRealizable, Certificate::registry_forbidden(f.provenance)};
  }

  if (auto cert = klein_obstruction(b, pt)) return {Status::NotRealizable, *cert};

  // Downward propagation: if the upward cone of pt contains a point already
  // ruled out by the delta line, the Klein congruence or a registry fact,
  // then pt itself is obstructed (crosscap sums would realize that point).
  const Wedge cone{Rational(pt.e), Rational(pt.h)};
  for (const auto& [kpt, kcert] : klein_points_)
    if (cone.contains(kpt) && kpt != pt)
      return {Status::NotRealizable,
              Certificate::propagation(kpt, Certificate::Kind::KleinArf)};
  for (const ForbiddenFact& f : b.forbidden_facts) {
    if (f.kind == ForbiddenFact::Kind::HLevel) {
      if (pt.h < f.h) {
        // A parity-valid point on the forbidden level is always within reach:
        // offset 2 when the height difference is odd, 0 otherwise.
        const std::int64_t e = pt.e + (((f.h - pt.h) % 2 != 0) ? 2 : 0);
        return {Status::NotRealizable,
                Certificate::propagation(LatticePoint{e, f.h},
                                         Certificate::Kind::RegistryForbidden)};
      }
    } else {
      const LatticePoint fp{f.e, f.h};
      if (cone.contains(fp) && fp != pt)
        return {Status::NotRealizable,
                Certificate::propagation(fp, Certificate::Kind::RegistryForbidden)};
    }
  }
  if (delta_line_) {
    // The cone of pt meets the obstructed arm only if pt is on or beyond it,
    // which earlier rules already classified; kept for completeness.
    const BigInt side = delta_line_->right_arm
                            ? BigInt(pt.e) - 2 * delta_line_->sigma_offset
                            : 2 * delta_line_->sigma_offset - BigInt(pt.e);
    if (side > 2 * pt.h) {
      const std::int64_t h = pt.h + 2;
      const std::int64_t e = delta_line_->right_arm
                                 ? to_int64_strict(2 * delta_line_->sigma_offset + 2 * h,
                                                   "delta line point")
                                 : to_int64_strict(2 * delta_line_->sigma_offset - 2 * h,
                                                   "delta line point");
      return {Status::NotRealizable,
              Certificate::propagation(LatticePoint{e, h}, Certificate::Kind::DeltaLine)};
    }
  }

  return {Status::Unknown, Certificate::parity()};
}

ClassifierContext::Verdict classify_point(const InvariantBundle& b, const LatticePoint& pt) {
  return ClassifierContext(b).classify(pt);
}

std::vector<PointClass> classify_box(const ClassifierContext& ctx, const Box& box) {
  std::vector<PointClass> out;
  if (box.empty()) return out;
  const std::int64_t width = box.e_max - box.e_min + 1;
  if (width > kBoxPointCap / box.h_max)
    throw std::domain_error("classify_box: box exceeds the 10^7-point cap");
  for (std::int64_t h = 1; h <= box.h_max; ++h) {
    for (std::int64_t e = box.e_min; e <= box.e_max; ++e) {
      const LatticePoint pt{e, h};
      if (!pt.parity_valid()) continue;
      auto verdict = ctx.classify(pt);
      out.push_back(PointClass{pt, verdict.status, std::move(verdict.certificate)});
    }
  }
  return out;
}

std::vector<PointClass> classify_box(const InvariantBundle& b, const Box& box) {
  return classify_box(ClassifierContext(b), box);
}

Box default_box(const InvariantBundle& b) {
  Box box;
  std::int64_t lo = 0, hi = 0;
  for (const Apex& a : b.apexes) {
    lo = std::min(lo, a.point.e);
    hi = std::max(hi, a.point.e);
  }
  box.e_min = lo - 8;
  box.e_max = hi + 8;
  box.h_max = std::max<std::int64_t>(8, to_int64_strict(2 * b.g4_upper + 3, "box height"));
  return box;
}

InvariantBundle bundle(const KnotExpr& k, const Registry& reg,
                       const BundleOptions& options) {
  InvariantBundle b;
  b.knot = normalize(k);
  b.options = options;
  b.sigma = signature(b.knot, reg);
  const UpsilonValue u = upsilon1(b.knot, reg);
  if (u.extrapolated && !options.allow_extrapolated_upsilon_base)
    throw std::domain_error(
        "Upsilon(1) for this expression needs the unverified recursion base "
        "-floor(a^2/4) with a >= 6; pass --allow-extrapolated-upsilon-base to proceed");
  b.upsilon1 = u.value;
  b.upsilon1_extrapolated = u.extrapolated;
  b.arf = arf(b.knot, reg);
  b.det = determinant(b.knot, reg);
  b.delta = delta_lookup(b.knot, reg);
  b.g4_upper = genus4_upper(b.knot, reg);

  // Registry facts apply verbatim only to the named knot itself (mirrored for
  // its mirror); sums carry no such facts.
  if (b.knot.terms.size() == 1 && abs64(b.knot.terms[0].coefficient) == 1 &&
      std::holds_alternative<NamedKnot>(b.knot.terms[0].base)) {
    const NamedEntry* entry = reg.named(std::get<NamedKnot>(b.knot.terms[0].base).name);
    if (!entry)
      throw registry_error("named knot '" +
                           std::get<NamedKnot>(b.knot.terms[0].base).name +
                           "' is not in the registry");
    for (ForbiddenFact f : entry->forbidden) {
      if (b.knot.terms[0].coefficient < 0 && f.kind == ForbiddenFact::Kind::Point)
        f.e = -f.e;
      b.forbidden_facts.push_back(std::move(f));
    }
    if (entry->gamma4_exact) b.gamma4_exact = BigInt(*entry->gamma4_exact);
  }

  b.apexes = construction_apexes(b.knot, b, reg);
  b.gamma4_upper = gamma4_upper_value(b.knot, reg, b.apexes);

  // Consistency assertions; a failure indicates a registry or computation bug.
  if (b.sigma % 2 != 0) throw internal_error("sigma is odd for " + to_text(b.knot));
  const auto [r1, r2] = allowed_region(b);
  for (const Apex& a : b.apexes) {
    if (!a.point.parity_valid() || a.point.h < 1)
      throw internal_error("apex " + a.point.str() + " violates parity");
    if (!r1.contains(a.point) || !r2.contains(a.point))
      throw internal_error("apex " + a.point.str() +
                           " violates the signature/Upsilon bounds for " + to_text(b.knot));
    for (const ForbiddenFact& f : b.forbidden_facts) {
      const bool conflict = (f.kind == ForbiddenFact::Kind::HLevel)
                                ? a.point.h <= f.h
                                : Wedge{Rational(a.point.e), Rational(a.point.h)}.contains(
                                      LatticePoint{f.e, f.h});
      if (conflict)
        throw internal_error("apex " + a.point.str() + " conflicts with forbidden fact (" +
                             f.provenance + ")");
    }
  }
  Rational oss = b.upsilon1 - b.sigma_rat() / 2;
  if (oss < 0) oss = -oss;
  if (oss > Rational(b.gamma4_upper))
    throw internal_error("|Upsilon(1) - sigma/2| exceeds the gamma4 upper bound for " +
                         to_text(b.knot));
  return b;
}

}  // namespace knotgeo
