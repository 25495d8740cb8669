#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knotgeo/invariants.hpp"

namespace knotgeo {

/// Query window in the (e,h)-plane.
struct Box {
  std::int64_t e_min = 0;
  std::int64_t e_max = 0;
  std::int64_t h_max = 1;

  bool empty() const { return e_min > e_max || h_max < 1; }
  friend bool operator==(const Box&, const Box&) = default;
};

/// Construction apexes for the expression: Moebius apexes for T(2,n)/T(3,n)
/// summands (mirrored for negative coefficients), registry apexes for named
/// summands, boundary-connected-sum combinations picking one apex per
/// summand copy, and the genus apexes (+-2, 2 g4_upper + 1) of the whole
/// expression. Exact duplicates are dropped.
std::vector<Apex> construction_apexes(const KnotExpr& k, const InvariantBundle& b,
                                      const Registry& reg);

/// R1 = Wedge(2 sigma, 0) and R2 = Wedge(4 Upsilon(1), 0); every realizable
/// pair lies in both.
std::pair<Wedge, Wedge> allowed_region(const InvariantBundle& b);

/// Branched-cover data at a parity-valid point.
DefinitenessInfo definiteness_at(const InvariantBundle& b, const LatticePoint& pt);

/// Punctured-Klein-bottle obstruction at h = 2 definite points:
/// negative definite requires sigma + 4 Arf = 0, 4 or 6 (mod 8), positive
/// definite requires 0, 2 or 4 (mod 8). Returns the certificate when the
/// congruence fails; not applicable otherwise.
std::optional<Certificate> klein_obstruction(const InvariantBundle& b,
                                             const LatticePoint& pt);

/// One fully obstructed boundary arm of R1: for right_arm, the lattice line
/// h = e/2 - sigma; for the mirrored variant, h = -e/2 + sigma.
struct DeltaLineInfo {
  bool right_arm = true;
  BigInt sigma_offset;  // = sigma(K)

  bool on_line(const LatticePoint& pt) const {
    const BigInt side = right_arm ? BigInt(pt.e) - 2 * sigma_offset
                                  : 2 * sigma_offset - BigInt(pt.e);
    return side == 2 * pt.h;
  }
};

/// Fires when delta is available, det = 1 (so the double branched cover is a
/// homology sphere) and: sigma <= 2 Upsilon(1) with delta < 0 (right arm), or
/// the mirror variant sigma >= 2 Upsilon(1) with delta > 0 (left arm, only
/// when options.mirror_delta).
std::optional<DeltaLineInfo> delta_line_obstruction(const InvariantBundle& b);

/// Everything classify_point needs, precomputed once per bundle. Point
/// statuses never depend on any query box: propagation sources are generated
/// from the obstruction lines and levels themselves.
class ClassifierContext {
 public:
  explicit ClassifierContext(const InvariantBundle& b);

  const InvariantBundle& bundle() const { return *bundle_; }
  const std::vector<Apex>& maximal_apexes() const { return maximal_; }
  const Wedge& r1() const { return r1_; }
  const Wedge& r2() const { return r2_; }
  const std::optional<DeltaLineInfo>& delta_line() const { return delta_line_; }
  /// Obstructed definite h=2 points, with their certificates.
  const std::vector<std::pair<LatticePoint, Certificate>>& klein_points() const {
    return klein_points_;
  }

  struct Verdict {
    Status status;
    Certificate certificate;
  };
  Verdict classify(const LatticePoint& pt) const;

 private:
  const InvariantBundle* bundle_;
  std::vector<Apex> maximal_;
  Wedge r1_{0, 0}, r2_{0, 0};
  std::optional<DeltaLineInfo> delta_line_;
  std::vector<std::pair<LatticePoint, Certificate>> klein_points_;
};

ClassifierContext::Verdict classify_point(const InvariantBundle& b, const LatticePoint& pt);

struct PointClass {
  LatticePoint point;
  Status status;
  Certificate certificate;
};

/// Classifies every parity-valid point of the box, in (h, e) order.
/// Deterministic and box-independent; guards the box at 10^7 points.
std::vector<PointClass> classify_box(const InvariantBundle& b, const Box& box);
std::vector<PointClass> classify_box(const ClassifierContext& ctx, const Box& box);

/// Unknown-set summary: exact and symbolic where the structure allows it.
struct Ray {
  LatticePoint start;
  int direction_e = 2;  // +2 (right arm) or -2 (left arm); h always +1

  friend bool operator==(const Ray&, const Ray&) = default;
};

struct UnknownSummary {
  enum class Kind { Finite, Rays, Unstructured } kind = Kind::Finite;
  /// Finite: the whole unknown set. Rays: the finitely many unknowns off the
  /// rays. Unstructured: unknowns with h <= sweep_bound (truncated).
  std::vector<LatticePoint> points;
  std::vector<Ray> rays;
  std::int64_t sweep_bound = 0;
};

struct GeographyReport {
  InvariantBundle bundle;
  std::vector<Apex> realizable_wedges;  // maximal apex wedges
  Wedge r1{0, 0}, r2{0, 0};
  std::optional<DeltaLineInfo> delta_line;
  std::vector<std::pair<LatticePoint, Certificate>> klein_points;
  UnknownSummary unknown;
  BigInt gamma4_lower;
  std::string gamma4_lower_certificate;
  BigInt gamma4_upper;
  std::string gamma4_upper_certificate;
  int parity_class = 0;  // residue of e - 2h mod 4 on candidate points
};

/// Builds the full symbolic report: realizable wedges, obstructions, the
/// exact unknown set (finite list, boundary rays, or a bounded sweep flagged
/// unstructured) and the gamma4 bounds.
GeographyReport symbolic_summary(const InvariantBundle& b);

/// gamma4 bounds with certificates; lower <= upper is asserted.
std::pair<BigInt, BigInt> gamma4_bounds(const InvariantBundle& b,
                                        const GeographyReport& report,
                                        std::string* lower_certificate = nullptr,
                                        std::string* upper_certificate = nullptr);

/// Reflects every wedge, line, ray and point across e = 0.
GeographyReport mirror_report(const GeographyReport& report);

/// Result of diffing the engine against the classification theorems for the
/// T(2,n) / T(3,n) families over a box.
struct TheoremDiffEntry {
  LatticePoint point;
  Status engine;
  Status theorem;
};

struct TheoremComparison {
  int family = 2;
  std::int64_t n = 3;
  Box box;
  /// Diff with the theorem's parameter ranges taken literally.
  std::vector<TheoremDiffEntry> diff_literal;
  /// Diff after removing from the stated unknown ranges the points the
  /// theorem itself lists as realizable (the endpoint reading the stated
  /// counts require). This is the authoritative comparison.
  std::vector<TheoremDiffEntry> diff_resolved;
  std::size_t engine_unknown_count = 0;
  std::optional<std::size_t> expected_unknown_count;  // finite cases only
  std::optional<Ray> engine_ray;
  std::optional<Ray> theorem_ray;

  bool verified() const {
    if (!diff_resolved.empty()) return false;
    if (expected_unknown_count && engine_unknown_count != *expected_unknown_count)
      return false;
    return engine_ray == theorem_ray;
  }
};

/// Materializes the classification theorem for T(2,n) (family 2, n odd) or
/// T(3,n) (family 3, n coprime to 3) over the box and diffs it against the
/// engine.
TheoremComparison verify_torus_theorem(int family, std::int64_t n, const Box& box,
                                       const Registry& reg);

/// Default query window: apex e-span widened by 8, h up to
/// max(8, 2 g4_upper + 3).
Box default_box(const InvariantBundle& b);

}  // namespace knotgeo
