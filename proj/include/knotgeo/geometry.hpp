#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knotgeo/numeric.hpp"

namespace knotgeo {

/// Internal consistency violation (a registry or computation bug, never user
/// input). Carries the offending datum in the message.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

/// One lattice point of the (e,h)-plane: e the normal Euler number, h >= 1
/// the first Betti number of the spanning surface.
struct LatticePoint {
  std::int64_t e = 0;
  std::int64_t h = 1;

  /// Candidate points must satisfy e == 2h (mod 4).
  bool parity_valid() const { return ((e - 2 * h) % 4 + 4) % 4 == 0; }

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  /// Orders by (h, e); the deterministic sweep order.
  friend auto operator<=>(const LatticePoint& a, const LatticePoint& b) {
    if (auto c = a.h <=> b.h; c != 0) return c;
    return a.e <=> b.e;
  }
  std::string str() const {
    return "(" + std::to_string(e) + "," + std::to_string(h) + ")";
  }
};

/// The region { (e,h) : |center - e|/2 + base <= h }. Both construction
/// cones (crosscap sums from an apex) and obstruction regions (signature and
/// Upsilon bounds) take this shape. All comparisons are exact.
struct Wedge {
  Rational center;  // apex e-coordinate
  Rational base;    // apex h-coordinate, >= 0

  bool contains(const LatticePoint& pt) const {
    Rational d = center - pt.e;
    if (d < 0) d = -d;
    return d / 2 + base <= pt.h;
  }
  bool strictly_contains(const LatticePoint& pt) const {
    Rational d = center - pt.e;
    if (d < 0) d = -d;
    return d / 2 + base < pt.h;
  }
  /// Reflection across e = 0.
  Wedge mirrored() const { return Wedge{-center, base}; }

  friend bool operator==(const Wedge&, const Wedge&) = default;
};

enum class Status { Realizable, NotRealizable, Unknown };

std::string status_name(Status s);

/// Machine-checkable reason attached to every verdict. A verifier can
/// recompute the implied inequality or congruence from the invariant bundle
/// alone.
struct Certificate {
  enum class Kind {
    MoebiusConstruction,   // band-move Moebius band, payload e0
    GenusConstruction,     // orientable genus surface + crosscap
    CrosscapSum,           // payload: parent apex
    SummandCombination,    // payload: one parent apex per summand
    RegistryApex,          // payload: provenance
    ParityViolation,
    SignatureWedge,
    UpsilonWedge,
    KleinArf,              // payload: negative_definite flag
    DeltaLine,             // payload: right_arm flag
    DownwardPropagation,   // payload: source point + root kind
    RegistryForbidden,     // payload: provenance
  };

  Kind kind = Kind::ParityViolation;
  std::int64_t e0 = 0;                  // MoebiusConstruction
  LatticePoint parent;                  // CrosscapSum / DownwardPropagation
  std::vector<LatticePoint> parents;    // SummandCombination
  std::string provenance;               // RegistryApex / RegistryForbidden
  bool negative_definite = true;        // KleinArf
  bool right_arm = true;                // DeltaLine
  Kind root_kind = Kind::KleinArf;      // DownwardPropagation

  std::string str() const;

  static Certificate moebius(std::int64_t e0);
  static Certificate genus();
  static Certificate crosscap(LatticePoint parent);
  static Certificate combination(std::vector<LatticePoint> parents);
  static Certificate registry_apex(std::string provenance);
  static Certificate parity();
  static Certificate signature_wedge();
  static Certificate upsilon_wedge();
  static Certificate klein(bool negative_definite);
  static Certificate delta_line(bool right_arm);
  static Certificate propagation(LatticePoint from, Kind root);
  static Certificate registry_forbidden(std::string provenance);
};

/// Data of the branched double cover at a lattice point:
/// cover_signature = sigma - e/2, cover_b2 = h.
struct DefinitenessInfo {
  enum class Class { NegativeDefinite, PositiveDefinite, Indefinite };
  BigInt cover_signature;
  std::int64_t cover_b2 = 0;
  Class cls = Class::Indefinite;
};

}  // namespace knotgeo
