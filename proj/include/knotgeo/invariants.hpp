#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "knotgeo/geometry.hpp"
#include "knotgeo/knot_expr.hpp"
#include "knotgeo/laurent.hpp"
#include "knotgeo/numeric.hpp"
#include "knotgeo/registry.hpp"

namespace knotgeo {

/// Upsilon at t = 1 together with the extrapolation marker: the recursion
/// base -floor(a^2/4) is only pinned by known values for a <= 5; uses of a
/// larger base are flagged and must be opted into.
struct UpsilonValue {
  Rational value;
  bool extrapolated = false;
};

/// sigma(T(p,q)) by the exact lattice count: over 1 <= i < p, 1 <= j < q,
/// the pair contributes -1 if 1/2 < i/p + j/q < 3/2 and +1 otherwise.
/// Comparisons are exact; i/p + j/q never equals 1/2, 1 or 3/2 for coprime
/// p,q (asserted). Requires gcd(p,q) = 1 and p,q >= 2.
BigInt signature_torus(std::int64_t p, std::int64_t q);

/// Independent closed forms, defined for p in {2,3} only:
///   sigma(T(2,n)) = -(n-1);
///   sigma(T(3,6k+d)) = sigma(T(3,d)) - 8k with the four base values.
BigInt signature_torus_oracle(std::int64_t p, std::int64_t q);

/// Upsilon(1) for T(p,q) by the cabling recursion
///   U(a,b) = U(a, b-a) + U(a, a+1),  U(a, a+1) = -floor(a^2/4),  U(1,q) = 0.
UpsilonValue upsilon1_torus(std::int64_t p, std::int64_t q);

/// Signed Delta_K(-1) of the whole expression modulo 8 (the class is all the
/// Arf invariant needs; determinants are odd so this lives in (Z/8)^*).
int det_signed_mod8(const KnotExpr& k, const Registry& reg);

/// |Delta_K(-1)|: odd positive, multiplicative over terms, mirror-invariant.
BigInt determinant(const KnotExpr& k, const Registry& reg);

/// Arf(K): 0 iff Delta_K(-1) = +-1 (mod 8).
int arf(const KnotExpr& k, const Registry& reg);

/// sigma(K): coefficient-weighted sum over terms; registry for named knots.
BigInt signature(const KnotExpr& k, const Registry& reg);

/// Upsilon_K(1): coefficient-weighted sum; registry for named knots.
UpsilonValue upsilon1(const KnotExpr& k, const Registry& reg);

/// Subadditive 4-genus upper bound: sum of |c| (p-1)(q-1)/2 plus registry
/// values.
BigInt genus4_upper(const KnotExpr& k, const Registry& reg);

std::optional<Rational> delta_lookup(const KnotExpr& k, const Registry& reg);

struct Apex {
  LatticePoint point;
  Certificate certificate;
};

struct BundleOptions {
  bool allow_extrapolated_upsilon_base = false;
  bool mirror_delta = true;
};

/// Everything the geography engine consumes, assembled and consistency-checked.
struct InvariantBundle {
  KnotExpr knot;  // normalized
  BigInt sigma;
  Rational upsilon1;
  bool upsilon1_extrapolated = false;
  int arf = 0;
  BigInt det = 1;
  std::optional<Rational> delta;
  BigInt g4_upper;
  BigInt gamma4_upper;
  /// Registry-exact gamma4 when the expression is a single +-1 named term.
  std::optional<BigInt> gamma4_exact;
  std::vector<Apex> apexes;
  std::vector<ForbiddenFact> forbidden_facts;
  BundleOptions options;

  Rational sigma_rat() const { return Rational(sigma); }
  Rational two_upsilon() const { return Rational(2) * upsilon1; }
};

/// Assembles the bundle for a (normalized) expression: all invariants, the
/// construction apexes and the registry-forbidden facts, then runs the
/// consistency assertions (throws internal_error on violation). Throws
/// registry_error for unresolved named knots and std::domain_error when an
/// extrapolated Upsilon base is needed but not allowed.
InvariantBundle bundle(const KnotExpr& k, const Registry& reg,
                       const BundleOptions& options = {});

/// min(2 g4_upper + 1, sum of per-base uppers, min apex h), never below 1.
/// Exposed separately for testing; bundle() fills the field.
BigInt gamma4_upper_value(const KnotExpr& k, const Registry& reg,
                          const std::vector<Apex>& apexes);

}  // namespace knotgeo
