#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotgeo/geometry.hpp"
#include "knotgeo/knot_expr.hpp"
#include "knotgeo/numeric.hpp"

namespace knotgeo {

struct registry_error : std::runtime_error {
  explicit registry_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A registry-sourced "not realizable" fact with provenance.
struct ForbiddenFact {
  enum class Kind { HLevel, Point };
  Kind kind = Kind::HLevel;
  std::int64_t h = 1;
  std::int64_t e = 0;  // Point only
  std::string provenance;

  friend bool operator==(const ForbiddenFact&, const ForbiddenFact&) = default;
};

/// delta(T(p,q)) = 2 d(Sigma(T(p,q)), spin structure), with provenance.
/// Values ship in the registry; the engine never guesses missing ones.
struct DeltaEntry {
  TorusKnot knot;  // normalized, p <= q
  Rational delta;
  std::string provenance;
};

/// Everything the engine knows about a named knot.
struct NamedEntry {
  std::string name;
  BigInt sigma;  // even
  Rational upsilon1;
  int arf = 0;
  BigInt det = 1;  // odd positive
  std::int64_t g4_upper = 0;
  std::optional<std::int64_t> gamma4_exact;
  std::optional<Rational> delta;
  std::vector<LatticePoint> apexes;
  std::vector<ForbiddenFact> forbidden;
};

/// Immutable once loaded; safe to share across workers.
class Registry {
 public:
  /// The registry compiled into the binary: the shipped delta values for
  /// T(5,9) and T(5,13) and the figure-eight facts.
  static Registry builtin();

  /// Parses the JSON registry format; throws registry_error on malformed or
  /// inconsistent input.
  static Registry from_json_text(const std::string& json_text);
  static Registry from_file(const std::string& path);

  /// Merges user entries over *this; user entries win on conflict, with a
  /// warning line per overridden entry when `warnings` is provided.
  void merge_from(const Registry& user, std::ostream* warnings);

  std::optional<DeltaEntry> delta_for(const TorusKnot& tk) const;
  const NamedEntry* named(const std::string& name) const;

  /// Known names for the expression parser ("U" included).
  std::set<std::string> known_names() const;

  /// Canonical serialization (sorted keys); basis of the registry hash.
  std::string canonical_json() const;
  /// FNV-1a 64-bit over canonical_json(); stable across platforms.
  std::uint64_t hash() const;

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, DeltaEntry> delta_;
  std::map<std::string, NamedEntry> named_;

  void validate() const;
};

}  // namespace knotgeo
