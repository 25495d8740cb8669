#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace knotgeo {

/// Syntax or range error in a knot expression, with the byte offset of the
/// offending token.
struct parse_error : std::runtime_error {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

// Parse-time bounds keeping downstream arithmetic predictable.
constexpr std::int64_t kMaxCoefficient = 1000000;
constexpr std::int64_t kMaxTorusIndex = 1000000;

/// Reserved name for the unknot; always resolvable and normalized away.
inline constexpr const char* kUnknotName = "U";

/// T(p,q) with gcd(p,q)=1. Normalized form has p <= q; T(1,q) is the unknot.
struct TorusKnot {
  std::int64_t p = 1;
  std::int64_t q = 1;

  bool is_unknot() const { return p == 1 || q == 1; }
  /// Swaps indices so p <= q.
  TorusKnot normalized() const {
    return (p <= q) ? *this : TorusKnot{q, p};
  }
  friend bool operator==(const TorusKnot&, const TorusKnot&) = default;
  friend auto operator<=>(const TorusKnot&, const TorusKnot&) = default;
};

struct NamedKnot {
  std::string name;
  friend bool operator==(const NamedKnot&, const NamedKnot&) = default;
  friend auto operator<=>(const NamedKnot&, const NamedKnot&) = default;
};

using KnotBase = std::variant<TorusKnot, NamedKnot>;

bool base_less(const KnotBase& a, const KnotBase& b);

/// One summand of a formal connected sum: coefficient * base. A negative
/// coefficient means that many copies of the mirror image.
struct Term {
  std::int64_t coefficient = 1;
  KnotBase base;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Formal connected sum of signed torus knots and named knots. The empty sum
/// is the unknot. Values are immutable in practice; every operation below is
/// a pure function.
struct KnotExpr {
  std::vector<Term> terms;

  bool is_unknot() const { return terms.empty(); }
  friend bool operator==(const KnotExpr&, const KnotExpr&) = default;
};

/// Parses the connected-sum grammar:
///   expr := term { "#" term }
///   term := [ "+" | "-" ] [ integer "*" ] base
///   base := "T(" integer "," integer ")" | name
/// Whitespace-insensitive. Coefficients default to 1; a leading "-" mirrors
/// the term. `known_names` restricts named knots (default: {"U", "4_1"}).
/// Throws parse_error on syntax errors, non-coprime or out-of-range indices,
/// and unknown names. The returned tree is unnormalized.
KnotExpr parse(const std::string& text,
               const std::set<std::string>* known_names = nullptr);

/// Canonical form: T(q,p) -> T(p,q), unknot bases dropped, equal bases merged,
/// zero net coefficients dropped, terms ordered by (p,q) then name.
/// Idempotent. This is formal-expression simplification only; it makes no
/// concordance claims.
KnotExpr normalize(const KnotExpr& k);

/// Negates every coefficient. Involution; commutes with normalize.
KnotExpr mirror(const KnotExpr& k);

/// Canonical rendering: "#" separators with one space on each side, "*" for
/// multiplicities, "-" for mirrors, "U" for the empty expression.
/// normalize(parse(to_text(k))) == k for normalized k.
std::string to_text(const KnotExpr& k);

}  // namespace knotgeo
