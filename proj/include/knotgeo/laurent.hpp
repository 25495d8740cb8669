#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "knotgeo/numeric.hpp"

namespace knotgeo {

/// Integer Laurent polynomial with finite support. Alexander polynomials are
/// stored symmetrized: coeff(k) == coeff(-k) and value 1 at t = 1.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;

  static LaurentPolynomial monomial(std::int64_t exp, BigInt c);

  bool is_zero() const { return coeffs_.empty(); }
  std::int64_t min_exp() const;
  std::int64_t max_exp() const;

  BigInt coeff(std::int64_t exp) const;
  void set_coeff(std::int64_t exp, BigInt c);

  LaurentPolynomial operator+(const LaurentPolynomial& o) const;
  LaurentPolynomial operator-(const LaurentPolynomial& o) const;
  LaurentPolynomial operator*(const LaurentPolynomial& o) const;

  /// Exact division; throws std::domain_error if the remainder is nonzero.
  static LaurentPolynomial divide_exact(const LaurentPolynomial& num,
                                        const LaurentPolynomial& den);

  /// Multiplies by t^shift.
  LaurentPolynomial shifted(std::int64_t shift) const;

  /// Evaluates at t = 1 or t = -1 (the only evaluations the engine needs;
  /// they are defined for any Laurent support).
  BigInt evaluate_at_one() const;
  BigInt evaluate_at_minus_one() const;

  bool is_symmetric() const;

  const std::map<std::int64_t, BigInt>& coefficients() const { return coeffs_; }
  std::string to_string() const;

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

 private:
  std::map<std::int64_t, BigInt> coeffs_;  // exponent -> nonzero coefficient
};

/// Symmetrized Alexander polynomial of T(p,q):
///   (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)) * t^{-(p-1)(q-1)/2},
/// computed by exact integer polynomial division. Requires gcd(p,q) = 1.
/// Degree guard: (p-1)(q-1) must stay below an internal cap.
LaurentPolynomial alexander_torus(std::int64_t p, std::int64_t q);

/// Value of the symmetrized Alexander polynomial of T(p,q) at t = -1, in
/// closed form (sign included). Agrees with alexander_torus(...).evaluate
/// for every size and has no degree cap:
///   p,q both odd -> 1;  p even -> (-1)^{(q-1)/2} * q;  q even symmetric.
BigInt alexander_det_signed_torus(std::int64_t p, std::int64_t q);

}  // namespace knotgeo
