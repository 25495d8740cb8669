#include "knotgeo/laurent.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace knotgeo {

namespace {
// Cap on the unsymmetrized degree materialized by alexander_torus. The
// closed-form determinant path has no such cap.
constexpr std::int64_t kMaxAlexanderDegree = 4000000;
}  // namespace

LaurentPolynomial LaurentPolynomial::monomial(std::int64_t exp, BigInt c) {
  LaurentPolynomial p;
  if (c != 0) p.coeffs_[exp] = std::move(c);
  return p;
}

std::int64_t LaurentPolynomial::min_exp() const {
  if (coeffs_.empty()) throw std::domain_error("min_exp of zero polynomial");
  return coeffs_.begin()->first;
}

std::int64_t LaurentPolynomial::max_exp() const {
  if (coeffs_.empty()) throw std::domain_error("max_exp of zero polynomial");
  return coeffs_.rbegin()->first;
}

BigInt LaurentPolynomial::coeff(std::int64_t exp) const {
  auto it = coeffs_.find(exp);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

void LaurentPolynomial::set_coeff(std::int64_t exp, BigInt c) {
  if (c == 0) coeffs_.erase(exp);
  else coeffs_[exp] = std::move(c);
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
  LaurentPolynomial out = *this;
  for (const auto& [e, c] : o.coeffs_) out.set_coeff(e, out.coeff(e) + c);
  return out;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
  LaurentPolynomial out = *this;
  for (const auto& [e, c] : o.coeffs_) out.set_coeff(e, out.coeff(e) - c);
  return out;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
  LaurentPolynomial out;
  for (const auto& [ea, ca] : coeffs_)
    for (const auto& [eb, cb] : o.coeffs_)
      out.set_coeff(ea + eb, out.coeff(ea + eb) + ca * cb);
  return out;
}

LaurentPolynomial LaurentPolynomial::divide_exact(const LaurentPolynomial& num,
                                                  const LaurentPolynomial& den) {
  if (den.is_zero()) throw std::domain_error("division by zero polynomial");
  if (num.is_zero()) return {};
  LaurentPolynomial rem = num;
  LaurentPolynomial quot;
  const std::int64_t den_deg = den.max_exp();
  const BigInt den_lead = den.coeff(den_deg);
  // In an exact quotient the minimal exponents add up, so no quotient term
  // can sit below this shift.
  const std::int64_t min_shift = num.min_exp() - den.min_exp();
  while (!rem.is_zero()) {
    const std::int64_t shift = rem.max_exp() - den_deg;
    const BigInt lead = rem.coeff(rem.max_exp());
    if (shift < min_shift || lead % den_lead != 0)
      throw std::domain_error("polynomial division is not exact");
    const BigInt factor = lead / den_lead;
    quot.set_coeff(shift, quot.coeff(shift) + factor);
    for (const auto& [e, c] : den.coeffs_)
      rem.set_coeff(e + shift, rem.coeff(e + shift) - factor * c);
  }
  return quot;
}

LaurentPolynomial LaurentPolynomial::shifted(std::int64_t shift) const {
  LaurentPolynomial out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[e + shift] = c;
  return out;
}

BigInt LaurentPolynomial::evaluate_at_one() const {
  BigInt sum = 0;
  for (const auto& [e, c] : coeffs_) sum += c;
  return sum;
}

BigInt LaurentPolynomial::evaluate_at_minus_one() const {
  BigInt sum = 0;
  for (const auto& [e, c] : coeffs_) sum += (e % 2 == 0) ? c : -c;
  return sum;
}

bool LaurentPolynomial::is_symmetric() const {
  for (const auto& [e, c] : coeffs_)
    if (coeff(-e) != c) return false;
  return true;
}

std::string LaurentPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    const BigInt a = c < 0 ? BigInt(-c) : c;
    if (a != 1 || e == 0) os << a.str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "t";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {
LaurentPolynomial t_power_minus_one(std::int64_t n) {
  LaurentPolynomial p;
  p.set_coeff(n, 1);
  p.set_coeff(0, -1);
  return p;
}
}  // namespace

LaurentPolynomial alexander_torus(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1) throw std::domain_error("torus indices must be >= 1");
  if (std::gcd(p, q) != 1) throw std::domain_error("alexander_torus requires gcd(p,q) = 1");
  if (p == 1 || q == 1) return LaurentPolynomial::monomial(0, 1);
  if ((p - 1) > kMaxAlexanderDegree / (q - 1))
    throw std::domain_error("alexander_torus: degree too large to materialize");
  const LaurentPolynomial num = t_power_minus_one(p * q) * t_power_minus_one(1);
  const LaurentPolynomial den = t_power_minus_one(p) * t_power_minus_one(q);
  LaurentPolynomial delta = LaurentPolynomial::divide_exact(num, den);
  // Symmetrize: total degree (p-1)(q-1) is even since p,q are coprime.
  delta = delta.shifted(-(p - 1) * (q - 1) / 2);
  if (!delta.is_symmetric() || delta.evaluate_at_one() != 1)
    throw std::domain_error("alexander_torus: symmetrization failed");
  return delta;
}

BigInt alexander_det_signed_torus(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1) throw std::domain_error("torus indices must be >= 1");
  if (std::gcd(p, q) != 1) throw std::domain_error("determinant requires gcd(p,q) = 1");
  if (p == 1 || q == 1) return 1;
  if (p % 2 == 1 && q % 2 == 1) return 1;
  // Exactly one index is even; the value is +/- the odd index, with the sign
  // fixed by the symmetrized normalization Delta(1) = +1.
  const std::int64_t odd = (p % 2 == 1) ? p : q;
  const BigInt value = odd;
  return (((odd - 1) / 2) % 2 == 0) ? value : -value;
}

}  // namespace knotgeo
