#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace knotgeo {

// All arithmetic in the library is exact: big integers and big rationals.
// No floating point anywhere.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders "a/b" in lowest terms, or a bare integer when the denominator is 1.
std::string rational_to_string(const Rational& r);

/// Accepts "7", "-7", "a/b" (optionally signed). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

bool is_integer(const Rational& r);

/// floor/ceil as exact integers.
BigInt rational_floor(const Rational& r);
BigInt rational_ceil(const Rational& r);

/// Checked narrowing; empty when out of range.
std::optional<std::int64_t> to_int64(const BigInt& v);

/// Narrowing that must succeed; throws std::overflow_error otherwise.
std::int64_t to_int64_strict(const BigInt& v, const char* what);

BigInt gcd(BigInt a, BigInt b);

}  // namespace knotgeo
