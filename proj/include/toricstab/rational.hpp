#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "toricstab/errors.hpp"

namespace toricstab {

// Exact arithmetic only. Expression templates are switched off so that
// Rational/Integer behave as ordinary value types inside generic code.
using Integer = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using QVec = std::vector<Rational>;
using ZVec = std::vector<Integer>;

inline int sign(const Rational& x) { return x.sign(); }

inline Rational rational_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
inline Integer integer_abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Wire format: "p" or "p/q".
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& text);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// floor(a/b) for b > 0; exact, rounds toward -infinity.
Integer floor_div(const Integer& a, const Integer& b);

Rational binomial(int n, int k);

} // namespace toricstab
