#include "toricstab/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace toricstab {

std::string to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) fail_schema("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) fail_schema("rational with zero denominator: " + text);
        return Rational(num) / Rational(den);
    } catch (const ToricError&) {
        throw;
    } catch (const std::exception&) {
        fail_schema("malformed rational literal: " + text);
    }
}

Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return integer_abs(a / gcd(a, b) * b);
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= Rational(n - i) / Rational(i + 1);
    return r;
}

} // namespace toricstab
