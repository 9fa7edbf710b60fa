#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toricstab/rational.hpp"

namespace toricstab {

// Univariate polynomial in the adiabatic parameter, rational coefficients,
// stored lowest degree first with trailing zeros stripped.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) { if (c != 0) c_.push_back(c); }
    Poly(int c) : Poly(Rational(c)) {}

    static Poly eps(std::size_t power, const Rational& coeff = Rational(1));

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }

    // Order and coefficient of the lowest nonzero term; order of 0 is -1.
    int lowest_order() const;
    Rational lowest_coeff() const;

    Rational eval(const Rational& x) const;

    // Largest r in (0, 1] such that sign(p(e)) == sign(lowest_coeff) for all
    // 0 < e < r: the elementary bound |a_k| / (|a_k| + max_{j>k} |a_j|).
    Rational sign_radius() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);

    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Rational& s);
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }
    friend Poly operator/(const Poly& a, const Rational& s);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Coefficient list "c0 c1 ...", or a compact expression with --human.
    std::string to_string() const;

private:
    void strip();
    std::vector<Rational> c_;
};

} // namespace toricstab
