#include "toricstab/polynomial.hpp"

namespace toricstab {

Poly Poly::eps(std::size_t power, const Rational& coeff) {
    Poly p;
    if (coeff == 0) return p;
    p.c_.assign(power + 1, Rational(0));
    p.c_[power] = coeff;
    return p;
}

void Poly::strip() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::lowest_order() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) return static_cast<int>(k);
    return -1;
}

Rational Poly::lowest_coeff() const {
    int k = lowest_order();
    return k < 0 ? Rational(0) : c_[static_cast<std::size_t>(k)];
}

Rational Poly::eval(const Rational& x) const {
    Rational v(0);
    for (std::size_t k = c_.size(); k-- > 0;) v = v * x + c_[k];
    return v;
}

Rational Poly::sign_radius() const {
    int k = lowest_order();
    if (k < 0) fail_precondition("sign_radius of the zero polynomial");
    Rational a = rational_abs(c_[static_cast<std::size_t>(k)]);
    Rational m(0);
    for (std::size_t j = static_cast<std::size_t>(k) + 1; j < c_.size(); ++j) {
        Rational v = rational_abs(c_[j]);
        if (v > m) m = v;
    }
    return a / (a + m);
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (Rational& c : p.c_) c = -c;
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    strip();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    strip();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            p.c_[i + j] += a.c_[i] * b.c_[j];
    p.strip();
    return p;
}

Poly operator*(const Poly& a, const Rational& s) {
    Poly p = a;
    for (Rational& c : p.c_) c *= s;
    p.strip();
    return p;
}

Poly operator/(const Poly& a, const Rational& s) {
    if (s == 0) fail_precondition("polynomial division by zero");
    return a * (Rational(1) / s);
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (k) out += " ";
        out += toricstab::to_string(c_[k]);
    }
    return out;
}

} // namespace toricstab
