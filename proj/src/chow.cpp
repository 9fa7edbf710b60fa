#include "toricstab/chow.hpp"

namespace toricstab {

bool is_cartier(const Fan& f, const TDivisor<Rational>& d, std::vector<ZVec>* local_data) {
    if (d.coeffs.size() != f.ray_count()) fail_schema("divisor has wrong number of coefficients");
    ZVec a(f.ray_count());
    for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
        if (denominator(d.coeffs[i]) != 1)
            fail_precondition("Cartier test needs integer coefficients");
        a[i] = numerator(d.coeffs[i]);
    }
    if (local_data) local_data->clear();
    for (const Cone& sigma : f.max_cones) {
        std::vector<ZVec> rows;
        ZVec rhs;
        for (int r : sigma) {
            rows.push_back(f.rays[static_cast<std::size_t>(r)]);
            rhs.push_back(-a[static_cast<std::size_t>(r)]);
        }
        auto m = solve_integer(rows, rhs);
        if (!m) return false;
        if (local_data) local_data->push_back(*m);
    }
    return true;
}

Integer q_cartier_scale(const Fan& f, const TDivisor<Rational>& d) {
    Integer c = 1;
    for (const Rational& x : d.coeffs) c = lcm(c, denominator(x));
    Integer bound = 1;
    for (const Cone& sigma : f.max_cones) bound = lcm(bound, cone_multiplicity(f, sigma));
    for (Integer k = c; k <= c * bound; k += c) {
        TDivisor<Rational> scaled = d;
        bool integral = true;
        for (Rational& x : scaled.coeffs) {
            x *= Rational(k);
            if (denominator(x) != 1) { integral = false; break; }
        }
        if (!integral) continue;
        if (is_cartier(f, scaled)) return k;
    }
    fail_precondition("no Cartier multiple within the multiplicity bound (divisor not Q-Cartier?)");
}

bool is_ample(const Fan& f, const TDivisor<Rational>& d) {
    if (!is_complete(f)) fail_precondition("ampleness needs a complete fan");
    for (const Rational& p : wall_products(f, d))
        if (p <= 0) return false;
    return !walls(f).empty() || f.rank == 0;
}

Rational adiabatic_ample_threshold(const Fan& f, const TDivisor<Rational>& l,
                                   const TDivisor<Rational>& lp) {
    if (!is_ample(f, l)) fail_precondition("adiabatic threshold: L is not ample");
    return eventually_ample_threshold(f, adiabatic_divisor(l, lp));
}

Rational eventually_ample_threshold(const Fan& f, const TDivisor<Poly>& l_eps) {
    if (!is_complete(f)) fail_precondition("ampleness needs a complete fan");
    Rational radius(1);
    for (const Poly& p : wall_products(f, l_eps)) {
        if (p.is_zero() || p.lowest_coeff() <= 0)
            fail_precondition("divisor is not ample for small eps (wall obstruction)");
        Rational r = p.sign_radius();
        if (r < radius) radius = r;
    }
    return radius;
}

} // namespace toricstab
