#pragma once

#include <map>
#include <vector>

#include "toricstab/fan.hpp"
#include "toricstab/polynomial.hpp"

namespace toricstab {

// Invariant divisor sum a_rho D_rho; one scalar per ray. The scalar ring is
// Q (Rational) or Q[eps] (Poly), so adiabatic classes run through the same
// intersection code as ordinary ones.
template <class S>
struct TDivisor {
    std::vector<S> coeffs;

    static TDivisor zero(const Fan& f) { return TDivisor{std::vector<S>(f.ray_count(), S())}; }
    static TDivisor ray(const Fan& f, int rho, const S& c = S(Rational(1))) {
        TDivisor d = zero(f);
        d.coeffs[static_cast<std::size_t>(rho)] = c;
        return d;
    }

    TDivisor& operator+=(const TDivisor& o) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    friend TDivisor operator+(TDivisor a, const TDivisor& b) { a += b; return a; }
    friend TDivisor operator*(const TDivisor& a, const S& s) {
        TDivisor out = a;
        for (auto& c : out.coeffs) c = c * s;
        return out;
    }
    friend TDivisor operator-(const TDivisor& a) { return a * S(Rational(-1)); }
};

inline TDivisor<Poly> adiabatic_divisor(const TDivisor<Rational>& base,
                                        const TDivisor<Rational>& eps_part) {
    TDivisor<Poly> out;
    out.coeffs.resize(base.coeffs.size());
    for (std::size_t i = 0; i < base.coeffs.size(); ++i) {
        out.coeffs[i] = Poly(base.coeffs[i]) + Poly::eps(1, eps_part.coeffs[i]);
    }
    return out;
}

inline TDivisor<Poly> lift(const TDivisor<Rational>& d) {
    TDivisor<Poly> out;
    out.coeffs.resize(d.coeffs.size());
    for (std::size_t i = 0; i < d.coeffs.size(); ++i) out.coeffs[i] = Poly(d.coeffs[i]);
    return out;
}

// Formal combination of orbit closures [V(sigma)], all cones of one
// dimension. grading == number of rays of each cone.
template <class S>
struct CycleClass {
    int dim = 0;
    std::map<Cone, S> terms;

    static CycleClass fundamental(const Fan&) { return CycleClass{0, {{Cone{}, S(Rational(1))}}}; }
    static CycleClass of_cone(const Fan& f, Cone c) {
        std::sort(c.begin(), c.end());
        if (!is_cone_of(f, c)) fail_precondition("cycle term is not a cone of the fan");
        return CycleClass{static_cast<int>(c.size()), {{c, S(Rational(1))}}};
    }
};

// [D] . [V(sigma)] summed over the cycle, via the moving identity
// [D] . [V(sigma)] = [D + div(chi^m)] . [V(sigma)] with m chosen so the
// adjusted coefficients vanish on sigma(1).
template <class S>
CycleClass<S> divisor_dot_cycle(const Fan& f, const TDivisor<S>& d, const CycleClass<S>& c);

template <class S>
S degree_of_point_cycle(const Fan& f, const CycleClass<S>& c);

template <class S>
S intersection_number(const Fan& f, const std::vector<TDivisor<S>>& divisors);

// deg_L(D) = D . L^{n-1}.
template <class S>
S degree(const Fan& f, const TDivisor<S>& d, const TDivisor<S>& l);

// Cartier test over Z; optionally returns the local data m_sigma per
// maximal cone. Coefficients must be integers.
bool is_cartier(const Fan& f, const TDivisor<Rational>& d, std::vector<ZVec>* local_data = nullptr);

// Least positive c with c*D Cartier; bounded by the lcm of the cone
// multiplicities. D may have rational coefficients.
Integer q_cartier_scale(const Fan& f, const TDivisor<Rational>& d);

// Support function value phi_D(v): solve <m, u_rho> = -a_rho on the minimal
// cone containing v, evaluate <m, v>. Well-defined for Q-Cartier D, which on
// a simplicial fan is every divisor.
template <class S>
S support_value(const Fan& f, const TDivisor<S>& d, const QVec& v);

// Coefficients of the pulled-back divisor: -phi_D(phi(u_rho')) per source ray.
template <class S>
TDivisor<S> pullback_divisor(const ToricMorphism& m, const TDivisor<S>& d);

// Toric Kleiman criterion: positive intersection with every wall curve.
bool is_ample(const Fan& f, const TDivisor<Rational>& d);

template <class S>
std::vector<S> wall_products(const Fan& f, const TDivisor<S>& d);

// Certified rational eps_A > 0 with L + eps*Lp ample for 0 < eps < eps_A.
Rational adiabatic_ample_threshold(const Fan& f, const TDivisor<Rational>& l,
                                   const TDivisor<Rational>& lp);

// Relaxed form used after pullback, where the eps^0 part is only nef: every
// wall polynomial must have a positive lowest nonzero coefficient.
Rational eventually_ample_threshold(const Fan& f, const TDivisor<Poly>& l_eps);

// --------------------------------------------------------------------------

template <class S>
CycleClass<S> divisor_dot_cycle(const Fan& f, const TDivisor<S>& d, const CycleClass<S>& c) {
    if (!is_complete(f)) fail_precondition("intersection products need a complete fan");
    if (d.coeffs.size() != f.ray_count()) fail_schema("divisor has wrong number of coefficients");
    if (c.dim >= f.rank) fail_precondition("cannot multiply a zero-dimensional cycle by a divisor");

    CycleClass<S> out;
    out.dim = c.dim + 1;
    std::map<Cone, Integer> mult_cache;
    auto mult = [&](const Cone& cone) -> const Integer& {
        auto it = mult_cache.find(cone);
        if (it == mult_cache.end()) it = mult_cache.emplace(cone, cone_multiplicity(f, cone)).first;
        return it->second;
    };

    const S zero{};
    for (const auto& [sigma, coeff] : c.terms) {
        if (coeff == zero) continue;
        // Find m with <m, u_rho> = -a_rho on sigma(1); any solution works.
        std::vector<S> m_vec;
        if (!sigma.empty()) {
            QMat sys(sigma.size(), static_cast<std::size_t>(f.rank));
            std::vector<S> rhs;
            rhs.reserve(sigma.size());
            for (std::size_t i = 0; i < sigma.size(); ++i) {
                for (int j = 0; j < f.rank; ++j)
                    sys.at(i, static_cast<std::size_t>(j)) =
                        Rational(f.rays[static_cast<std::size_t>(sigma[i])][static_cast<std::size_t>(j)]);
                rhs.push_back(d.coeffs[static_cast<std::size_t>(sigma[i])] * Rational(-1));
            }
            auto sol = solve<S>(sys, rhs);
            if (!sol) fail_precondition("moving step failed (non-simplicial cone?)");
            m_vec = *sol;
        } else {
            m_vec.assign(static_cast<std::size_t>(f.rank), zero);
        }

        const Integer& mult_sigma = mult(sigma);
        for (std::size_t rho = 0; rho < f.ray_count(); ++rho) {
            if (std::binary_search(sigma.begin(), sigma.end(), static_cast<int>(rho))) continue;
            Cone bigger = sigma;
            bigger.push_back(static_cast<int>(rho));
            std::sort(bigger.begin(), bigger.end());
            if (!is_cone_of(f, bigger)) continue;
            // adjusted coefficient a'_rho = a_rho + <m, u_rho>
            S adjusted = d.coeffs[rho];
            for (int j = 0; j < f.rank; ++j)
                adjusted += m_vec[static_cast<std::size_t>(j)] *
                            Rational(f.rays[rho][static_cast<std::size_t>(j)]);
            if (adjusted == zero) continue;
            Rational factor = Rational(mult_sigma) / Rational(mult(bigger));
            S contribution = coeff * adjusted * factor;
            auto [it, inserted] = out.terms.emplace(bigger, contribution);
            if (!inserted) it->second += contribution;
        }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = (it->second == zero) ? out.terms.erase(it) : std::next(it);
    return out;
}

template <class S>
S degree_of_point_cycle(const Fan& f, const CycleClass<S>& c) {
    if (c.dim != f.rank) fail_precondition("degree of a cycle that is not zero-dimensional");
    S sum{};
    for (const auto& [cone, coeff] : c.terms) sum += coeff;
    return sum;
}

template <class S>
S intersection_number(const Fan& f, const std::vector<TDivisor<S>>& divisors) {
    if (static_cast<int>(divisors.size()) != f.rank)
        fail_precondition("intersection_number needs exactly rank-many divisors");
    CycleClass<S> c = CycleClass<S>::fundamental(f);
    for (const auto& d : divisors) c = divisor_dot_cycle(f, d, c);
    return degree_of_point_cycle(f, c);
}

template <class S>
S degree(const Fan& f, const TDivisor<S>& d, const TDivisor<S>& l) {
    std::vector<TDivisor<S>> divs;
    divs.push_back(d);
    for (int i = 0; i + 1 < f.rank; ++i) divs.push_back(l);
    return intersection_number(f, divs);
}

inline Rational intersection_number(const Fan& f,
                                    std::initializer_list<TDivisor<Rational>> divisors) {
    return intersection_number(f, std::vector<TDivisor<Rational>>(divisors));
}

template <class S>
S support_value(const Fan& f, const TDivisor<S>& d, const QVec& v) {
    Cone sigma = minimal_cone(f, v);
    if (sigma.empty()) return S{};
    QMat sys(sigma.size(), static_cast<std::size_t>(f.rank));
    std::vector<S> rhs;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        for (int j = 0; j < f.rank; ++j)
            sys.at(i, static_cast<std::size_t>(j)) =
                Rational(f.rays[static_cast<std::size_t>(sigma[i])][static_cast<std::size_t>(j)]);
        rhs.push_back(d.coeffs[static_cast<std::size_t>(sigma[i])] * Rational(-1));
    }
    auto m = solve<S>(sys, rhs);
    if (!m) fail_precondition("divisor is not Q-Cartier");
    S value{};
    for (int j = 0; j < f.rank; ++j) value += (*m)[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
    return value;
}

template <class S>
TDivisor<S> pullback_divisor(const ToricMorphism& m, const TDivisor<S>& d) {
    if (d.coeffs.size() != m.target.ray_count()) fail_schema("divisor lives on the wrong fan");
    TDivisor<S> out = TDivisor<S>::zero(m.source);
    for (std::size_t rho = 0; rho < m.source.ray_count(); ++rho) {
        ZVec w = m.apply(m.source.rays[rho]);
        out.coeffs[rho] = support_value(m.target, d, to_qvec(w)) * Rational(-1);
    }
    return out;
}

template <class S>
std::vector<S> wall_products(const Fan& f, const TDivisor<S>& d) {
    std::vector<S> out;
    for (const Wall& w : walls(f)) {
        CycleClass<S> c = CycleClass<S>::of_cone(f, w.tau);
        out.push_back(degree_of_point_cycle(f, divisor_dot_cycle(f, d, c)));
    }
    return out;
}

} // namespace toricstab
