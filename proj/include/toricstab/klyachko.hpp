#pragma once

#include <vector>

#include "toricstab/chow.hpp"
#include "toricstab/fan.hpp"
#include "toricstab/linalg.hpp"

namespace toricstab {

// Increasing filtration of a vector space, stored sparsely as its jumps.
// Below the first jump the value is zero; the last jump carries the full
// space of the filtration (the sheaf's Klyachko space, or F for subsheaves).
class Filtration {
public:
    using Jump = std::pair<long long, Subspace>;

    static Filtration make(std::size_t ambient, std::vector<Jump> jumps);
    // Builds from (position, subspace) pairs that may repeat values;
    // consecutive equal subspaces collapse into one jump.
    static Filtration collapse(std::size_t ambient, const std::vector<Jump>& values);

    std::size_t ambient() const { return ambient_; }
    const std::vector<Jump>& jumps() const { return jumps_; }
    const Subspace& top() const { return jumps_.back().second; }
    long long first_jump() const { return jumps_.front().first; }
    long long last_jump() const { return jumps_.back().first; }

    const Subspace& value_at(long long i) const;

    bool operator==(const Filtration& o) const { return jumps_ == o.jumps_; }

private:
    std::size_t ambient_ = 0;
    std::vector<Jump> jumps_;
    Subspace zero_;
};

// Klyachko data: the space E sits inside Q^coord_dim (equal to it for
// honest sheaves, a proper subspace for induced subsheaves kept in ambient
// coordinates), plus one filtration per ray of the fan.
struct EquivariantSheaf {
    std::size_t coord_dim = 0;
    Subspace space;
    std::vector<Filtration> filtrations;

    std::size_t rank() const { return space.dim(); }
};

EquivariantSheaf make_sheaf(const Fan& f, std::vector<Filtration> filtrations);
EquivariantSheaf make_subsheaf(const Fan& f, Subspace space, std::vector<Filtration> filtrations);

void check_sheaf(const Fan& f, const EquivariantSheaf& s);

// iota_rho = sum_j j (dim E^rho(j) - dim E^rho(j-1)).
long long iota(const EquivariantSheaf& s, int ray);

// Same quantity for the induced subsheaf E_F without materialising it.
long long iota_of_subspace(const EquivariantSheaf& s, int ray, const Subspace& f_space);

TDivisor<Rational> first_chern(const Fan& f, const EquivariantSheaf& s);

// deg_L(D_rho) for every ray; the slope of any induced subsheaf is a
// weighted sum of these, so verdicts precompute them once.
template <class S>
std::vector<S> ray_degrees(const Fan& f, const TDivisor<S>& l);

template <class S>
S slope(const Fan& f, const EquivariantSheaf& s, const TDivisor<S>& l);

template <class S>
S slope_from_degrees(const EquivariantSheaf& s, const std::vector<S>& degs);

template <class S>
S subspace_slope_from_degrees(const EquivariantSheaf& s, const Subspace& f_space,
                              const std::vector<S>& degs);

// The saturated subsheaf E_F: F^rho(j) = F cap E^rho(j), kept in the same
// coordinates. Requires 0 < dim F < rank.
EquivariantSheaf subsheaf_from_subspace(const EquivariantSheaf& s, const Subspace& f_space);

// F^rho(i) == E^rho(i) cap F at every level; throws if sub is not even a
// subsheaf (containment failure).
bool is_saturated(const EquivariantSheaf& sub, const EquivariantSheaf& amb);

EquivariantSheaf tangent_sheaf(const Fan& f);

// dim of the intersection of filtration values at pairings <m, u_rho>, per
// maximal cone.
std::vector<long long> characteristic_function(const Fan& f, const EquivariantSheaf& s,
                                               const ZVec& m);

EquivariantSheaf direct_sum(const EquivariantSheaf& a, const EquivariantSheaf& b);

// --------------------------------------------------------------------------

template <class S>
std::vector<S> ray_degrees(const Fan& f, const TDivisor<S>& l) {
    std::vector<S> out;
    out.reserve(f.ray_count());
    for (std::size_t rho = 0; rho < f.ray_count(); ++rho)
        out.push_back(degree(f, TDivisor<S>::ray(f, static_cast<int>(rho)), l));
    return out;
}

template <class S>
S slope_from_degrees(const EquivariantSheaf& s, const std::vector<S>& degs) {
    S acc{};
    for (std::size_t rho = 0; rho < s.filtrations.size(); ++rho)
        acc += degs[rho] * Rational(iota(s, static_cast<int>(rho)));
    return acc * (Rational(-1) / Rational(static_cast<long long>(s.rank())));
}

template <class S>
S subspace_slope_from_degrees(const EquivariantSheaf& s, const Subspace& f_space,
                              const std::vector<S>& degs) {
    S acc{};
    for (std::size_t rho = 0; rho < s.filtrations.size(); ++rho)
        acc += degs[rho] * Rational(iota_of_subspace(s, static_cast<int>(rho), f_space));
    return acc * (Rational(-1) / Rational(static_cast<long long>(f_space.dim())));
}

template <class S>
S slope(const Fan& f, const EquivariantSheaf& s, const TDivisor<S>& l) {
    if (!is_complete(f)) fail_precondition("slope needs a complete fan");
    check_sheaf(f, s);
    return slope_from_degrees(s, ray_degrees(f, l));
}

} // namespace toricstab
