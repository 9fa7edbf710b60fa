#pragma once

#include <vector>

#include "toricstab/klyachko.hpp"

namespace toricstab {

// One equivariant blow-up: source = star_subdivision(target, tau), the
// morphism carries the identity lattice map, and the exceptional ray is the
// last ray of the source fan.
struct BlowupContext {
    Fan target;
    Fan source;
    ToricMorphism morphism;
    Cone tau;
    int exceptional_ray = -1;
};

BlowupContext make_blowup(const Fan& f, const Cone& tau);

// Reflexive pullback along a fibration whose rays all map to rays or to
// zero. Zero rays acquire the two-step filtration jumping at 0; rays with
// phi(u') = b u keep their filtration with jump positions scaled by b.
// Any contracted-divisor ray is refused: the filtration there has no
// general formula (blow-ups go through reflexive_pullback_blowup).
EquivariantSheaf reflexive_pullback_fibration(const ToricMorphism& m, const EquivariantSheaf& s);

// Reflexive pullback along a blow-up: old rays keep their filtrations; the
// exceptional ray carries  E~(j) = sum over i_1+...+i_s = j  of the
// intersections E^{rho_1}(i_1) cap ... cap E^{rho_s}(i_s), evaluated on the
// finite grid of jump positions.
EquivariantSheaf reflexive_pullback_blowup(const BlowupContext& b, const EquivariantSheaf& s);

// Only the exceptional filtration of the blow-up pullback.
Filtration exceptional_filtration(const BlowupContext& b, const EquivariantSheaf& s);

// Saturation defect of the pulled-back subsheaf along the exceptional ray:
// d_j = dim(F cap E~(j)) - dim F~(j) >= 0, summed over all integers j.
struct Defect {
    std::vector<std::pair<long long, long long>> per_level; // nonzero d_j only
    long long total = 0;
};
Defect pullback_defect(const BlowupContext& b, const EquivariantSheaf& s, const Subspace& f_space);

bool is_pullback_saturated(const BlowupContext& b, const EquivariantSheaf& s,
                           const Subspace& f_space);
// Fibration form: automatically true once no ray is contracted.
bool is_pullback_saturated(const ToricMorphism& m, const EquivariantSheaf& s,
                           const Subspace& f_space);

// Sequence of blow-ups applied in order; ray indices are stable because
// star subdivision only appends.
struct BlowupChain {
    Fan base;
    std::vector<BlowupContext> steps;
    std::vector<int> exceptional_rays; // in the final fan

    const Fan& final_fan() const { return steps.empty() ? base : steps.back().source; }
};

BlowupChain make_blowup_chain(const Fan& f, const std::vector<Cone>& taus);

EquivariantSheaf pullback_sheaf(const BlowupChain& chain, const EquivariantSheaf& s);

template <class S>
TDivisor<S> pullback_divisor(const BlowupChain& chain, TDivisor<S> d) {
    for (const BlowupContext& step : chain.steps) d = pullback_divisor(step.morphism, d);
    return d;
}

// Sum of the exceptional divisors in the final fan.
TDivisor<Rational> total_exceptional_divisor(const BlowupChain& chain);

} // namespace toricstab
