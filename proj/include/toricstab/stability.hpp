#pragma once

#include <optional>
#include <vector>

#include "toricstab/pullback.hpp"

namespace toricstab {

struct CandidateConfig {
    int closure_rounds = 8;
    std::size_t max_subspaces = 4096;
    // The mixed meet/join closure of >= 4 lines is generically infinite, so
    // the interleaved rounds also carry a work budget (pair evaluations).
    // Atoms and co-atoms come from the pure meet- and join-closures, which
    // are always finite and computed to a fixed point.
    std::size_t max_pair_ops = 200000;
    bool generic_profiles = true;
    unsigned long long seed = 0x746f726963ULL;
};

// Deduplicated, canonically ordered test subspaces: the filtration
// subspaces, their meet/join closure (up to the caps), one line per atom,
// one hyperplane per co-atom, and one verified generic representative per
// intermediate dimension.
struct CandidateSet {
    std::vector<Subspace> subspaces;
    bool closed = true;
    bool includes_generic = false;
};

CandidateSet candidate_subspaces(const EquivariantSheaf& s, const CandidateConfig& config = {});

enum class VerdictKind { Stable, StrictlySemistable, Unstable };
enum class Certainty { Certified, RelativeToCandidates };

const char* to_string(VerdictKind k);
const char* to_string(Certainty c);
int exit_code(VerdictKind k);

struct Witness {
    Subspace subspace;
    Poly gap; // mu(E) - mu(E_F), constant for a fixed polarisation
};

struct Verdict {
    VerdictKind kind = VerdictKind::Stable;
    std::vector<Witness> witnesses;
    std::optional<Rational> epsilon_bound;
    Certainty certainty = Certainty::Certified;
};

Verdict stability_verdict(const Fan& f, const EquivariantSheaf& s, const TDivisor<Rational>& l,
                          const CandidateSet& candidates, int threads = 1);

// Adiabatic problems: L_eps = pi^* L + eps L' on the source of either a
// fibration (Delta empty) or a chain of equivariant blow-ups. For blow-ups
// the default L' is minus the total exceptional divisor.
struct AdiabaticSetup {
    Fan target;
    EquivariantSheaf sheaf;
    TDivisor<Rational> polarisation;
    std::vector<Cone> blowup_taus;
    std::optional<ToricMorphism> fibration;
    std::optional<TDivisor<Rational>> eps_divisor;
};

struct AdiabaticProblem {
    Fan source;
    EquivariantSheaf pulled;
    TDivisor<Poly> l_eps;
    std::vector<Poly> ray_degs;
    Rational ample_radius;
};

AdiabaticProblem resolve_adiabatic(const AdiabaticSetup& setup);

Poly adiabatic_slope_gap(const AdiabaticProblem& p, const Subspace& f_space);

struct AdiabaticReport {
    Verdict verdict;
    std::vector<std::pair<Subspace, Poly>> gaps; // per candidate, canonical order
    CandidateSet candidates;
    AdiabaticProblem problem;
};

AdiabaticReport adiabatic_verdict(const AdiabaticSetup& setup, const CandidateConfig& config = {},
                                  int threads = 1);

// c1(E_F).V(tau)/rk(E_F) - c1(E).V(tau)/rk(E) for a wall tau of a smooth
// complete fan, computed through the wall relation coefficients.
Rational curve_blowup_criterion(const Fan& f, const EquivariantSheaf& s, const Cone& tau,
                                const Subspace& f_space);

// (c1(E) . L^{l-1} . V(tau)) / rk for Z = V(tau) of dimension l >= 1.
Rational restricted_slope(const Fan& f, const EquivariantSheaf& s, const Cone& tau,
                          const TDivisor<Rational>& l);

struct AuditResult {
    int violations = 0;
    int samples = 0;
};

// Randomised spot-check on the candidate maximum: samples random subspaces
// in every intermediate dimension and counts any that beat it.
AuditResult audit_candidates(const Fan& f, const EquivariantSheaf& s, const TDivisor<Rational>& l,
                             const CandidateSet& candidates, int samples_per_dim,
                             unsigned long long seed = 0xa0d17ULL);

} // namespace toricstab
