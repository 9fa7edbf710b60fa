// Acceptance suite: one criterion per check, one PASS/FAIL line each, with
// the stated runtime budgets enforced. Everything asserted here is an exact
// rational identity; there are no tolerances anywhere.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "toricstab/fixtures.hpp"
#include "toricstab/stability.hpp"

using namespace toricstab;

namespace {

struct Criterion {
    std::string number;
    std::string label;
    std::function<void()> run;
    double budget_seconds; // 0 = no budget
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

template <class T>
void require_eq(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
        std::ostringstream os;
        os << what << " (mismatch)";
        throw Failure(os.str());
    }
}

Rational q(long long n, long long d = 1) { return Rational(n) / Rational(d); }

// ---- criterion bodies ------------------------------------------------------

void criterion_1_intersections() {
    Fan f = fixtures::del_pezzo_singular();
    auto dot = [&](int a, int b) {
        return intersection_number(f, {TDivisor<Rational>::ray(f, a), TDivisor<Rational>::ray(f, b)});
    };
    require_eq(dot(2, 3), q(1, 2), "D3.D4 = 1/2");
    require_eq(dot(2, 1), q(1, 2), "D3.D2 = 1/2");
    require_eq(dot(2, 2), q(0), "D3.D3 = 0");
    require_eq(dot(3, 0), q(1), "D4.D1 = 1");
    require_eq(dot(3, 3), q(1, 2), "D4.D4 = 1/2");
}

void criterion_2_slopes_and_verdict() {
    Fan f = fixtures::del_pezzo_singular();
    EquivariantSheaf t = tangent_sheaf(f);
    TDivisor<Rational> l = fixtures::anticanonical(f);
    require_eq(slope(f, t, l), q(3), "mu_L(E) = 3");
    auto mu_f = [&](const QVec& v) { return slope(f, subsheaf_from_subspace(t, Subspace::line(v)), l); };
    require_eq(mu_f({q(1), q(0)}), q(2), "mu_L(E_F1) = 2");
    require_eq(mu_f({q(0), q(1)}), q(3), "mu_L(E_F2) = 3");
    require_eq(mu_f({q(-2), q(1)}), q(1), "mu_L(E_F3) = 1");
    Verdict v = stability_verdict(f, t, l, candidate_subspaces(t));
    require(v.kind == VerdictKind::StrictlySemistable, "verdict strictly semistable");
    require(v.witnesses.size() == 1 &&
                v.witnesses[0].subspace == Subspace::line({q(0), q(1)}),
            "witness Span(u2)");
}

void criterion_3_adiabatic_perturbation() {
    Fan f = fixtures::del_pezzo_singular();
    EquivariantSheaf t = tangent_sheaf(f);
    TDivisor<Rational> l = fixtures::anticanonical(f);
    Subspace f2 = Subspace::line({q(0), q(1)});
    // Perturbed slopes as exact polynomials, generic (a, b) = (a0, b0).
    Rational a0 = q(7), b0 = q(4);
    TDivisor<Poly> l_eps = adiabatic_divisor(l, fixtures::del_pezzo_perturbation(a0, b0));
    Poly mu = slope(f, t, l_eps);
    require(mu.coeff(0) == 3 && mu.coeff(1) == b0 + a0 / 2 && mu.degree() == 1,
            "mu = 3 + (b + a/2) eps");
    Poly mu2 = slope(f, subsheaf_from_subspace(t, f2), l_eps);
    require(mu2.coeff(0) == 3 && mu2.coeff(1) == a0 + b0 / 2 && mu2.degree() == 1,
            "mu_F2 = 3 + (a + b/2) eps");

    auto verdict_at = [&](long long a, long long b) {
        AdiabaticSetup setup;
        setup.target = f;
        setup.sheaf = t;
        setup.polarisation = l;
        setup.eps_divisor = fixtures::del_pezzo_perturbation(q(a), q(b));
        return adiabatic_verdict(setup).verdict;
    };
    Verdict stable = verdict_at(1, 2);
    require(stable.kind == VerdictKind::Stable, "(1,2) stable");
    require(stable.epsilon_bound && *stable.epsilon_bound > 0, "(1,2) positive eps_0");
    Verdict unstable = verdict_at(2, 1);
    require(unstable.kind == VerdictKind::Unstable, "(2,1) unstable");
    require(unstable.epsilon_bound && *unstable.epsilon_bound > 0, "(2,1) positive eps_0");
    require(verdict_at(1, 1).kind == VerdictKind::StrictlySemistable, "(1,1) strictly semistable");
}

void criterion_4_split_bundle_stability(int r) {
    Fan f = fixtures::projectivised_split_bundle(r);
    EquivariantSheaf t = tangent_sheaf(f);
    CandidateSet c = candidate_subspaces(t);
    Rational nu0 = q(1, r + 1);
    std::vector<QVec> rows;
    for (int i = 2; i < 3 + r; ++i) rows.push_back(to_qvec(f.rays[static_cast<std::size_t>(i)]));
    Subspace big = Subspace::span(static_cast<std::size_t>(r + 1), rows);

    require(stability_verdict(f, t, fixtures::split_bundle_polarisation(r, nu0 / 2), c).kind ==
                VerdictKind::Stable,
            "nu = nu0/2 stable");
    Verdict at = stability_verdict(f, t, fixtures::split_bundle_polarisation(r, nu0), c);
    require(at.kind == VerdictKind::StrictlySemistable, "nu = nu0 strictly semistable");
    bool witnessed = false;
    for (const Witness& w : at.witnesses) witnessed = witnessed || w.subspace == big;
    require(witnessed, "witness Span(v0..vr)");
    require(stability_verdict(f, t, fixtures::split_bundle_polarisation(r, 2 * nu0), c).kind ==
                VerdictKind::Unstable,
            "nu = 2 nu0 unstable");
}

void criterion_5_curve_blowups() {
    for (int r : {2, 3}) {
        Fan f = fixtures::projectivised_split_bundle(r);
        EquivariantSheaf t = tangent_sheaf(f);
        std::vector<QVec> rows;
        for (int i = 2; i < 3 + r; ++i) rows.push_back(to_qvec(f.rays[static_cast<std::size_t>(i)]));
        Subspace big = Subspace::span(static_cast<std::size_t>(r + 1), rows);
        require_eq(curve_blowup_criterion(f, t, fixtures::split_bundle_stabilising_tau(r), big),
                   q(1, r), "criterion 1/r");
        require_eq(curve_blowup_criterion(f, t, fixtures::split_bundle_destabilising_tau(r), big),
                   q(-1, r + 1), "criterion -1/(r+1)");

        AdiabaticSetup setup;
        setup.target = f;
        setup.sheaf = t;
        setup.polarisation = fixtures::split_bundle_polarisation(r, q(1, r + 1));
        setup.blowup_taus = {fixtures::split_bundle_stabilising_tau(r)};
        require(adiabatic_verdict(setup).verdict.kind == VerdictKind::Stable,
                "stabilising center gives a stable pullback");
        setup.blowup_taus = {fixtures::split_bundle_destabilising_tau(r)};
        require(adiabatic_verdict(setup).verdict.kind == VerdictKind::Unstable,
                "destabilising center gives an unstable pullback");
    }
}

void criterion_6_nonsaturated_example() {
    Fan f = fixtures::affine_plane();
    EquivariantSheaf s = fixtures::affine_plane_sheaf();
    BlowupContext b = make_blowup(f, {0, 1});
    EquivariantSheaf pulled = reflexive_pullback_blowup(b, s);
    const Filtration& exc = pulled.filtrations[2];
    require(exc.jumps().size() == 2 && exc.jumps()[0].first == 3 &&
                exc.jumps()[0].second.dim() == 1 && exc.jumps()[1].first == 4 &&
                exc.jumps()[1].second.dim() == 2,
            "E~ jumps at (3, dim 1), (4, full)");
    Subspace diag = Subspace::line({q(1), q(1)});
    Filtration f_tilde = exceptional_filtration(b, subsheaf_from_subspace(s, diag));
    require(f_tilde.jumps().size() == 1 && f_tilde.jumps()[0].first == 5,
            "F~ jumps at 5");
    require(!is_pullback_saturated(b, s, diag), "not saturated");
    require_eq(pullback_defect(b, s, diag).total, static_cast<long long>(1), "defect total 1");
}

void criterion_7_point_blowups() {
    std::mt19937_64 rng(2024);
    int idx = 0;
    for (Fan f : {fixtures::p2(), fixtures::p3()}) {
        TDivisor<Rational> l = fixtures::anticanonical(f);
        Cone center;
        for (int i = 0; i < f.rank; ++i) center.push_back(i);
        BlowupContext b = make_blowup(f, center);
        for (int trial = 0; trial < 10; ++trial) {
            ++idx;
            // Any reflexive sheaf works over a surface (points have
            // codimension two there); over the 3-fold the blown-up point can
            // meet the non-locally-free locus, where the slope identity of
            // point blow-ups genuinely fails, so those draws are sampled
            // locally free at the center.
            EquivariantSheaf s =
                f.rank == 2
                    ? oracle::random_sheaf(f, 2 + static_cast<std::size_t>(trial % 2), rng)
                    : oracle::random_sheaf_split_at(f, center,
                                                    2 + static_cast<std::size_t>(trial % 2), rng);
            AdiabaticSetup setup;
            setup.target = f;
            setup.sheaf = s;
            setup.polarisation = l;
            setup.blowup_taus = {center};
            AdiabaticReport report = adiabatic_verdict(setup);
            Poly mu_pulled = slope_from_degrees(report.problem.pulled, report.problem.ray_degs);
            require(mu_pulled == Poly(slope(f, s, l)),
                    "mu_{L_eps}(E') - mu_L(E) is identically zero (sheaf " + std::to_string(idx) + ")");

            // Verdict logic versus saturation of every equal-slope candidate.
            Verdict base = stability_verdict(f, s, l, candidate_subspaces(s));
            if (base.kind == VerdictKind::StrictlySemistable) {
                const std::vector<Rational> degs = ray_degrees(f, l);
                Rational mu = slope_from_degrees(s, degs);
                bool all_saturated = true;
                for (const auto& [sub, gap] : report.gaps) {
                    if (subspace_slope_from_degrees(s, sub, degs) != mu) continue;
                    if (pullback_defect(b, s, sub).total != 0) all_saturated = false;
                }
                VerdictKind want = all_saturated ? VerdictKind::StrictlySemistable
                                                 : VerdictKind::Unstable;
                require(report.verdict.kind == want, "verdict matches candidate saturation");
            } else {
                require(report.verdict.kind == base.kind, "stable/unstable preserved");
            }
        }
    }
}

void criterion_8_p3_line_blowup_expansion() {
    Fan f = fixtures::p3();
    BlowupContext b = make_blowup(f, {0, 1}); // Z = V(Cone(e1,e2)), a line
    TDivisor<Rational> h = TDivisor<Rational>::ray(f, 0);
    TDivisor<Rational> pulled_h = pullback_divisor(b.morphism, h);
    TDivisor<Rational> minus_e = TDivisor<Rational>::zero(b.source);
    minus_e.coeffs[4] = q(-1);
    TDivisor<Poly> l_eps = adiabatic_divisor(pulled_h, minus_e);
    Poly d = degree(b.source, lift(pulled_h), l_eps);
    require(d.coeff(0) == 1 && d.coeff(1) == 0 && d.coeff(2) == -1 && d.degree() == 2,
            "deg(pi*H, L_eps) = 1 - eps^2");
    TDivisor<Rational> e0 = TDivisor<Rational>::ray(b.source, 4);
    Poly de = degree(b.source, lift(e0), l_eps);
    require(de.coeff(0) == 0 && de.coeff(1) == 2, "deg(D0, L_eps) = 2 eps + ...");
}

void criterion_9_volume_oracle() {
    std::mt19937_64 rng(4096);
    std::uniform_int_distribution<int> c(1, 9);
    for (Fan f : {fixtures::p2(), fixtures::p1xp1(), fixtures::hirzebruch(1)}) {
        int found = 0;
        while (found < 3) {
            TDivisor<Rational> l = TDivisor<Rational>::zero(f);
            for (auto& x : l.coeffs) x = q(c(rng));
            if (!is_ample(f, l)) continue;
            ++found;
            require_eq(intersection_number(f, {l, l}), oracle::normalized_polytope_volume_2d(f, l),
                       "L^2 = 2 vol(P_L)");
        }
    }
}

void criterion_10_randomized_audit() {
    std::mt19937_64 rng(50);
    Fan f = fixtures::p2();
    TDivisor<Rational> l = TDivisor<Rational>::ray(f, 0);
    const std::vector<Rational> degs = ray_degrees(f, l);
    std::mt19937_64 sample_rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        EquivariantSheaf s = oracle::random_sheaf(f, 2, rng);
        CandidateSet c = candidate_subspaces(s);
        Rational best;
        bool first = true;
        for (const Subspace& cand : c.subspaces) {
            Rational mu = subspace_slope_from_degrees(s, cand, degs);
            if (first || mu > best) { best = mu; first = false; }
        }
        require(!first, "rank-2 sheaves always have candidates");
        for (int i = 0; i < 10000; ++i) {
            Subspace line = oracle::random_line(2, sample_rng);
            if (subspace_slope_from_degrees(s, line, degs) > best)
                throw Failure("sampled line beats the candidate maximum");
        }
    }
}

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {"1", "example 3.6 intersection table", criterion_1_intersections, 1.0},
        {"2", "example 3.6 slopes and verdict", criterion_2_slopes_and_verdict, 1.0},
        {"3", "example 3.6 adiabatic perturbations", criterion_3_adiabatic_perturbation, 0},
        {"4a", "split-bundle stability r=2", [] { criterion_4_split_bundle_stability(2); }, 5.0},
        {"4b", "split-bundle stability r=3", [] { criterion_4_split_bundle_stability(3); }, 5.0},
        {"5", "curve blow-up criteria and verdicts", criterion_5_curve_blowups, 0},
        {"6", "non-saturated pullback example", criterion_6_nonsaturated_example, 0},
        {"7", "point blow-ups preserve slope and verdict logic", criterion_7_point_blowups, 0},
        {"8", "blow-up of P3 along a line: degree expansions", criterion_8_p3_line_blowup_expansion, 0},
        {"9", "volume oracle on three surfaces", criterion_9_volume_oracle, 0},
        {"10", "randomized audit on 50 rank-2 sheaves", criterion_10_randomized_audit, 0},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = error.empty();
        if (ok && c.budget_seconds > 0 && seconds > c.budget_seconds) {
            ok = false;
            error = "runtime budget exceeded";
        }
        std::printf("[criterion %-2s] %s  %s (%.2fs)%s%s\n", c.number.c_str(), ok ? "PASS" : "FAIL",
                    c.label.c_str(), seconds, ok ? "" : " -- ", error.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
