#include "toricstab/stability.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>

namespace toricstab {

const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::Stable: return "stable";
    case VerdictKind::StrictlySemistable: return "strictly-semistable";
    case VerdictKind::Unstable: return "unstable";
    }
    return "?";
}

const char* to_string(Certainty c) {
    return c == Certainty::Certified ? "certified" : "relative-to-candidates";
}

int exit_code(VerdictKind k) {
    switch (k) {
    case VerdictKind::Stable: return 0;
    case VerdictKind::StrictlySemistable: return 1;
    case VerdictKind::Unstable: return 2;
    }
    return 3;
}

namespace {

Subspace random_subspace(const Subspace& space, std::size_t dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    const std::size_t ambient = space.ambient();
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<QVec> rows;
        for (std::size_t i = 0; i < dim; ++i) {
            QVec v(ambient, Rational(0));
            for (std::size_t b = 0; b < space.dim(); ++b) {
                int c = coeff(rng);
                if (c == 0) continue;
                QVec basis = space.basis_row(b);
                for (std::size_t j = 0; j < ambient; ++j) v[j] += Rational(c) * basis[j];
            }
            rows.push_back(v);
        }
        Subspace f = Subspace::span(ambient, rows);
        if (f.dim() == dim) return f;
    }
    fail_precondition("failed to sample a random subspace");
}

} // namespace

namespace {

// Closes `start` under `op` (a meet or a join); proper nonzero elements
// only. Intersections/sums of subsets of the generators form a finite set,
// so this terminates; the size cap is a safety valve.
std::set<Subspace> semilattice_closure(const std::set<Subspace>& start, std::size_t rank,
                                       std::size_t cap, bool meets, bool& reached_fixpoint) {
    std::set<Subspace> closed = start;
    std::vector<Subspace> work(start.begin(), start.end());
    reached_fixpoint = true;
    while (!work.empty()) {
        if (closed.size() >= cap) { reached_fixpoint = false; break; }
        Subspace x = std::move(work.back());
        work.pop_back();
        std::vector<Subspace> fresh;
        for (const Subspace& y : closed) {
            Subspace z = meets ? subspace_meet(x, y) : subspace_join(x, y);
            if (z.dim() == 0 || z.dim() >= rank) continue;
            if (!closed.count(z)) fresh.push_back(std::move(z));
        }
        for (Subspace& z : fresh) {
            if (closed.size() >= cap) { reached_fixpoint = false; break; }
            if (closed.insert(z).second) work.push_back(std::move(z));
        }
    }
    return closed;
}

} // namespace

CandidateSet candidate_subspaces(const EquivariantSheaf& s, const CandidateConfig& config) {
    CandidateSet out;
    const std::size_t rank = s.rank();
    if (rank <= 1) return out;

    std::set<Subspace> gens;
    for (const Filtration& filt : s.filtrations)
        for (const auto& [j, v] : filt.jumps())
            if (v.dim() > 0 && v.dim() < rank) gens.insert(v);

    bool meets_complete = true, joins_complete = true;
    const std::set<Subspace> meet_closed =
        semilattice_closure(gens, rank, config.max_subspaces, true, meets_complete);
    const std::set<Subspace> join_closed =
        semilattice_closure(gens, rank, config.max_subspaces, false, joins_complete);

    // Interleaved meet/join closure for intermediate-dimension candidates.
    // This lattice is infinite for generic configurations, so the rounds run
    // under the size cap and a work budget; `closed` records a fixed point.
    std::set<Subspace> closure = meet_closed;
    closure.insert(join_closed.begin(), join_closed.end());
    bool mixed_closed = true;
    std::vector<Subspace> frontier(closure.begin(), closure.end());
    std::size_t ops = 0;
    for (int round = 0; round < config.closure_rounds; ++round) {
        std::set<Subspace> next;
        for (const Subspace& x : frontier) {
            for (const Subspace& y : closure) {
                if (ops >= config.max_pair_ops || closure.size() + next.size() >= config.max_subspaces) {
                    mixed_closed = false;
                    break;
                }
                ++ops;
                for (Subspace z : {subspace_meet(x, y), subspace_join(x, y)}) {
                    if (z.dim() == 0 || z.dim() >= rank) continue;
                    if (!closure.count(z)) next.insert(std::move(z));
                }
            }
            if (!mixed_closed) break;
        }
        closure.insert(next.begin(), next.end());
        if (!mixed_closed) break;
        if (next.empty()) break;
        frontier.assign(next.begin(), next.end());
        if (round == config.closure_rounds - 1) mixed_closed = false;
    }
    out.closed = meets_complete && joins_complete && mixed_closed;

    std::set<Subspace> result = closure;

    // Atoms: minimal nonzero meets of filtration subspaces. A line inside an
    // atom lies in exactly the filtration subspaces above the atom, so one
    // representative per atom makes dimension-1 slope maximisation exact.
    for (const Subspace& a : meet_closed) {
        bool minimal = true;
        for (const Subspace& b : meet_closed)
            if (!(b == a) && a.contains(b)) { minimal = false; break; }
        if (!minimal) continue;
        if (a.dim() > 1) result.insert(Subspace::line(a.basis_row(0)));
    }

    // Co-atoms of the join-closure dually: one hyperplane (inside the sheaf
    // space) per maximal proper element, for corank-1 exactness.
    for (const Subspace& a : join_closed) {
        bool maximal = true;
        for (const Subspace& b : join_closed)
            if (!(b == a) && b.contains(a)) { maximal = false; break; }
        if (!maximal) continue;
        Subspace h = a;
        for (std::size_t b = 0; b < s.space.dim() && h.dim() + 1 < rank; ++b) {
            QVec v = s.space.basis_row(b);
            if (!h.contains(v)) h = subspace_join(h, Subspace::line(v));
        }
        if (h.dim() == rank - 1) result.insert(h);
    }

    // Generic-profile representative per intermediate dimension, verified
    // against every filtration subspace: dim(F cap V) = max(0, k + dim V - rank).
    if (config.generic_profiles) {
        std::mt19937_64 rng(config.seed);
        for (std::size_t k = 1; k < rank; ++k) {
            for (int attempt = 0; attempt < 64; ++attempt) {
                Subspace f = random_subspace(s.space, k, rng);
                bool generic = true;
                for (const Subspace& v : gens) {
                    std::size_t expect = v.dim() + k > rank ? v.dim() + k - rank : 0;
                    if (meet_dim(f, v) != expect) { generic = false; break; }
                }
                if (generic) {
                    result.insert(f);
                    out.includes_generic = true;
                    break;
                }
            }
        }
    }

    out.subspaces.assign(result.begin(), result.end());
    std::sort(out.subspaces.begin(), out.subspaces.end());
    return out;
}

namespace {

// Evaluate fn over [0, n) with the requested parallelism, deterministic order.
template <class T, class Fn>
std::vector<T> map_indexed(std::size_t n, int threads, Fn fn) {
    std::vector<T> out(n);
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    const std::size_t chunk = (n + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
    std::vector<std::future<void>> futures;
    for (std::size_t start = 0; start < n; start += chunk) {
        std::size_t end = std::min(n, start + chunk);
        futures.push_back(std::async(std::launch::async, [&, start, end] {
            for (std::size_t i = start; i < end; ++i) out[i] = fn(i);
        }));
    }
    for (auto& f : futures) f.get();
    return out;
}

Certainty classify_certainty(std::size_t rank, const CandidateSet& cands,
                             const std::vector<std::size_t>& extremal_dims) {
    if (rank <= 3) return Certainty::Certified;
    if (!cands.closed) return Certainty::RelativeToCandidates;
    for (std::size_t d : extremal_dims)
        if (d != 1 && d != rank - 1) return Certainty::RelativeToCandidates;
    return Certainty::Certified;
}

} // namespace

Verdict stability_verdict(const Fan& f, const EquivariantSheaf& s, const TDivisor<Rational>& l,
                          const CandidateSet& candidates, int threads) {
    if (!is_complete(f)) fail_precondition("stability needs a complete fan");
    check_sheaf(f, s);
    if (!is_ample(f, l)) fail_precondition("L is not ample");

    const std::vector<Rational> degs = ray_degrees(f, l);
    const Rational mu = slope_from_degrees(s, degs);

    std::vector<Rational> gaps = map_indexed<Rational>(
        candidates.subspaces.size(), threads,
        [&](std::size_t i) { return mu - subspace_slope_from_degrees(s, candidates.subspaces[i], degs); });

    Verdict v;
    Rational min_gap(1);
    bool any = false;
    for (const Rational& g : gaps) {
        if (!any || g < min_gap) min_gap = g;
        any = true;
    }
    std::vector<std::size_t> extremal_dims;
    if (!any) {
        v.kind = VerdictKind::Stable; // rank 1 or an empty candidate set
    } else if (min_gap < 0) {
        v.kind = VerdictKind::Unstable;
    } else if (min_gap == 0) {
        v.kind = VerdictKind::StrictlySemistable;
    } else {
        v.kind = VerdictKind::Stable;
    }
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (gaps[i] == min_gap) extremal_dims.push_back(candidates.subspaces[i].dim());
        bool witness = (v.kind == VerdictKind::Unstable && gaps[i] < 0) ||
                       (v.kind == VerdictKind::StrictlySemistable && gaps[i] == 0);
        if (witness) v.witnesses.push_back({candidates.subspaces[i], Poly(gaps[i])});
    }
    v.certainty = classify_certainty(s.rank(), candidates, extremal_dims);
    return v;
}

AdiabaticProblem resolve_adiabatic(const AdiabaticSetup& setup) {
    check_sheaf(setup.target, setup.sheaf);
    if (!is_complete(setup.target)) fail_precondition("adiabatic setup needs complete fans");
    if (!is_ample(setup.target, setup.polarisation)) fail_precondition("L is not ample");
    if (setup.fibration && !setup.blowup_taus.empty())
        fail_precondition("give either a fibration or blow-up centers, not both");

    AdiabaticProblem p;
    TDivisor<Rational> pulled_l;
    if (setup.fibration) {
        const ToricMorphism& m = *setup.fibration;
        if (!same_fan(m.target, setup.target))
            fail_precondition("fibration target does not match the setup fan");
        p.source = m.source;
        p.pulled = reflexive_pullback_fibration(m, setup.sheaf);
        pulled_l = pullback_divisor(m, setup.polarisation);
        if (!setup.eps_divisor) fail_precondition("a fibration setup needs an explicit eps divisor");
    } else {
        BlowupChain chain = make_blowup_chain(setup.target, setup.blowup_taus);
        p.source = chain.final_fan();
        p.pulled = pullback_sheaf(chain, setup.sheaf);
        pulled_l = pullback_divisor(chain, setup.polarisation);
        if (!setup.eps_divisor && setup.blowup_taus.empty())
            fail_precondition("identity setup needs an explicit eps divisor");
        if (!setup.eps_divisor) {
            // L_eps = pi^* L - eps E with E the total exceptional divisor.
            p.l_eps = adiabatic_divisor(pulled_l, -total_exceptional_divisor(chain));
        }
    }
    if (setup.eps_divisor) {
        if (setup.eps_divisor->coeffs.size() != p.source.ray_count())
            fail_schema("eps divisor lives on the wrong fan");
        p.l_eps = adiabatic_divisor(pulled_l, *setup.eps_divisor);
    }
    p.ample_radius = eventually_ample_threshold(p.source, p.l_eps);
    p.ray_degs = ray_degrees(p.source, p.l_eps);
    return p;
}

Poly adiabatic_slope_gap(const AdiabaticProblem& p, const Subspace& f_space) {
    return slope_from_degrees(p.pulled, p.ray_degs) -
           subspace_slope_from_degrees(p.pulled, f_space, p.ray_degs);
}

AdiabaticReport adiabatic_verdict(const AdiabaticSetup& setup, const CandidateConfig& config,
                                  int threads) {
    AdiabaticReport report;
    report.problem = resolve_adiabatic(setup);
    report.candidates = candidate_subspaces(report.problem.pulled, config);

    const auto& cands = report.candidates.subspaces;
    std::vector<Poly> gaps = map_indexed<Poly>(cands.size(), threads, [&](std::size_t i) {
        return adiabatic_slope_gap(report.problem, cands[i]);
    });
    for (std::size_t i = 0; i < cands.size(); ++i) report.gaps.emplace_back(cands[i], gaps[i]);

    Verdict& v = report.verdict;
    bool any_negative = false, any_zero = false;
    Rational radius = report.problem.ample_radius;
    for (const Poly& g : gaps) {
        if (g.is_zero()) { any_zero = true; continue; }
        if (g.lowest_coeff() < 0) any_negative = true;
        Rational r = g.sign_radius();
        if (r < radius) radius = r;
    }
    v.kind = any_negative ? VerdictKind::Unstable
                          : (any_zero ? VerdictKind::StrictlySemistable : VerdictKind::Stable);
    v.epsilon_bound = radius;
    // Extremal candidates: those whose gap is smallest in the lexicographic
    // order on coefficients, i.e. the slope maximisers for small eps.
    auto lex_less = [](const Poly& a, const Poly& b) {
        int top = std::max(a.degree(), b.degree());
        for (int k = 0; k <= top; ++k) {
            std::size_t kk = static_cast<std::size_t>(k);
            if (a.coeff(kk) != b.coeff(kk)) return a.coeff(kk) < b.coeff(kk);
        }
        return false;
    };
    std::vector<std::size_t> extremal_dims;
    if (!gaps.empty()) {
        const Poly* min_gap = &gaps[0];
        for (const Poly& g : gaps)
            if (lex_less(g, *min_gap)) min_gap = &g;
        for (std::size_t i = 0; i < gaps.size(); ++i)
            if (gaps[i] == *min_gap) extremal_dims.push_back(cands[i].dim());
    }
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        bool witness = (v.kind == VerdictKind::Unstable && !gaps[i].is_zero() && gaps[i].lowest_coeff() < 0) ||
                       (v.kind == VerdictKind::StrictlySemistable && gaps[i].is_zero());
        if (witness) v.witnesses.push_back({cands[i], gaps[i]});
    }
    v.certainty = classify_certainty(report.problem.pulled.rank(), report.candidates, extremal_dims);
    return report;
}

Rational curve_blowup_criterion(const Fan& f, const EquivariantSheaf& s, const Cone& tau_in,
                                const Subspace& f_space) {
    check_sheaf(f, s);
    if (!is_smooth(f)) fail_precondition("curve criterion needs a smooth fan");
    if (static_cast<int>(tau_in.size()) != f.rank - 1)
        fail_precondition("tau must be a wall (codimension one cone)");
    Cone tau = tau_in;
    std::sort(tau.begin(), tau.end());
    const Wall* wall = nullptr;
    std::vector<Wall> ws = walls(f);
    for (const Wall& w : ws)
        if (w.tau == tau) { wall = &w; break; }
    if (!wall) fail_precondition("tau is not a wall of exactly two maximal cones");

    // Sigma_0 = sigma(1) cup sigma'(1); solve sum alpha_rho u_rho = 0 with
    // alpha = 1 on the two rays outside tau.
    std::set<int> sigma0(f.max_cones[static_cast<std::size_t>(wall->cone_a)].begin(),
                         f.max_cones[static_cast<std::size_t>(wall->cone_a)].end());
    sigma0.insert(f.max_cones[static_cast<std::size_t>(wall->cone_b)].begin(),
                  f.max_cones[static_cast<std::size_t>(wall->cone_b)].end());
    std::vector<int> rays(sigma0.begin(), sigma0.end());
    QMat m(static_cast<std::size_t>(f.rank), rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (int d = 0; d < f.rank; ++d)
            m.at(static_cast<std::size_t>(d), i) =
                Rational(f.rays[static_cast<std::size_t>(rays[i])][static_cast<std::size_t>(d)]);
    QMat ker = kernel(m);
    if (ker.rows() != 1) fail_precondition("wall relation is not one-dimensional");
    QVec alpha = ker.row(0);
    std::vector<std::size_t> outer;
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (!std::binary_search(tau.begin(), tau.end(), rays[i])) outer.push_back(i);
    if (outer.size() != 2) fail_precondition("wall structure is degenerate");
    if (alpha[outer[0]] == 0) fail_precondition("degenerate wall relation");
    Rational scale = Rational(1) / alpha[outer[0]];
    for (Rational& x : alpha) x *= scale;
    if (alpha[outer[1]] != 1)
        fail_precondition("wall relation is not normalised (fan not smooth across the wall?)");

    if (f_space.dim() == 0) fail_precondition("F must be nonzero");
    const Rational rk_e(static_cast<long long>(s.rank()));
    const Rational rk_f(static_cast<long long>(f_space.dim()));
    Rational acc(0);
    for (std::size_t i = 0; i < rays.size(); ++i) {
        Rational term = Rational(iota(s, rays[i])) / rk_e -
                        Rational(iota_of_subspace(s, rays[i], f_space)) / rk_f;
        acc += alpha[i] * term;
    }
    return acc;
}

Rational restricted_slope(const Fan& f, const EquivariantSheaf& s, const Cone& tau,
                          const TDivisor<Rational>& l) {
    check_sheaf(f, s);
    if (!is_complete(f)) fail_precondition("restricted slope needs a complete fan");
    const int ell = f.rank - static_cast<int>(tau.size());
    if (ell < 1) fail_precondition("V(tau) must have dimension at least one");
    CycleClass<Rational> c = CycleClass<Rational>::of_cone(f, tau);
    for (int i = 0; i + 1 < ell; ++i) c = divisor_dot_cycle(f, l, c);
    c = divisor_dot_cycle(f, first_chern(f, s), c);
    return degree_of_point_cycle(f, c) / Rational(static_cast<long long>(s.rank()));
}

AuditResult audit_candidates(const Fan& f, const EquivariantSheaf& s, const TDivisor<Rational>& l,
                             const CandidateSet& candidates, int samples_per_dim,
                             unsigned long long seed) {
    AuditResult out;
    if (s.rank() <= 1 || candidates.subspaces.empty() || samples_per_dim <= 0) return out;
    const std::vector<Rational> degs = ray_degrees(f, l);
    Rational best;
    bool first = true;
    for (const Subspace& c : candidates.subspaces) {
        Rational mu = subspace_slope_from_degrees(s, c, degs);
        if (first || mu > best) { best = mu; first = false; }
    }
    std::mt19937_64 rng(seed);
    for (std::size_t k = 1; k < s.rank(); ++k)
        for (int i = 0; i < samples_per_dim; ++i) {
            Subspace f_space = random_subspace(s.space, k, rng);
            ++out.samples;
            if (subspace_slope_from_degrees(s, f_space, degs) > best) ++out.violations;
        }
    return out;
}

} // namespace toricstab
