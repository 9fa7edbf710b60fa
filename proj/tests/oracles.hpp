// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "toricstab/chow.hpp"
#include "toricstab/klyachko.hpp"

namespace toricstab::oracle {

// Intersection through annihilators: (A cap B) = ann(ann A + ann B), where
// ann S = null space of the basis matrix. Independent of the Zassenhaus
// route used by subspace_meet.
inline Subspace meet_via_kernels(const Subspace& a, const Subspace& b) {
    auto annihilator = [](const Subspace& s) {
        return kernel(s.basis());
    };
    QMat stacked = annihilator(a);
    QMat bk = annihilator(b);
    for (std::size_t i = 0; i < bk.rows(); ++i) stacked.append_row(bk.row(i));
    if (stacked.rows() == 0) return Subspace::full(a.ambient());
    QMat result = kernel(stacked);
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < result.rows(); ++i) rows.push_back(result.row(i));
    return Subspace::span(a.ambient(), rows);
}

// Product of the Smith elementary divisors; cross-checks the gcd-of-minors
// route of lattice_multiplicity.
inline Integer multiplicity_via_snf(const std::vector<ZVec>& gens) {
    SmithForm s = smith_normal_form(gens);
    Integer prod = 1;
    for (const Integer& d : s.divisors) prod *= d;
    return integer_abs(prod);
}

// n! vol(P_L) for a complete fan of rank 2: vertices are the per-cone
// solutions of <m, u_rho> = -a_rho, ordered by exact angular comparison
// around their centroid, area by the shoelace formula.
inline Rational normalized_polytope_volume_2d(const Fan& f, const TDivisor<Rational>& l) {
    std::vector<QVec> verts;
    for (const Cone& sigma : f.max_cones) {
        QMat sys(sigma.size(), 2);
        QVec rhs;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            for (int j = 0; j < 2; ++j)
                sys.at(i, static_cast<std::size_t>(j)) =
                    Rational(f.rays[static_cast<std::size_t>(sigma[i])][static_cast<std::size_t>(j)]);
            rhs.push_back(-l.coeffs[static_cast<std::size_t>(sigma[i])]);
        }
        auto m = solve<Rational>(sys, rhs);
        if (!m) throw std::runtime_error("vertex solve failed");
        if (std::find(verts.begin(), verts.end(), *m) == verts.end()) verts.push_back(*m);
    }
    QVec c{Rational(0), Rational(0)};
    for (const QVec& v : verts) { c[0] += v[0]; c[1] += v[1]; }
    c[0] /= Rational(static_cast<long long>(verts.size()));
    c[1] /= Rational(static_cast<long long>(verts.size()));
    auto half = [&](const QVec& p) {
        Rational x = p[0] - c[0], y = p[1] - c[1];
        return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
    };
    std::sort(verts.begin(), verts.end(), [&](const QVec& p, const QVec& q) {
        int hp = half(p), hq = half(q);
        if (hp != hq) return hp < hq;
        Rational cross = (p[0] - c[0]) * (q[1] - c[1]) - (p[1] - c[1]) * (q[0] - c[0]);
        return cross > 0;
    });
    Rational twice_area(0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const QVec& p = verts[i];
        const QVec& q = verts[(i + 1) % verts.size()];
        twice_area += p[0] * q[1] - p[1] * q[0];
    }
    return rational_abs(twice_area); // 2! * area
}

// Random equivariant sheaves of small rank with small jump positions.
inline EquivariantSheaf random_sheaf(const Fan& f, std::size_t rank, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<long long> pos(-3, 3);
    std::uniform_int_distribution<int> steps(1, static_cast<int>(rank));
    auto random_vec = [&] {
        QVec v(rank, Rational(0));
        bool nonzero = false;
        while (!nonzero)
            for (std::size_t i = 0; i < rank; ++i) {
                int e = entry(rng);
                v[i] = Rational(e);
                nonzero = nonzero || e != 0;
            }
        return v;
    };
    std::vector<Filtration> filts;
    for (std::size_t rho = 0; rho < f.ray_count(); ++rho) {
        int k = steps(rng);
        // Build a flag of k strictly increasing subspaces ending at full.
        std::vector<Subspace> flag;
        Subspace cur = Subspace::zero(rank);
        while (cur.dim() < rank) {
            Subspace next = subspace_join(cur, Subspace::line(random_vec()));
            if (next.dim() == cur.dim()) continue;
            cur = next;
            flag.push_back(cur);
        }
        if (static_cast<int>(flag.size()) > k) {
            // Thin the flag to at most k steps, always keeping the last.
            std::vector<Subspace> thin;
            for (std::size_t i = flag.size() - static_cast<std::size_t>(k); i < flag.size(); ++i)
                thin.push_back(flag[i]);
            flag = thin;
        }
        std::vector<long long> where;
        while (where.size() < flag.size()) {
            long long p = pos(rng);
            if (std::find(where.begin(), where.end(), p) == where.end()) where.push_back(p);
        }
        std::sort(where.begin(), where.end());
        std::vector<Filtration::Jump> jumps;
        for (std::size_t i = 0; i < flag.size(); ++i) jumps.emplace_back(where[i], flag[i]);
        filts.push_back(Filtration::make(rank, std::move(jumps)));
    }
    return make_sheaf(f, std::move(filts));
}

// Random sheaf that is locally free on the chart of `sigma`: the filtrations
// of sigma's rays split in one common random basis (Klyachko compatibility),
// rays outside sigma stay arbitrary.
inline EquivariantSheaf random_sheaf_split_at(const Fan& f, const Cone& sigma, std::size_t rank,
                                              std::mt19937_64& rng) {
    EquivariantSheaf s = random_sheaf(f, rank, rng);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<long long> weight(-3, 3);
    QMat basis(0, rank);
    while (basis.rows() < rank) {
        QVec v(rank);
        bool nonzero = false;
        for (std::size_t i = 0; i < rank; ++i) {
            int e = entry(rng);
            v[i] = Rational(e);
            nonzero = nonzero || e != 0;
        }
        if (!nonzero) continue;
        QMat probe = basis;
        probe.append_row(v);
        if (toricstab::rank(probe) == probe.rows()) basis.append_row(v);
    }
    for (int rho : sigma) {
        std::vector<long long> w(rank);
        for (auto& x : w) x = weight(rng);
        std::vector<long long> levels = w;
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        std::vector<Filtration::Jump> jumps;
        for (long long level : levels) {
            std::vector<QVec> rows;
            for (std::size_t i = 0; i < rank; ++i)
                if (w[i] <= level) rows.push_back(basis.row(i));
            jumps.emplace_back(level, Subspace::span(rank, rows));
        }
        s.filtrations[static_cast<std::size_t>(rho)] = Filtration::make(rank, std::move(jumps));
    }
    return s;
}

inline Subspace random_line(std::size_t ambient, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> entry(-9, 9);
    while (true) {
        QVec v(ambient, Rational(0));
        bool nonzero = false;
        for (std::size_t i = 0; i < ambient; ++i) {
            int e = entry(rng);
            v[i] = Rational(e);
            nonzero = nonzero || e != 0;
        }
        if (nonzero) return Subspace::line(v);
    }
}

} // namespace toricstab::oracle
