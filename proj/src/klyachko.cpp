#include "toricstab/klyachko.hpp"

#include <algorithm>

namespace toricstab {

Filtration Filtration::make(std::size_t ambient, std::vector<Jump> jumps) {
    if (jumps.empty()) fail_precondition("filtration needs at least one jump");
    Filtration f;
    f.ambient_ = ambient;
    f.zero_ = Subspace::zero(ambient);
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        if (jumps[i].second.ambient() != ambient)
            fail_precondition("filtration subspace has wrong ambient dimension");
        if (i > 0) {
            if (jumps[i].first <= jumps[i - 1].first)
                fail_precondition("filtration jump positions must strictly increase");
            if (!(jumps[i].second.contains(jumps[i - 1].second)) ||
                jumps[i].second.dim() <= jumps[i - 1].second.dim())
                fail_precondition("filtration subspaces must strictly increase");
        }
    }
    if (jumps.front().second.dim() == 0)
        fail_precondition("the first jump must introduce a nonzero subspace");
    f.jumps_ = std::move(jumps);
    return f;
}

Filtration Filtration::collapse(std::size_t ambient, const std::vector<Jump>& values) {
    std::vector<Jump> sorted = values;
    std::sort(sorted.begin(), sorted.end(),
              [](const Jump& a, const Jump& b) { return a.first < b.first; });
    std::vector<Jump> jumps;
    Subspace cur = Subspace::zero(ambient);
    for (const Jump& v : sorted) {
        if (v.second == cur) continue;
        jumps.emplace_back(v.first, v.second);
        cur = v.second;
    }
    return make(ambient, std::move(jumps));
}

const Subspace& Filtration::value_at(long long i) const {
    // Largest jump position <= i, zero below all jumps.
    auto it = std::upper_bound(jumps_.begin(), jumps_.end(), i,
                               [](long long x, const Jump& j) { return x < j.first; });
    if (it == jumps_.begin()) return zero_;
    return std::prev(it)->second;
}

EquivariantSheaf make_subsheaf(const Fan& f, Subspace space, std::vector<Filtration> filtrations) {
    EquivariantSheaf s;
    s.coord_dim = space.ambient();
    s.space = std::move(space);
    s.filtrations = std::move(filtrations);
    check_sheaf(f, s);
    return s;
}

EquivariantSheaf make_sheaf(const Fan& f, std::vector<Filtration> filtrations) {
    if (filtrations.empty()) fail_precondition("sheaf needs one filtration per ray");
    std::size_t dim = filtrations.front().ambient();
    return make_subsheaf(f, Subspace::full(dim), std::move(filtrations));
}

void check_sheaf(const Fan& f, const EquivariantSheaf& s) {
    if (s.filtrations.size() != f.ray_count())
        fail_precondition("sheaf must carry one filtration per ray of the fan");
    if (s.rank() == 0) fail_precondition("sheaf has rank zero");
    for (const Filtration& filt : s.filtrations) {
        if (filt.ambient() != s.coord_dim)
            fail_precondition("filtration ambient dimension mismatch");
        if (!(filt.top() == s.space))
            fail_precondition("every filtration must terminate at the sheaf space");
    }
}

long long iota(const EquivariantSheaf& s, int ray) {
    const Filtration& filt = s.filtrations[static_cast<std::size_t>(ray)];
    long long acc = 0;
    long long prev = 0;
    for (const auto& [j, v] : filt.jumps()) {
        acc += j * (static_cast<long long>(v.dim()) - prev);
        prev = static_cast<long long>(v.dim());
    }
    return acc;
}

long long iota_of_subspace(const EquivariantSheaf& s, int ray, const Subspace& f_space) {
    const Filtration& filt = s.filtrations[static_cast<std::size_t>(ray)];
    long long acc = 0;
    long long prev = 0;
    for (const auto& [j, v] : filt.jumps()) {
        long long d = static_cast<long long>(meet_dim(v, f_space));
        acc += j * (d - prev);
        prev = d;
    }
    return acc;
}

TDivisor<Rational> first_chern(const Fan& f, const EquivariantSheaf& s) {
    check_sheaf(f, s);
    TDivisor<Rational> d = TDivisor<Rational>::zero(f);
    for (std::size_t rho = 0; rho < f.ray_count(); ++rho)
        d.coeffs[rho] = Rational(-iota(s, static_cast<int>(rho)));
    return d;
}

EquivariantSheaf subsheaf_from_subspace(const EquivariantSheaf& s, const Subspace& f_space) {
    if (f_space.ambient() != s.coord_dim) fail_precondition("subspace in wrong coordinates");
    if (f_space.dim() == 0 || f_space.dim() >= s.rank())
        fail_precondition("subsheaf needs 0 < dim F < rank");
    if (!s.space.contains(f_space)) fail_precondition("F is not a subspace of E");
    EquivariantSheaf out;
    out.coord_dim = s.coord_dim;
    out.space = f_space;
    out.filtrations.reserve(s.filtrations.size());
    for (const Filtration& filt : s.filtrations) {
        std::vector<Filtration::Jump> vals;
        for (const auto& [j, v] : filt.jumps()) vals.emplace_back(j, subspace_meet(v, f_space));
        out.filtrations.push_back(Filtration::collapse(s.coord_dim, vals));
    }
    return out;
}

bool is_saturated(const EquivariantSheaf& sub, const EquivariantSheaf& amb) {
    if (sub.coord_dim != amb.coord_dim) fail_precondition("coordinate mismatch");
    if (sub.rank() >= amb.rank()) fail_precondition("sub sheaf must have smaller rank");
    if (sub.filtrations.size() != amb.filtrations.size()) fail_precondition("ray count mismatch");
    if (!amb.space.contains(sub.space)) fail_precondition("not a subsheaf: space containment fails");
    for (std::size_t rho = 0; rho < sub.filtrations.size(); ++rho) {
        const Filtration& fs = sub.filtrations[rho];
        const Filtration& fe = amb.filtrations[rho];
        std::vector<long long> positions;
        for (const auto& [j, v] : fs.jumps()) positions.push_back(j);
        for (const auto& [j, v] : fe.jumps()) positions.push_back(j);
        std::sort(positions.begin(), positions.end());
        positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
        for (long long p : positions) {
            const Subspace& sv = fs.value_at(p);
            const Subspace& ev = fe.value_at(p);
            if (!ev.contains(sv))
                fail_precondition("not a subsheaf: filtration containment fails");
            if (!(sv == subspace_meet(ev, sub.space))) return false;
        }
    }
    return true;
}

EquivariantSheaf tangent_sheaf(const Fan& f) {
    const std::size_t n = static_cast<std::size_t>(f.rank);
    std::vector<Filtration> filts;
    filts.reserve(f.ray_count());
    for (const ZVec& u : f.rays) {
        std::vector<Filtration::Jump> vals;
        vals.emplace_back(-1, Subspace::line(to_qvec(u)));
        vals.emplace_back(0, Subspace::full(n));
        filts.push_back(Filtration::collapse(n, vals));
    }
    return make_sheaf(f, std::move(filts));
}

std::vector<long long> characteristic_function(const Fan& f, const EquivariantSheaf& s,
                                               const ZVec& m) {
    check_sheaf(f, s);
    if (m.size() != static_cast<std::size_t>(f.rank)) fail_schema("lattice point has wrong length");
    std::vector<long long> out;
    out.reserve(f.max_cones.size());
    for (const Cone& sigma : f.max_cones) {
        Subspace cur = s.space;
        for (int rho : sigma) {
            Integer pairing = 0;
            for (int j = 0; j < f.rank; ++j)
                pairing += m[static_cast<std::size_t>(j)] *
                           f.rays[static_cast<std::size_t>(rho)][static_cast<std::size_t>(j)];
            const Filtration& filt = s.filtrations[static_cast<std::size_t>(rho)];
            cur = subspace_meet(cur, filt.value_at(pairing.convert_to<long long>()));
            if (cur.dim() == 0) break;
        }
        out.push_back(static_cast<long long>(cur.dim()));
    }
    return out;
}

namespace {

Subspace embed(const Subspace& s, std::size_t offset, std::size_t total) {
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        QVec r(total, Rational(0));
        QVec src = s.basis_row(i);
        for (std::size_t j = 0; j < src.size(); ++j) r[offset + j] = src[j];
        rows.push_back(r);
    }
    return Subspace::span(total, rows);
}

} // namespace

EquivariantSheaf direct_sum(const EquivariantSheaf& a, const EquivariantSheaf& b) {
    if (a.filtrations.size() != b.filtrations.size())
        fail_precondition("direct sum needs sheaves on the same fan");
    const std::size_t total = a.coord_dim + b.coord_dim;
    EquivariantSheaf out;
    out.coord_dim = total;
    out.space = subspace_join(embed(a.space, 0, total), embed(b.space, a.coord_dim, total));
    for (std::size_t rho = 0; rho < a.filtrations.size(); ++rho) {
        const Filtration& fa = a.filtrations[rho];
        const Filtration& fb = b.filtrations[rho];
        std::vector<long long> positions;
        for (const auto& [j, v] : fa.jumps()) positions.push_back(j);
        for (const auto& [j, v] : fb.jumps()) positions.push_back(j);
        std::sort(positions.begin(), positions.end());
        positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
        std::vector<Filtration::Jump> vals;
        for (long long p : positions)
            vals.emplace_back(p, subspace_join(embed(fa.value_at(p), 0, total),
                                               embed(fb.value_at(p), a.coord_dim, total)));
        out.filtrations.push_back(Filtration::collapse(total, vals));
    }
    return out;
}

} // namespace toricstab
