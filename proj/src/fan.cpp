#include "toricstab/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toricstab {

namespace {

std::string cone_str(const Cone& c) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "}";
    return os.str();
}

std::vector<ZVec> cone_generators(const Fan& f, const Cone& c) {
    std::vector<ZVec> g;
    g.reserve(c.size());
    for (int i : c) g.push_back(f.rays[static_cast<std::size_t>(i)]);
    return g;
}

Cone sorted(Cone c) {
    std::sort(c.begin(), c.end());
    return c;
}

Cone set_intersection(const Cone& a, const Cone& b) {
    Cone out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const Cone& a, const Cone& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Does sigma `a` meet sigma `b` outside the common face? Tested per
// non-common ray r of `a`: feasibility of
//   sum_a lambda u - sum_b mu u' = 0, lambda, mu >= 0, lambda_r = 1.
// The simplicial coordinates of a point of `a` are unique, so the
// intersection equals Cone(common rays) iff all these systems are infeasible.
bool overlaps_outside_common_face(const Fan& f, const Cone& a, const Cone& b) {
    Cone common = set_intersection(a, b);
    const int n = f.rank;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::binary_search(common.begin(), common.end(), a[k])) continue;
        const std::size_t vars = a.size() + b.size();
        QMat sys(static_cast<std::size_t>(n) + 1, vars);
        QVec rhs(static_cast<std::size_t>(n) + 1, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int d = 0; d < n; ++d)
                sys.at(static_cast<std::size_t>(d), i) =
                    Rational(f.rays[static_cast<std::size_t>(a[i])][static_cast<std::size_t>(d)]);
        for (std::size_t i = 0; i < b.size(); ++i)
            for (int d = 0; d < n; ++d)
                sys.at(static_cast<std::size_t>(d), a.size() + i) =
                    -Rational(f.rays[static_cast<std::size_t>(b[i])][static_cast<std::size_t>(d)]);
        sys.at(static_cast<std::size_t>(n), k) = 1;
        rhs[static_cast<std::size_t>(n)] = 1;
        if (lp_feasible(sys, rhs)) return true;
    }
    return false;
}

} // namespace

std::vector<std::string> validate_fan(const Fan& f) {
    std::vector<std::string> out;
    if (f.rank <= 0) {
        out.push_back("rank must be positive");
        return out;
    }
    std::set<ZVec> seen;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        const ZVec& u = f.rays[i];
        if (static_cast<int>(u.size()) != f.rank) {
            out.push_back("ray " + std::to_string(i) + " has wrong length");
            return out; // cone checks below index into the rays
        }
        bool zero = std::all_of(u.begin(), u.end(), [](const Integer& x) { return x == 0; });
        if (zero) { out.push_back("ray " + std::to_string(i) + " is zero"); continue; }
        if (!is_primitive(u)) out.push_back("ray " + std::to_string(i) + " is not primitive");
        if (!seen.insert(u).second) out.push_back("ray " + std::to_string(i) + " duplicates another ray");
    }

    std::vector<bool> covered(f.rays.size(), false);
    std::vector<Cone> cones;
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        Cone c = sorted(f.max_cones[ci]);
        bool bad = c.empty();
        for (int r : c)
            if (r < 0 || static_cast<std::size_t>(r) >= f.rays.size()) bad = true;
        if (bad) { out.push_back("cone " + std::to_string(ci) + " has invalid ray indices"); continue; }
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
            out.push_back("cone " + std::to_string(ci) + " repeats a ray");
            continue;
        }
        for (int r : c) covered[static_cast<std::size_t>(r)] = true;
        QMat m(c.size(), static_cast<std::size_t>(f.rank));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (int d = 0; d < f.rank; ++d)
                m.at(i, static_cast<std::size_t>(d)) =
                    Rational(f.rays[static_cast<std::size_t>(c[i])][static_cast<std::size_t>(d)]);
        if (rank(m) != c.size()) {
            out.push_back("cone " + cone_str(c) + " is not simplicial");
            continue;
        }
        cones.push_back(c);
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (!covered[i]) out.push_back("ray " + std::to_string(i) + " lies in no maximal cone");

    for (std::size_t i = 0; i < cones.size(); ++i)
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            if (is_subset(cones[i], cones[j]) || is_subset(cones[j], cones[i])) {
                out.push_back("maximal cone " + cone_str(cones[i]) + " contains " + cone_str(cones[j]) +
                              " (or vice versa)");
                continue;
            }
            if (overlaps_outside_common_face(f, cones[i], cones[j]))
                out.push_back("cones " + cone_str(cones[i]) + " and " + cone_str(cones[j]) +
                              " do not intersect in a common face");
        }
    return out;
}

Fan make_fan(int rank, std::vector<ZVec> rays, std::vector<Cone> max_cones) {
    Fan f;
    f.rank = rank;
    f.rays = std::move(rays);
    f.max_cones.reserve(max_cones.size());
    for (Cone& c : max_cones) f.max_cones.push_back(sorted(std::move(c)));
    std::vector<std::string> bad = validate_fan(f);
    if (!bad.empty()) fail_precondition("invalid fan: " + bad.front());
    return f;
}

bool is_cone_of(const Fan& f, const Cone& c) {
    Cone s = sorted(c);
    for (const Cone& m : f.max_cones)
        if (is_subset(s, m)) return true;
    return false;
}

Integer cone_multiplicity(const Fan& f, const Cone& c) {
    if (c.empty()) return 1;
    return lattice_multiplicity(cone_generators(f, c));
}

bool is_smooth_cone(const Fan& f, const Cone& c) {
    return cone_multiplicity(f, c) == 1;
}

bool is_smooth(const Fan& f) {
    for (const Cone& c : f.max_cones)
        if (!is_smooth_cone(f, c)) return false;
    return true;
}

std::vector<Wall> walls(const Fan& f) {
    std::map<Cone, std::vector<int>> facet_owners;
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const Cone& c = f.max_cones[ci];
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            Cone facet;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) facet.push_back(c[i]);
            facet_owners[facet].push_back(static_cast<int>(ci));
        }
    }
    std::vector<Wall> out;
    for (const auto& [facet, owners] : facet_owners)
        if (owners.size() == 2) out.push_back({facet, owners[0], owners[1]});
    return out;
}

bool is_complete(const Fan& f) {
    for (const Cone& c : f.max_cones)
        if (static_cast<int>(c.size()) != f.rank) return false;
    std::map<Cone, int> count;
    for (const Cone& c : f.max_cones)
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            Cone facet;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) facet.push_back(c[i]);
            ++count[facet];
        }
    for (const auto& [facet, n] : count)
        if (n != 2) return false;
    return !f.max_cones.empty();
}

std::optional<QVec> cone_coordinates(const Fan& f, const Cone& c, const QVec& v) {
    QMat m(static_cast<std::size_t>(f.rank), c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (int d = 0; d < f.rank; ++d)
            m.at(static_cast<std::size_t>(d), i) =
                Rational(f.rays[static_cast<std::size_t>(c[i])][static_cast<std::size_t>(d)]);
    return solve<Rational>(m, v);
}

bool cone_contains(const Fan& f, const Cone& c, const QVec& v) {
    auto lam = cone_coordinates(f, c, v);
    if (!lam) return false;
    for (const Rational& l : *lam)
        if (l < 0) return false;
    return true;
}

Cone minimal_cone(const Fan& f, const QVec& v) {
    bool zero = std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
    if (zero) return {};
    for (const Cone& c : f.max_cones) {
        auto lam = cone_coordinates(f, c, v);
        if (!lam) continue;
        bool ok = true;
        for (const Rational& l : *lam)
            if (l < 0) { ok = false; break; }
        if (!ok) continue;
        Cone support;
        for (std::size_t i = 0; i < c.size(); ++i)
            if ((*lam)[i] > 0) support.push_back(c[i]);
        return support;
    }
    fail_precondition("vector lies outside the fan support");
}

// Toric morphisms -----------------------------------------------------------

ZVec ToricMorphism::apply(const ZVec& v) const {
    ZVec out(matrix.size(), 0);
    for (std::size_t i = 0; i < matrix.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += matrix[i][j] * v[j];
    return out;
}

bool ToricMorphism::is_identity_matrix() const {
    if (matrix.size() != static_cast<std::size_t>(source.rank)) return false;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        if (matrix[i].size() != matrix.size()) return false;
        for (std::size_t j = 0; j < matrix[i].size(); ++j)
            if (matrix[i][j] != Integer(i == j ? 1 : 0)) return false;
    }
    return true;
}

std::vector<RayImage> classify_ray_images(const ToricMorphism& m) {
    std::vector<RayImage> out;
    out.reserve(m.source.rays.size());
    for (const ZVec& u : m.source.rays) {
        ZVec w = m.apply(u);
        RayImage img;
        bool zero = std::all_of(w.begin(), w.end(), [](const Integer& x) { return x == 0; });
        if (zero) {
            img.kind = RayImage::Kind::Zero;
        } else {
            ZVec prim = primitive_part(w);
            Integer g = 0;
            for (const Integer& x : w) g = gcd(g, x);
            int ray = -1;
            for (std::size_t i = 0; i < m.target.rays.size(); ++i)
                if (m.target.rays[i] == prim) { ray = static_cast<int>(i); break; }
            if (ray >= 0) {
                img.kind = RayImage::Kind::Ray;
                img.target_ray = ray;
                img.scale = g;
            } else {
                img.kind = RayImage::Kind::Higher;
                img.min_cone = minimal_cone(m.target, to_qvec(w));
            }
        }
        out.push_back(std::move(img));
    }
    return out;
}

ToricMorphism make_morphism(Fan source, Fan target, std::vector<ZVec> matrix) {
    if (matrix.size() != static_cast<std::size_t>(target.rank))
        fail_schema("morphism matrix must have target-rank rows");
    for (const ZVec& r : matrix)
        if (r.size() != static_cast<std::size_t>(source.rank))
            fail_schema("morphism matrix must have source-rank columns");
    ToricMorphism m;
    m.matrix = std::move(matrix);
    m.source = std::move(source);
    m.target = std::move(target);
    // Compatibility: the image of every maximal source cone must land in a
    // single target cone.
    for (const Cone& c : m.source.max_cones) {
        bool placed = false;
        for (const Cone& t : m.target.max_cones) {
            bool all = true;
            for (int r : c) {
                ZVec w = m.apply(m.source.rays[static_cast<std::size_t>(r)]);
                if (!cone_contains(m.target, t, to_qvec(w))) { all = false; break; }
            }
            if (all) { placed = true; break; }
        }
        if (!placed)
            fail_precondition("lattice map is not compatible with the fans (cone " + cone_str(c) + ")");
    }
    m.ray_images = classify_ray_images(m);
    return m;
}

ToricMorphism identity_morphism(const Fan& f) {
    std::vector<ZVec> id(static_cast<std::size_t>(f.rank), ZVec(static_cast<std::size_t>(f.rank), 0));
    for (int i = 0; i < f.rank; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return make_morphism(f, f, id);
}

bool is_fibration(const ToricMorphism& m) {
    return is_surjective_lattice_map(m.matrix, static_cast<std::size_t>(m.source.rank));
}

std::vector<int> higher_rays(const ToricMorphism& m) {
    std::vector<int> out;
    for (std::size_t i = 0; i < m.ray_images.size(); ++i)
        if (m.ray_images[i].kind == RayImage::Kind::Higher) out.push_back(static_cast<int>(i));
    return out;
}

StarSubdivision star_subdivision(const Fan& f, const Cone& tau_in) {
    Cone tau = sorted(tau_in);
    if (tau.size() < 2) fail_precondition("star subdivision needs dim(tau) >= 2");
    if (!is_cone_of(f, tau)) fail_precondition("tau is not a cone of the fan");

    ZVec u_tau(static_cast<std::size_t>(f.rank), 0);
    for (int r : tau)
        for (int d = 0; d < f.rank; ++d)
            u_tau[static_cast<std::size_t>(d)] += f.rays[static_cast<std::size_t>(r)][static_cast<std::size_t>(d)];

    Fan g;
    g.rank = f.rank;
    g.rays = f.rays;
    g.rays.push_back(u_tau);
    const int new_ray = static_cast<int>(f.rays.size());

    for (const Cone& c : f.max_cones) {
        if (!is_subset(tau, c)) {
            g.max_cones.push_back(c);
            continue;
        }
        if (!is_smooth_cone(f, c))
            fail_precondition("star subdivision requires every cone containing tau to be smooth");
        // Maximal cones of the subdivided star: drop one ray of tau, add u_tau.
        for (int dropped : tau) {
            Cone nc;
            for (int r : c)
                if (r != dropped) nc.push_back(r);
            nc.push_back(new_ray);
            g.max_cones.push_back(sorted(std::move(nc)));
        }
    }

    std::vector<std::string> bad = validate_fan(g);
    if (!bad.empty()) fail_precondition("star subdivision produced an invalid fan: " + bad.front());

    std::vector<ZVec> id(static_cast<std::size_t>(f.rank), ZVec(static_cast<std::size_t>(f.rank), 0));
    for (int i = 0; i < f.rank; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    StarSubdivision out{g, make_morphism(g, f, id), new_ray};
    return out;
}

bool same_fan(const Fan& a, const Fan& b) {
    if (a.rank != b.rank || a.rays.size() != b.rays.size()) return false;
    std::vector<int> perm(a.rays.size(), -1); // a-ray index -> b-ray index
    for (std::size_t i = 0; i < a.rays.size(); ++i) {
        for (std::size_t j = 0; j < b.rays.size(); ++j)
            if (a.rays[i] == b.rays[j]) { perm[i] = static_cast<int>(j); break; }
        if (perm[i] < 0) return false;
    }
    std::set<Cone> lhs, rhs;
    for (const Cone& c : a.max_cones) {
        Cone mapped;
        for (int r : c) mapped.push_back(perm[static_cast<std::size_t>(r)]);
        lhs.insert(sorted(mapped));
    }
    for (const Cone& c : b.max_cones) rhs.insert(sorted(c));
    return lhs == rhs;
}

} // namespace toricstab
