#include "toricstab/fixtures.hpp"

namespace toricstab {
namespace fixtures {

namespace {

ZVec zv(std::initializer_list<long long> xs) {
    ZVec v;
    for (long long x : xs) v.push_back(Integer(x));
    return v;
}

Rational param(const std::map<std::string, std::string>& params, const std::string& key,
               const Rational& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : parse_rational(it->second);
}

} // namespace

Fan p1() { return make_fan(1, {zv({1}), zv({-1})}, {{0}, {1}}); }

Fan p2() {
    return make_fan(2, {zv({1, 0}), zv({0, 1}), zv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}

Fan p3() {
    return make_fan(3, {zv({1, 0, 0}), zv({0, 1, 0}), zv({0, 0, 1}), zv({-1, -1, -1})},
                    {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

Fan p1xp1() {
    return make_fan(2, {zv({1, 0}), zv({0, 1}), zv({-1, 0}), zv({0, -1})},
                    {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

Fan hirzebruch(int a) {
    return make_fan(2, {zv({1, 0}), zv({0, 1}), zv({-1, a}), zv({0, -1})},
                    {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

Fan del_pezzo_singular() {
    return make_fan(2, {zv({1, 0}), zv({0, 1}), zv({-2, 1}), zv({0, -1})},
                    {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

Fan affine_plane() { return make_fan(2, {zv({1, 0}), zv({0, 1})}, {{0, 1}}); }

Fan projectivised_split_bundle(int r) {
    if (r < 2) fail_precondition("projectivised split bundle needs r >= 2");
    const int n = r + 1;
    std::vector<ZVec> rays;
    // w0 = v_r - w1, w1 = e_1; v_i = e_{i+1} for 1 <= i <= r; v_0 = -(v_1+..+v_r).
    ZVec w0(static_cast<std::size_t>(n), 0), w1(static_cast<std::size_t>(n), 0);
    w1[0] = 1;
    w0[0] = -1;
    w0[static_cast<std::size_t>(n - 1)] = 1;
    rays.push_back(w0);
    rays.push_back(w1);
    ZVec v0(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= r; ++i) v0[static_cast<std::size_t>(i)] = -1;
    rays.push_back(v0);
    for (int i = 1; i <= r; ++i) {
        ZVec vi(static_cast<std::size_t>(n), 0);
        vi[static_cast<std::size_t>(i)] = 1;
        rays.push_back(vi);
    }
    // Ray indices: w0 = 0, w1 = 1, v0 = 2, v_i = 2 + i.
    std::vector<Cone> cones;
    for (int j = 0; j <= 1; ++j)
        for (int skip = 0; skip <= r; ++skip) {
            Cone c{j};
            for (int i = 0; i <= r; ++i)
                if (i != skip) c.push_back(2 + i);
            cones.push_back(c);
        }
    return make_fan(n, std::move(rays), std::move(cones));
}

EquivariantSheaf affine_plane_sheaf() {
    Fan f = affine_plane();
    Subspace e1 = Subspace::line({Rational(1), Rational(0)});
    Subspace e2 = Subspace::line({Rational(0), Rational(1)});
    Subspace full = Subspace::full(2);
    std::vector<Filtration> filts;
    filts.push_back(Filtration::make(2, {{1, e1}, {3, full}}));
    filts.push_back(Filtration::make(2, {{1, e2}, {2, full}}));
    return make_sheaf(f, std::move(filts));
}

TDivisor<Rational> del_pezzo_perturbation(const Rational& a, const Rational& b) {
    Fan f = del_pezzo_singular();
    TDivisor<Rational> d = TDivisor<Rational>::zero(f);
    d.coeffs[2] = a;
    d.coeffs[3] = b;
    return d;
}

TDivisor<Rational> split_bundle_polarisation(int r, const Rational& nu) {
    Fan f = projectivised_split_bundle(r);
    TDivisor<Rational> d = TDivisor<Rational>::zero(f);
    d.coeffs[0] = nu; // D_{w0}
    d.coeffs[2] = 1;  // D_{v0}
    return d;
}

Cone split_bundle_stabilising_tau(int r) {
    Cone c{0}; // w0
    for (int i = 1; i <= r - 1; ++i) c.push_back(2 + i);
    return c;
}

Cone split_bundle_destabilising_tau(int r) {
    Cone c{2}; // v0
    for (int i = 1; i <= r - 1; ++i) c.push_back(2 + i);
    return c;
}

TDivisor<Rational> anticanonical(const Fan& f) {
    TDivisor<Rational> d = TDivisor<Rational>::zero(f);
    for (Rational& c : d.coeffs) c = 1;
    return d;
}

std::vector<std::string> fixture_names() {
    return {"p1", "p2", "p3", "p1xp1", "hirzebruch-1", "example-3-6", "example-4-4",
            "sec-4-5-r2", "sec-4-5-r3"};
}

Workspace load_fixture(const std::string& name,
                       const std::map<std::string, std::string>& params) {
    Workspace w;
    if (name == "p1") {
        w.fan = p1();
        w.sheaf = tangent_sheaf(w.fan);
        w.polarisation = anticanonical(w.fan);
    } else if (name == "p2") {
        w.fan = p2();
        w.sheaf = tangent_sheaf(w.fan);
        w.polarisation = anticanonical(w.fan);
    } else if (name == "p3") {
        w.fan = p3();
        w.sheaf = tangent_sheaf(w.fan);
        w.polarisation = anticanonical(w.fan);
    } else if (name == "p1xp1") {
        w.fan = p1xp1();
        w.sheaf = tangent_sheaf(w.fan);
        w.polarisation = anticanonical(w.fan);
    } else if (name == "hirzebruch-1") {
        w.fan = hirzebruch(1);
        w.sheaf = tangent_sheaf(w.fan);
        w.polarisation = anticanonical(w.fan);
    } else if (name == "example-3-6") {
        w.fan = del_pezzo_singular();
        w.sheaf = tangent_sheaf(w.fan);
        w.polarisation = anticanonical(w.fan); // -K = D1+D2+D3+D4
        w.eps_divisor = del_pezzo_perturbation(param(params, "a", Rational(1)),
                                               param(params, "b", Rational(2)));
        w.subspace = Subspace::line({Rational(0), Rational(1)}); // Span(u2)
    } else if (name == "example-4-4") {
        w.fan = affine_plane();
        w.sheaf = affine_plane_sheaf();
        w.blowup_taus = {{0, 1}};
        w.subspace = Subspace::line({Rational(1), Rational(1)}); // Span(u1 + u2)
    } else if (name == "sec-4-5-r2" || name == "sec-4-5-r3") {
        int r = name.back() == '2' ? 2 : 3;
        w.fan = projectivised_split_bundle(r);
        w.sheaf = tangent_sheaf(w.fan);
        Rational nu0 = Rational(1) / Rational(r + 1);
        w.polarisation = split_bundle_polarisation(r, param(params, "nu", nu0));
        w.blowup_taus = {split_bundle_stabilising_tau(r)};
        // F = Span(v0, ..., vr), the unique equal-slope saturated subsheaf.
        std::vector<QVec> rows;
        for (int i = 2; i < 3 + r; ++i) rows.push_back(to_qvec(w.fan.rays[static_cast<std::size_t>(i)]));
        w.subspace = Subspace::span(static_cast<std::size_t>(r + 1), rows);
    } else {
        fail_schema("unknown fixture: " + name);
    }
    return w;
}

} // namespace fixtures
} // namespace toricstab
