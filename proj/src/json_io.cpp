#include "toricstab/json_io.hpp"

#include <nlohmann/json.hpp>

namespace toricstab {

namespace {

json rational_json(const Rational& x) { return to_string(x); }

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail_schema("expected a rational as string or integer");
}

json qvec_json(const QVec& v) {
    json out = json::array();
    for (const Rational& x : v) out.push_back(rational_json(x));
    return out;
}

QVec qvec_from(const json& j) {
    if (!j.is_array()) fail_schema("expected an array of rationals");
    QVec out;
    for (const json& e : j) out.push_back(rational_from(e));
    return out;
}

} // namespace

json fan_to_json(const Fan& f) {
    json rays = json::array();
    for (const ZVec& u : f.rays) {
        json r = json::array();
        for (const Integer& x : u) r.push_back(x.str());
        rays.push_back(r);
    }
    json cones = json::array();
    for (const Cone& c : f.max_cones) cones.push_back(c);
    return json{{"rank", f.rank}, {"rays", rays}, {"max_cones", cones}};
}

Fan fan_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("rays") || !j.contains("max_cones"))
        fail_schema("fan needs rank, rays and max_cones");
    int rank = j.at("rank").get<int>();
    std::vector<ZVec> rays;
    for (const json& r : j.at("rays")) {
        ZVec u;
        for (const json& x : r) {
            if (x.is_number_integer()) u.push_back(Integer(x.get<long long>()));
            else if (x.is_string()) u.push_back(Integer(x.get<std::string>()));
            else fail_schema("ray entries must be integers");
        }
        rays.push_back(u);
    }
    std::vector<Cone> cones;
    for (const json& c : j.at("max_cones")) cones.push_back(c.get<Cone>());
    return make_fan(rank, std::move(rays), std::move(cones));
}

json divisor_to_json(const TDivisor<Rational>& d) {
    return json{{"coefficients", qvec_json(d.coeffs)}};
}

TDivisor<Rational> divisor_from_json(const json& j, const Fan& f) {
    if (!j.is_object() || !j.contains("coefficients")) fail_schema("divisor needs coefficients");
    TDivisor<Rational> d{qvec_from(j.at("coefficients"))};
    if (d.coeffs.size() != f.ray_count())
        fail_schema("divisor coefficient count does not match the fan's rays");
    return d;
}

json subspace_to_json(const Subspace& s) {
    json rows = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(qvec_json(s.basis_row(i)));
    return rows;
}

Subspace subspace_from_json(const json& j, std::size_t ambient) {
    if (!j.is_array()) fail_schema("subspace must be an array of basis vectors");
    std::vector<QVec> rows;
    for (const json& r : j) {
        QVec v = qvec_from(r);
        if (v.size() != ambient) fail_schema("subspace vector has wrong length");
        rows.push_back(v);
    }
    return Subspace::span(ambient, rows);
}

json sheaf_to_json(const EquivariantSheaf& s) {
    json filts = json::object();
    for (std::size_t rho = 0; rho < s.filtrations.size(); ++rho) {
        json jumps = json::array();
        for (const auto& [j, v] : s.filtrations[rho].jumps())
            jumps.push_back(json{{"jump", j}, {"span", subspace_to_json(v)}});
        filts[std::to_string(rho)] = jumps;
    }
    return json{{"rank", s.rank()}, {"filtrations", filts}};
}

EquivariantSheaf sheaf_from_json(const json& j, const Fan& f) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("filtrations"))
        fail_schema("sheaf needs rank and filtrations");
    const std::size_t rank = j.at("rank").get<std::size_t>();
    std::vector<Filtration> filts;
    const json& fj = j.at("filtrations");
    for (std::size_t rho = 0; rho < f.ray_count(); ++rho) {
        std::string key = std::to_string(rho);
        if (!fj.contains(key)) fail_schema("missing filtration for ray " + key);
        std::vector<Filtration::Jump> jumps;
        for (const json& e : fj.at(key)) {
            if (!e.contains("jump") || !e.contains("span")) fail_schema("jump needs jump and span");
            jumps.emplace_back(e.at("jump").get<long long>(),
                               subspace_from_json(e.at("span"), rank));
        }
        filts.push_back(Filtration::collapse(rank, jumps));
    }
    return make_sheaf(f, std::move(filts));
}

json poly_to_json(const Poly& p) {
    json out = json::array();
    int top = p.degree();
    for (int k = 0; k <= top; ++k) out.push_back(rational_json(p.coeff(static_cast<std::size_t>(k))));
    if (out.empty()) out.push_back("0");
    return out;
}

json verdict_to_json(const Verdict& v) {
    json witnesses = json::array();
    for (const Witness& w : v.witnesses)
        witnesses.push_back(json{{"subspace", subspace_to_json(w.subspace)},
                                 {"gap", poly_to_json(w.gap)}});
    json out{{"kind", to_string(v.kind)},
             {"witnesses", witnesses},
             {"certainty", to_string(v.certainty)}};
    if (v.epsilon_bound) out["epsilon_bound"] = rational_json(*v.epsilon_bound);
    return out;
}

json adiabatic_report_to_json(const AdiabaticReport& r) {
    json gaps = json::array();
    for (const auto& [f, g] : r.gaps)
        gaps.push_back(json{{"subspace", subspace_to_json(f)}, {"gap", poly_to_json(g)}});
    return json{{"verdict", verdict_to_json(r.verdict)},
                {"gaps", gaps},
                {"ample_radius", rational_json(r.problem.ample_radius)},
                {"source_fan", fan_to_json(r.problem.source)},
                {"pulled_sheaf", sheaf_to_json(r.problem.pulled)}};
}

json defect_to_json(const Defect& d) {
    json levels = json::array();
    for (const auto& [j, v] : d.per_level) levels.push_back(json{{"j", j}, {"d", v}});
    return json{{"per_level", levels}, {"total", d.total}};
}

json workspace_to_json(const Workspace& w) {
    json out{{"fan", fan_to_json(w.fan)}};
    if (w.sheaf) out["sheaf"] = sheaf_to_json(*w.sheaf);
    if (w.polarisation) out["polarisation"] = divisor_to_json(*w.polarisation);
    if (w.eps_divisor) out["eps_divisor"] = divisor_to_json(*w.eps_divisor);
    if (!w.blowup_taus.empty()) {
        json taus = json::array();
        for (const Cone& t : w.blowup_taus) taus.push_back(t);
        out["blowup_taus"] = taus;
    }
    if (w.subspace) out["subspace"] = subspace_to_json(*w.subspace);
    return out;
}

Workspace workspace_from_json(const json& j) {
    Workspace w{fan_from_json(j.at("fan")), {}, {}, {}, {}, {}};
    if (j.contains("sheaf")) w.sheaf = sheaf_from_json(j.at("sheaf"), w.fan);
    if (j.contains("polarisation")) w.polarisation = divisor_from_json(j.at("polarisation"), w.fan);
    if (j.contains("blowup_taus"))
        for (const json& t : j.at("blowup_taus")) w.blowup_taus.push_back(t.get<Cone>());
    if (j.contains("eps_divisor")) {
        // Lives on the source fan when there are blow-ups.
        if (w.blowup_taus.empty()) {
            w.eps_divisor = divisor_from_json(j.at("eps_divisor"), w.fan);
        } else {
            BlowupChain chain = make_blowup_chain(w.fan, w.blowup_taus);
            w.eps_divisor = divisor_from_json(j.at("eps_divisor"), chain.final_fan());
        }
    }
    if (j.contains("subspace") && w.sheaf)
        w.subspace = subspace_from_json(j.at("subspace"), w.sheaf->coord_dim);
    return w;
}

} // namespace toricstab
