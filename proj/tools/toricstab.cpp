// toricstab: exact slope-stability computations for equivariant sheaves on
// toric varieties, with adiabatic polarisations along fibrations and
// blow-ups. All arithmetic is rational; output is deterministic.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "toricstab/fixtures.hpp"
#include "toricstab/json_io.hpp"

using namespace toricstab;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_schema("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail_schema("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

Cone parse_cone(const std::string& text) {
    Cone c;
    std::string cur;
    try {
        for (char ch : text + ",") {
            if (ch == ',') {
                if (!cur.empty()) c.push_back(std::stoi(cur));
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
    } catch (const std::exception&) {
        fail_schema("malformed ray-index list: " + text);
    }
    if (c.empty()) fail_schema("empty ray-index list");
    std::sort(c.begin(), c.end());
    return c;
}

struct CommonOpts {
    bool json_out = false;
    int threads = 1;
    int audit_samples = 0;
};

struct Inputs {
    std::string fixture;
    std::string fan_file, sheaf_file, pol_file, eps_file, subspace_file, candidates_file;
    std::string source_fan_file, matrix_file;
    std::vector<std::string> taus;
    std::string a, b, nu;

    Workspace resolve() const {
        Workspace w;
        if (!fixture.empty()) {
            std::map<std::string, std::string> params;
            if (!a.empty()) params["a"] = a;
            if (!b.empty()) params["b"] = b;
            if (!nu.empty()) params["nu"] = nu;
            w = fixtures::load_fixture(fixture, params);
        }
        if (!fan_file.empty()) w.fan = fan_from_json(read_json_file(fan_file));
        if (w.fan.rank == 0) fail_schema("no fan given (use --fan or --fixture)");
        if (!sheaf_file.empty()) w.sheaf = sheaf_from_json(read_json_file(sheaf_file), w.fan);
        if (!pol_file.empty()) w.polarisation = divisor_from_json(read_json_file(pol_file), w.fan);
        if (!taus.empty()) {
            w.blowup_taus.clear();
            for (const std::string& t : taus) w.blowup_taus.push_back(parse_cone(t));
        }
        if (!eps_file.empty() && source_fan_file.empty()) {
            json je = read_json_file(eps_file);
            if (w.blowup_taus.empty()) {
                w.eps_divisor = divisor_from_json(je, w.fan);
            } else {
                BlowupChain chain = make_blowup_chain(w.fan, w.blowup_taus);
                w.eps_divisor = divisor_from_json(je, chain.final_fan());
            }
        }
        if (!subspace_file.empty()) {
            if (!w.sheaf) fail_schema("--subspace needs a sheaf");
            w.subspace = subspace_from_json(read_json_file(subspace_file), w.sheaf->coord_dim);
        }
        return w;
    }
};

void add_inputs(CLI::App* cmd, Inputs& in, bool taus_flag = true) {
    cmd->add_option("--fixture", in.fixture, "named fixture (see `toricstab fixtures`)");
    cmd->add_option("--fan,--target-fan", in.fan_file, "fan JSON file");
    cmd->add_option("--sheaf", in.sheaf_file, "sheaf JSON file");
    cmd->add_option("--pol", in.pol_file, "polarisation divisor JSON file");
    cmd->add_option("--eps-div", in.eps_file, "epsilon-direction divisor JSON file");
    cmd->add_option("--subspace", in.subspace_file, "subspace JSON file (basis rows)");
    if (taus_flag)
        cmd->add_option("--blowup-tau,--tau", in.taus,
                        "blow-up center as comma-separated ray indices; repeatable");
    cmd->add_option("--a", in.a, "fixture parameter a");
    cmd->add_option("--b", in.b, "fixture parameter b");
    cmd->add_option("--nu", in.nu, "fixture parameter nu");
}

void emit(const CommonOpts& opts, const json& machine, const std::string& human) {
    if (opts.json_out)
        std::cout << machine.dump(2) << "\n";
    else
        std::cout << human;
}

std::string poly_human(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = 0; k <= p.degree(); ++k) {
        Rational c = p.coeff(static_cast<std::size_t>(k));
        if (c == 0) continue;
        if (!first) out += " + ";
        out += to_string(c);
        if (k == 1) out += "*eps";
        if (k > 1) out += "*eps^" + std::to_string(k);
        first = false;
    }
    return out;
}

std::string verdict_human(const Verdict& v) {
    std::string out = "verdict: " + std::string(to_string(v.kind)) +
                      "  (certainty: " + to_string(v.certainty) + ")\n";
    if (v.epsilon_bound) out += "eps_0: " + to_string(*v.epsilon_bound) + "\n";
    for (const Witness& w : v.witnesses) {
        out += "witness F (dim " + std::to_string(w.subspace.dim()) + "):";
        for (std::size_t i = 0; i < w.subspace.dim(); ++i) {
            out += " [";
            QVec row = w.subspace.basis_row(i);
            for (std::size_t j = 0; j < row.size(); ++j)
                out += (j ? " " : "") + to_string(row[j]);
            out += "]";
        }
        out += "  gap: " + poly_human(w.gap) + "\n";
    }
    return out;
}

AdiabaticSetup make_setup(const Workspace& w, bool fibration_pending = false) {
    if (!w.sheaf) fail_schema("missing sheaf");
    if (!w.polarisation) fail_schema("missing polarisation");
    AdiabaticSetup setup;
    setup.target = w.fan;
    setup.sheaf = *w.sheaf;
    setup.polarisation = *w.polarisation;
    if (!fibration_pending) {
        setup.blowup_taus = w.blowup_taus;
        setup.eps_divisor = w.eps_divisor;
        if (setup.blowup_taus.empty() && !setup.eps_divisor)
            fail_schema("adiabatic needs --blowup-tau and/or --eps-div");
    }
    return setup;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact stability of equivariant sheaves on toric varieties"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts opts;
    app.add_flag("--json", opts.json_out, "machine-readable output");
    app.add_option("--threads", opts.threads, "worker threads for candidate evaluation");
    app.add_option("--audit-samples", opts.audit_samples,
                   "random subspaces per dimension for the candidate audit");

    Inputs in;

    auto* c_fixtures = app.add_subcommand("fixtures", "list bundled fixtures");

    auto* c_validate = app.add_subcommand("validate", "check the fan invariants");
    add_inputs(c_validate, in, false);

    auto* c_intersect = app.add_subcommand("intersect", "intersection number of rank-many divisors");
    add_inputs(c_intersect, in, false);
    std::string divisors_arg;
    c_intersect->add_option("--divisors", divisors_arg, "comma-separated divisor JSON files")
        ->required();

    auto* c_degree = app.add_subcommand("degree", "deg_L(D) = D . L^{n-1}, optionally over Q[eps]");
    add_inputs(c_degree, in, false);
    std::string div_file;
    c_degree->add_option("--div", div_file, "divisor JSON file")->required();

    auto* c_ample = app.add_subcommand("ample", "toric Kleiman test; adiabatic threshold with --eps-div");
    add_inputs(c_ample, in, false);
    std::string ample_div;
    c_ample->add_option("--div", ample_div, "divisor JSON file");

    auto* c_slope = app.add_subcommand("slope", "mu_L of the sheaf, exact (polynomial with --eps-div)");
    add_inputs(c_slope, in, false);

    auto* c_stab = app.add_subcommand("stability", "stability verdict under a fixed polarisation");
    add_inputs(c_stab, in, false);
    c_stab->add_option("--candidates", in.candidates_file, "extra candidate subspaces JSON");

    auto* c_pull = app.add_subcommand("pullback", "reflexive pullback along blow-ups; defect with --subspace");
    add_inputs(c_pull, in);

    auto* c_blowup = app.add_subcommand("blowup", "star subdivision at tau");
    add_inputs(c_blowup, in);

    auto* c_adiab = app.add_subcommand("adiabatic", "verdict for L_eps = pi*L + eps L'");
    add_inputs(c_adiab, in);
    c_adiab->add_option("--source-fan", in.source_fan_file,
                        "source fan of a fibration (with --matrix, instead of blow-ups)");
    c_adiab->add_option("--matrix", in.matrix_file,
                        "lattice map JSON {\"rows\": [[ints]]}, target-rank rows");

    auto* c_curve = app.add_subcommand("curve-criterion", "wall criterion for blow-ups along curves");
    add_inputs(c_curve, in);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_fixtures->parsed()) {
            for (const std::string& n : fixtures::fixture_names()) std::cout << n << "\n";
            return 0;
        }
        if (c_validate->parsed()) {
            Workspace w;
            if (!in.fixture.empty()) w = fixtures::load_fixture(in.fixture);
            if (!in.fan_file.empty()) {
                // Bypass make_fan so diagnostics come back instead of a throw.
                json j = read_json_file(in.fan_file);
                Fan f;
                f.rank = j.at("rank").get<int>();
                for (const json& r : j.at("rays")) {
                    ZVec u;
                    for (const json& x : r)
                        u.push_back(x.is_string() ? Integer(x.get<std::string>())
                                                  : Integer(x.get<long long>()));
                    f.rays.push_back(u);
                }
                for (const json& c : j.at("max_cones")) {
                    Cone cc = c.get<Cone>();
                    std::sort(cc.begin(), cc.end());
                    f.max_cones.push_back(cc);
                }
                w.fan = f;
            }
            std::vector<std::string> bad = validate_fan(w.fan);
            json out{{"valid", bad.empty()}, {"violations", bad},
                     {"complete", bad.empty() && is_complete(w.fan)},
                     {"smooth", bad.empty() && is_smooth(w.fan)}};
            std::string human;
            if (bad.empty()) {
                human = "fan is valid";
                human += is_complete(w.fan) ? ", complete" : ", not complete";
                human += is_smooth(w.fan) ? ", smooth\n" : ", not smooth\n";
            } else {
                for (const std::string& v : bad) human += "violation: " + v + "\n";
            }
            emit(opts, out, human);
            return bad.empty() ? 0 : 65;
        }
        if (c_intersect->parsed()) {
            Workspace w = in.resolve();
            std::vector<TDivisor<Rational>> divs;
            std::string cur;
            for (char ch : divisors_arg + ",") {
                if (ch == ',') {
                    if (!cur.empty()) divs.push_back(divisor_from_json(read_json_file(cur), w.fan));
                    cur.clear();
                } else {
                    cur.push_back(ch);
                }
            }
            Rational v = intersection_number(w.fan, divs);
            emit(opts, json{{"value", to_string(v)}}, "intersection number: " + to_string(v) + "\n");
            return 0;
        }
        if (c_degree->parsed()) {
            Workspace w = in.resolve();
            TDivisor<Rational> d = divisor_from_json(read_json_file(div_file), w.fan);
            if (!w.polarisation) fail_schema("missing --pol");
            if (w.eps_divisor) {
                Poly v = degree(w.fan, lift(d), adiabatic_divisor(*w.polarisation, *w.eps_divisor));
                emit(opts, json{{"value", poly_to_json(v)}},
                     "deg_{L_eps}(D) = " + poly_human(v) + "   (coefficients, lowest first: " +
                         v.to_string() + ")\n");
            } else {
                Rational v = degree(w.fan, d, *w.polarisation);
                emit(opts, json{{"value", to_string(v)}}, "deg_L(D) = " + to_string(v) + "\n");
            }
            return 0;
        }
        if (c_ample->parsed()) {
            Workspace w = in.resolve();
            TDivisor<Rational> d = !ample_div.empty()
                                       ? divisor_from_json(read_json_file(ample_div), w.fan)
                                       : (w.polarisation ? *w.polarisation
                                                         : throw ToricError(ErrorKind::Schema, "missing --div"));
            if (w.eps_divisor) {
                Rational t = adiabatic_ample_threshold(w.fan, d, *w.eps_divisor);
                emit(opts, json{{"ample", true}, {"threshold", to_string(t)}},
                     "L + eps L' is ample for 0 < eps < " + to_string(t) + "\n");
                return 0;
            }
            bool a = is_ample(w.fan, d);
            emit(opts, json{{"ample", a}}, a ? "ample\n" : "not ample\n");
            return a ? 0 : 1;
        }
        if (c_slope->parsed()) {
            Workspace w = in.resolve();
            if (!w.sheaf || !w.polarisation) fail_schema("slope needs --sheaf and --pol");
            json iotas = json::array();
            std::string iota_line = "iota_rho:";
            for (std::size_t rho = 0; rho < w.fan.ray_count(); ++rho) {
                long long v = iota(*w.sheaf, static_cast<int>(rho));
                iotas.push_back(v);
                iota_line += " " + std::to_string(v);
            }
            if (w.eps_divisor && w.blowup_taus.empty()) {
                Poly mu = slope(w.fan, *w.sheaf, adiabatic_divisor(*w.polarisation, *w.eps_divisor));
                emit(opts, json{{"mu", poly_to_json(mu)}, {"iota", iotas}},
                     "mu_{L_eps}(E) = " + poly_human(mu) + "\n" + iota_line + "\n");
            } else {
                Rational mu = slope(w.fan, *w.sheaf, *w.polarisation);
                emit(opts, json{{"mu", to_string(mu)}, {"iota", iotas}},
                     "mu_L(E) = " + to_string(mu) + "\n" + iota_line + "\n");
            }
            return 0;
        }
        if (c_stab->parsed()) {
            Workspace w = in.resolve();
            if (!w.sheaf || !w.polarisation) fail_schema("stability needs --sheaf and --pol");
            CandidateSet cands = candidate_subspaces(*w.sheaf);
            if (!in.candidates_file.empty()) {
                json extra = read_json_file(in.candidates_file);
                for (const json& e : extra)
                    cands.subspaces.push_back(subspace_from_json(e, w.sheaf->coord_dim));
                std::sort(cands.subspaces.begin(), cands.subspaces.end());
                cands.subspaces.erase(std::unique(cands.subspaces.begin(), cands.subspaces.end()),
                                      cands.subspaces.end());
            }
            Verdict v = stability_verdict(w.fan, *w.sheaf, *w.polarisation, cands, opts.threads);
            json out = verdict_to_json(v);
            out["candidates"] = cands.subspaces.size();
            std::string human = verdict_human(v);
            if (opts.audit_samples > 0) {
                AuditResult audit = audit_candidates(w.fan, *w.sheaf, *w.polarisation, cands,
                                                     opts.audit_samples);
                out["audit"] = json{{"samples", audit.samples}, {"violations", audit.violations}};
                human += "audit: " + std::to_string(audit.violations) + " violations in " +
                         std::to_string(audit.samples) + " samples\n";
            }
            emit(opts, out, human);
            return exit_code(v.kind);
        }
        if (c_pull->parsed()) {
            Workspace w = in.resolve();
            if (!w.sheaf) fail_schema("pullback needs --sheaf");
            if (w.blowup_taus.empty()) fail_schema("pullback needs --blowup-tau");
            BlowupChain chain = make_blowup_chain(w.fan, w.blowup_taus);
            EquivariantSheaf pulled = pullback_sheaf(chain, *w.sheaf);
            json out{{"fan", fan_to_json(chain.final_fan())}, {"sheaf", sheaf_to_json(pulled)}};
            std::string human = "pulled back sheaf on the subdivided fan (" +
                                std::to_string(chain.final_fan().ray_count()) + " rays)\n";
            for (std::size_t step = 0; step < chain.steps.size(); ++step) {
                const Filtration& exc =
                    pulled.filtrations[static_cast<std::size_t>(chain.exceptional_rays[step])];
                human += "exceptional ray " + std::to_string(chain.exceptional_rays[step]) + " jumps:";
                for (const auto& [j, v] : exc.jumps())
                    human += " (" + std::to_string(j) + ", dim " + std::to_string(v.dim()) + ")";
                human += "\n";
            }
            if (w.subspace) {
                // Defect along each step's exceptional ray, on the sheaf
                // pulled back so far.
                EquivariantSheaf cur = *w.sheaf;
                json defects = json::array();
                long long total = 0;
                bool saturated = true;
                for (const BlowupContext& step : chain.steps) {
                    Defect d = pullback_defect(step, cur, *w.subspace);
                    defects.push_back(defect_to_json(d));
                    total += d.total;
                    if (d.total != 0) saturated = false;
                    for (const auto& [j, dj] : d.per_level)
                        human += "d_" + std::to_string(j) + "(F) = " + std::to_string(dj) + "\n";
                    cur = reflexive_pullback_blowup(step, cur);
                }
                out["defects"] = defects;
                out["saturated"] = saturated;
                human += "total defect: " + std::to_string(total) +
                         (saturated ? "  (pullback of E_F is saturated)\n"
                                    : "  (pullback of E_F is NOT saturated)\n");
            }
            emit(opts, out, human);
            return 0;
        }
        if (c_blowup->parsed()) {
            Workspace w = in.resolve();
            if (w.blowup_taus.empty()) fail_schema("blowup needs --tau");
            BlowupChain chain = make_blowup_chain(w.fan, w.blowup_taus);
            json out{{"fan", fan_to_json(chain.final_fan())},
                     {"exceptional_rays", chain.exceptional_rays}};
            std::string human = "subdivided fan: " + std::to_string(chain.final_fan().ray_count()) +
                                " rays, " + std::to_string(chain.final_fan().max_cones.size()) +
                                " maximal cones\n";
            emit(opts, out, human);
            return 0;
        }
        if (c_adiab->parsed()) {
            Workspace w = in.resolve();
            AdiabaticSetup setup = make_setup(w, !in.source_fan_file.empty());
            if (!in.source_fan_file.empty()) {
                if (in.matrix_file.empty()) fail_schema("--source-fan needs --matrix");
                Fan source = fan_from_json(read_json_file(in.source_fan_file));
                json mj = read_json_file(in.matrix_file);
                std::vector<ZVec> rows;
                for (const json& r : mj.at("rows")) {
                    ZVec row;
                    for (const json& x : r)
                        row.push_back(x.is_string() ? Integer(x.get<std::string>())
                                                    : Integer(x.get<long long>()));
                    rows.push_back(row);
                }
                setup.fibration = make_morphism(source, w.fan, rows);
                if (!in.eps_file.empty())
                    setup.eps_divisor =
                        divisor_from_json(read_json_file(in.eps_file), setup.fibration->source);
                if (!setup.eps_divisor) fail_schema("a fibration setup needs --eps-div");
            }
            AdiabaticReport r = adiabatic_verdict(setup, {}, opts.threads);
            json out = adiabatic_report_to_json(r);
            std::string human = verdict_human(r.verdict);
            human += "ample radius: " + to_string(r.problem.ample_radius) + "\n";
            human += "candidate gaps (mu_{L_eps}(E') - mu_{L_eps}(E'_F)):\n";
            for (const auto& [f, g] : r.gaps)
                human += "  dim " + std::to_string(f.dim()) + ": " + poly_human(g) + "\n";
            emit(opts, out, human);
            return exit_code(r.verdict.kind);
        }
        if (c_curve->parsed()) {
            Workspace w = in.resolve();
            if (!w.sheaf) fail_schema("curve-criterion needs --sheaf");
            if (w.blowup_taus.size() != 1) fail_schema("curve-criterion needs exactly one --tau");
            if (!w.subspace) fail_schema("curve-criterion needs --subspace");
            Rational v = curve_blowup_criterion(w.fan, *w.sheaf, w.blowup_taus[0], *w.subspace);
            std::string human = "c1(E_F).V(tau)/rk(E_F) - c1(E).V(tau)/rk(E) = " + to_string(v) + "\n";
            human += v > 0 ? "stabilising (positive)\n"
                           : (v < 0 ? "destabilising (negative)\n" : "semistable boundary (zero)\n");
            emit(opts, json{{"criterion", to_string(v)}}, human);
            return 0;
        }
    } catch (const ToricError& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::Schema: return 64;
        case ErrorKind::Precondition: return 65;
        case ErrorKind::Unsupported: return 66;
        }
        return 70;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
    return 0;
}
