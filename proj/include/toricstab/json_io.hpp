#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "toricstab/stability.hpp"

namespace toricstab {

using json = nlohmann::json;

// Everything rational travels as strings "p" / "p/q": no floats on the wire.

json fan_to_json(const Fan& f);
Fan fan_from_json(const json& j);

json divisor_to_json(const TDivisor<Rational>& d);
TDivisor<Rational> divisor_from_json(const json& j, const Fan& f);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j, std::size_t ambient);

json sheaf_to_json(const EquivariantSheaf& s);
EquivariantSheaf sheaf_from_json(const json& j, const Fan& f);

json poly_to_json(const Poly& p);

json verdict_to_json(const Verdict& v);
json adiabatic_report_to_json(const AdiabaticReport& r);

json defect_to_json(const Defect& d);

// Fixture workspaces: a fan plus whatever the worked example provides.
struct Workspace {
    Fan fan;
    std::optional<EquivariantSheaf> sheaf;
    std::optional<TDivisor<Rational>> polarisation;
    std::optional<TDivisor<Rational>> eps_divisor;
    std::vector<Cone> blowup_taus;
    std::optional<Subspace> subspace;
};

json workspace_to_json(const Workspace& w);
Workspace workspace_from_json(const json& j);

} // namespace toricstab
