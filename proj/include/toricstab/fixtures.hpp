#pragma once

#include <map>
#include <string>
#include <vector>

#include "toricstab/json_io.hpp"

namespace toricstab {
namespace fixtures {

Fan p1();
Fan p2();
Fan p3();
Fan p1xp1();
Fan hirzebruch(int a);
// The singular Del Pezzo fan with rays e1, e2, e2 - 2 e1, -e2.
Fan del_pezzo_singular();
// The fan of C^2 (one smooth maximal cone, not complete).
Fan affine_plane();
// P(O^r + O(1)) over P1, rank r+1; rays ordered w0, w1, v0, v1, ..., vr.
Fan projectivised_split_bundle(int r);

// The rank-2 sheaf on C^2 with jumps (1, <u1>), (3, E) and (1, <u2>), (2, E).
EquivariantSheaf affine_plane_sheaf();

// a D3 + b D4 on the singular Del Pezzo fan.
TDivisor<Rational> del_pezzo_perturbation(const Rational& a, const Rational& b);

// nu D_{w0} + D_{v0} on projectivised_split_bundle(r).
TDivisor<Rational> split_bundle_polarisation(int r, const Rational& nu);

// Blow-up centers used in the worked examples: the wall Cone(w0, v1..v_{r-1})
// (stabilising) and the wall Cone(v0..v_{r-1}) (destabilising).
Cone split_bundle_stabilising_tau(int r);
Cone split_bundle_destabilising_tau(int r);

TDivisor<Rational> anticanonical(const Fan& f);

// Named workspaces for the CLI; params may carry a, b (perturbations) and
// nu (split-bundle polarisation) as rational strings.
std::vector<std::string> fixture_names();
Workspace load_fixture(const std::string& name,
                       const std::map<std::string, std::string>& params = {});

} // namespace fixtures
} // namespace toricstab
