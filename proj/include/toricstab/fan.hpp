#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricstab/linalg.hpp"

namespace toricstab {

// Cones are sorted ray-index sets into the owning fan; simplicial
// throughout, so a cone is determined by its rays and every subset of a
// cone's rays is a face.
using Cone = std::vector<int>;

struct Fan {
    int rank = 0;
    std::vector<ZVec> rays;
    std::vector<Cone> max_cones;

    std::size_t ray_count() const { return rays.size(); }
};

// Diagnostic: empty iff all fan invariants hold (primitive distinct rays,
// simplicial cones, ray coverage, pairwise intersections are faces).
std::vector<std::string> validate_fan(const Fan& f);

// Throwing constructor used everywhere fixtures and CLI inputs enter.
Fan make_fan(int rank, std::vector<ZVec> rays, std::vector<Cone> max_cones);

bool is_cone_of(const Fan& f, const Cone& c);

Integer cone_multiplicity(const Fan& f, const Cone& c);

bool is_smooth_cone(const Fan& f, const Cone& c);
bool is_smooth(const Fan& f);

// Wall criterion: pure n-dimensional and every (n-1)-face shared by
// exactly two maximal cones.
bool is_complete(const Fan& f);

// All (n-1)-cones lying in exactly two maximal cones, with the two cones.
struct Wall {
    Cone tau;
    int cone_a;
    int cone_b;
};
std::vector<Wall> walls(const Fan& f);

// Barycentric coordinates of v on the cone's ray generators, if v lies in
// the linear span; membership iff all coordinates are >= 0.
std::optional<QVec> cone_coordinates(const Fan& f, const Cone& c, const QVec& v);
bool cone_contains(const Fan& f, const Cone& c, const QVec& v);

// The unique smallest cone of the fan containing v, as a ray-index set.
// Fails if v is outside the support.
Cone minimal_cone(const Fan& f, const QVec& v);

// Toric morphisms -----------------------------------------------------------

struct RayImage {
    enum class Kind { Zero, Ray, Higher };
    Kind kind = Kind::Zero;
    int target_ray = -1; // Kind::Ray
    Integer scale = 0;   // b with phi(u) = b * u_target, Kind::Ray
    Cone min_cone;       // Kind::Higher
};

struct ToricMorphism {
    std::vector<ZVec> matrix; // target.rank rows, source.rank cols
    Fan source;
    Fan target;
    std::vector<RayImage> ray_images; // one per source ray

    ZVec apply(const ZVec& v) const;
    bool is_identity_matrix() const;
};

// Validates compatibility (each source cone maps into some target cone)
// and classifies every source ray.
ToricMorphism make_morphism(Fan source, Fan target, std::vector<ZVec> matrix);

ToricMorphism identity_morphism(const Fan& f);

std::vector<RayImage> classify_ray_images(const ToricMorphism& m);

// Surjectivity of the lattice map; fans are assumed complete by the caller.
bool is_fibration(const ToricMorphism& m);

// Rays contracted to cones of dimension >= 2; empty for locally trivial
// fibrations and exactly the exceptional ray for a star subdivision.
std::vector<int> higher_rays(const ToricMorphism& m);

// Star subdivision at tau: inserts the ray through the sum of tau's
// generators, appended last. Requires dim tau >= 2 and a smooth star.
struct StarSubdivision {
    Fan fan;
    ToricMorphism morphism; // subdivided fan -> original fan, identity matrix
    int new_ray;
};
StarSubdivision star_subdivision(const Fan& f, const Cone& tau);

// Set-level fan equality (rays matched by value, cones compared as sets);
// used where construction order scrambles ray indices.
bool same_fan(const Fan& a, const Fan& b);

} // namespace toricstab
