#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "conekit/linalg.hpp"

namespace conekit {

// Default tolerance for membership and facet checks.
inline constexpr double kMembershipTol = 1e-9;

// V-representation computed from an H-representation (or vice versa,
// by polarity): cone {x : x.n <= 0 for n in normals, x.m = 0 for m in
// equalities} equals span(lineality) + Pos(rays), with unit rays kept
// orthogonal to the lineality space. Incremental double description
// with combinatorial adjacency bookkeeping; constraints are deduped and
// inserted in lexicographic order so the result is deterministic.
struct VRep {
    std::vector<Vector> rays;
    Subspace lineality;
};
VRep vrep_from_hrep(int ambient_dim, const std::vector<Vector>& inequality_normals,
                    const Subspace& equalities);

// Closed convex polyhedral cone with both representations kept in sync:
//   cone = Pos(rays) + span(lineality_basis)
//        = {x : x.n <= 0 for facet normals n, x.m = 0 for equality normals m}
// Rays and facet normals are unit vectors; rays are orthogonal to the
// lineality space and facet normals to the equality space. The origin-only
// cone has no rays and a full equality space; R^n has a full lineality
// space and no facets.
class PolyhedralCone {
public:
    static PolyhedralCone from_rays(int ambient_dim, const std::vector<Vector>& rays,
                                    const Subspace& lineality);
    static PolyhedralCone from_rays(int ambient_dim, const std::vector<Vector>& rays);
    static PolyhedralCone from_halfspaces(int ambient_dim, const std::vector<Vector>& normals,
                                          const Subspace& equalities);
    static PolyhedralCone from_halfspaces(int ambient_dim, const std::vector<Vector>& normals);
    static PolyhedralCone zero_cone(int ambient_dim);
    static PolyhedralCone full_space(int ambient_dim);

    int ambient_dim() const { return dim_; }
    const std::vector<Vector>& rays() const { return rays_; }
    const Subspace& lineality_basis() const { return lineality_; }
    const std::vector<Vector>& facet_normals() const { return facets_; }
    const Subspace& equality_normals() const { return equalities_; }
    // Both representations are rebuilt together at construction time.
    bool rep_synced() const { return true; }

    bool is_trivial() const { return rays_.empty() && lineality_.is_trivial(); }

private:
    PolyhedralCone(int dim, std::vector<Vector> rays, Subspace lineality,
                   std::vector<Vector> facets, Subspace equalities);
    friend PolyhedralCone polar(const PolyhedralCone& c);

    int dim_;
    std::vector<Vector> rays_;
    Subspace lineality_;
    std::vector<Vector> facets_;
    Subspace equalities_;
};

// Pos(points): the smallest closed convex cone containing the points.
PolyhedralCone positive_hull(int ambient_dim, const std::vector<Vector>& points);

// Polar cone {x : x.e <= 0 for all e in c}. With synchronized dual
// representations this is an exact swap: rays <-> facet normals and
// lineality <-> equality normals, so polar(polar(c)) == c exactly.
PolyhedralCone polar(const PolyhedralCone& c);

// c intersected with d, via the concatenated H-representations.
PolyhedralCone intersect(const PolyhedralCone& c, const PolyhedralCone& d);

// Closure of c + d: positive hull of the combined generators.
PolyhedralCone cone_sum(const PolyhedralCone& c, const PolyhedralCone& d);

// Membership through the H-representation.
bool cone_contains(const PolyhedralCone& c, const Vector& u, double tol = kMembershipTol);

// Largest subspace contained in c, equal to c intersect (-c).
Subspace lineality_space(const PolyhedralCone& c);

// Linear span of c.
Subspace span_of(const PolyhedralCone& c);

// True when c equals its lineality space; cross-checked against the
// facet representation (a synced subspace cone has no facets).
bool is_subspace(const PolyhedralCone& c);

// Relative-interior membership: for subspaces this is plain membership;
// otherwise u must lie in span(c) and satisfy u.n < -tol_strict for
// every facet normal n.
bool in_relative_interior(const PolyhedralCone& c, const Vector& u, double tol_strict = 1e-9);

// Mutual containment of generators at the given tolerance.
bool cones_equal(const PolyhedralCone& a, const PolyhedralCone& b, double tol);

// A point of the relative interior: the sum of the rays (the origin when
// the cone is a subspace).
Vector relative_interior_point(const PolyhedralCone& c);

// ---------------------------------------------------------------------
// Closed convex set variants handled by the projection machinery.

struct PlaneSet {
    Vector point;
    Subspace directions;
};

// {x : x.normal <= offset} with a unit normal.
struct HalfspaceSet {
    Vector normal;
    double offset;
};

struct BallSet {
    Vector center;
    double radius;
};

// Convex hull of finitely many points (at least one).
struct PolytopeSet {
    std::vector<Vector> vertices;
};

struct SegmentSet {
    Vector a;
    Vector b;
};

struct ShiftedConeSet {
    PolyhedralCone cone;
    Vector translation;
};

class ConvexSet {
public:
    using Storage = std::variant<PolyhedralCone, PlaneSet, HalfspaceSet, BallSet,
                                 PolytopeSet, SegmentSet, ShiftedConeSet>;

    ConvexSet(PolyhedralCone c);        // NOLINT(google-explicit-constructor)
    ConvexSet(PlaneSet p);              // NOLINT
    ConvexSet(HalfspaceSet h);          // NOLINT
    ConvexSet(BallSet b);               // NOLINT
    ConvexSet(PolytopeSet p);           // NOLINT
    ConvexSet(SegmentSet s);            // NOLINT
    ConvexSet(ShiftedConeSet s);        // NOLINT

    int ambient_dim() const;
    const Storage& storage() const { return v_; }

    bool is_cone() const { return std::holds_alternative<PolyhedralCone>(v_); }
    bool is_plane() const { return std::holds_alternative<PlaneSet>(v_); }
    const PolyhedralCone& as_cone() const { return std::get<PolyhedralCone>(v_); }
    const PlaneSet& as_plane() const { return std::get<PlaneSet>(v_); }

private:
    Storage v_;
};

// Deterministic list of generator/landmark points of the set, used to
// seed samplers with structured inputs.
std::vector<Vector> landmark_points(const ConvexSet& s);

// Structural equality of two sets of the same variant kind at the given
// tolerance: generator-level for cones, payload-level elsewhere. Sets of
// different kinds compare unequal even when they describe the same
// region.
bool sets_equal(const ConvexSet& a, const ConvexSet& b, double tol);

} // namespace conekit
