#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "conekit/cone.hpp"
#include "conekit/errors.hpp"

using namespace conekit;

namespace {

const double kInvRt10 = 1.0 / std::sqrt(10.0);

// planar wedge in R^3: Pos{(3,1,0), (3,-1,0)}, spans the z=0 plane
PolyhedralCone planar_wedge() {
    return PolyhedralCone::from_rays(
        3, {normalized(Vector{3.0, 1.0, 0.0}), normalized(Vector{3.0, -1.0, 0.0})});
}

bool has_vector(const std::vector<Vector>& vs, const Vector& v, double tol) {
    for (const Vector& w : vs)
        if (distance(w, v) <= tol) return true;
    return false;
}

} // namespace

TEST_CASE("orthant from rays: canonical V-rep and derived H-rep") {
    auto q1 = PolyhedralCone::from_rays(2, {Vector{0.0, 1.0}, Vector{1.0, 0.0}});
    REQUIRE(q1.rays().size() == 2);
    // rays are unit and lex sorted
    CHECK(distance(q1.rays()[0], Vector{0.0, 1.0}) < 1e-12);
    CHECK(distance(q1.rays()[1], Vector{1.0, 0.0}) < 1e-12);
    CHECK(q1.lineality_basis().is_trivial());
    REQUIRE(q1.facet_normals().size() == 2);
    CHECK(has_vector(q1.facet_normals(), Vector{-1.0, 0.0}, 1e-12));
    CHECK(has_vector(q1.facet_normals(), Vector{0.0, -1.0}, 1e-12));
    CHECK(q1.equality_normals().is_trivial());
    CHECK(q1.rep_synced());
}

TEST_CASE("redundant generators are dropped") {
    auto q1 = PolyhedralCone::from_rays(
        2, {Vector{1.0, 0.0}, Vector{0.0, 1.0}, normalized(Vector{1.0, 1.0})});
    CHECK(q1.rays().size() == 2);
    CHECK(cones_equal(q1, PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}, Vector{0.0, 1.0}}),
                      1e-12));
}

TEST_CASE("hidden lineality is recovered from rays") {
    auto half = PolyhedralCone::from_rays(
        2, {Vector{1.0, 0.0}, Vector{-1.0, 0.0}, Vector{0.0, 1.0}});
    CHECK(half.lineality_basis().rank() == 1);
    CHECK(subspace_contains(half.lineality_basis(), Vector{1.0, 0.0}, 1e-12));
    REQUIRE(half.rays().size() == 1);
    CHECK(distance(half.rays()[0], Vector{0.0, 1.0}) < 1e-12);
    REQUIRE(half.facet_normals().size() == 1);
    CHECK(distance(half.facet_normals()[0], Vector{0.0, -1.0}) < 1e-12);
}

TEST_CASE("halfspace intersection to generators") {
    // {y >= 0}: one inequality, lineality along x
    auto half = PolyhedralCone::from_halfspaces(2, {Vector{0.0, -1.0}});
    CHECK(half.lineality_basis().rank() == 1);
    REQUIRE(half.rays().size() == 1);
    CHECK(distance(half.rays()[0], Vector{0.0, 1.0}) < 1e-12);

    VRep vr = vrep_from_hrep(2, {Vector{0.0, -1.0}}, Subspace(2));
    CHECK(vr.lineality.rank() == 1);
    REQUIRE(vr.rays.size() == 1);
    CHECK(distance(vr.rays[0], Vector{0.0, 1.0}) < 1e-12);
}

TEST_CASE("planar wedge keeps its span as an equality") {
    auto c = planar_wedge();
    REQUIRE(c.rays().size() == 2);
    CHECK(c.equality_normals().rank() == 1);
    CHECK(subspace_contains(c.equality_normals(), Vector{0.0, 0.0, 1.0}, 1e-12));
    // facets within the span: normals (-1,+-3,0)/sqrt(10)
    REQUIRE(c.facet_normals().size() == 2);
    CHECK(has_vector(c.facet_normals(), kInvRt10 * Vector{-1.0, -3.0, 0.0}, 1e-9));
    CHECK(has_vector(c.facet_normals(), kInvRt10 * Vector{-1.0, 3.0, 0.0}, 1e-9));
}

TEST_CASE("polar of the planar wedge") {
    auto c = planar_wedge();
    auto p = polar(c);
    // generators: the wedge's facet normals plus the z axis as lineality
    REQUIRE(p.rays().size() == 2);
    CHECK(has_vector(p.rays(), kInvRt10 * Vector{-1.0, -3.0, 0.0}, 1e-9));
    CHECK(has_vector(p.rays(), kInvRt10 * Vector{-1.0, 3.0, 0.0}, 1e-9));
    CHECK(p.lineality_basis().rank() == 1);
    CHECK(subspace_contains(p.lineality_basis(), Vector{0.0, 0.0, 1.0}, 1e-12));
    // facets of the polar are the original rays
    CHECK(has_vector(p.facet_normals(), normalized(Vector{3.0, 1.0, 0.0}), 1e-9));
    CHECK(has_vector(p.facet_normals(), normalized(Vector{3.0, -1.0, 0.0}), 1e-9));

    auto expected = PolyhedralCone::from_rays(
        3, {kInvRt10 * Vector{-1.0, 3.0, 0.0}, kInvRt10 * Vector{-1.0, -3.0, 0.0}},
        Subspace(3, {Vector{0.0, 0.0, 1.0}}));
    CHECK(cones_equal(p, expected, 1e-9));
}

TEST_CASE("double polar is exact") {
    auto c = planar_wedge();
    CHECK(cones_equal(polar(polar(c)), c, 1e-12));

    auto q1 = PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}, Vector{0.0, 1.0}});
    CHECK(cones_equal(polar(polar(q1)), q1, 1e-12));
}

TEST_CASE("polar swaps the degenerate cones") {
    CHECK(cones_equal(polar(PolyhedralCone::zero_cone(3)), PolyhedralCone::full_space(3), 1e-12));
    CHECK(cones_equal(polar(PolyhedralCone::full_space(3)), PolyhedralCone::zero_cone(3), 1e-12));
    CHECK(PolyhedralCone::zero_cone(3).is_trivial());
    CHECK(PolyhedralCone::full_space(3).lineality_basis().is_full());
}

TEST_CASE("intersect and cone_sum") {
    auto q1 = PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}, Vector{0.0, 1.0}});
    auto upper = PolyhedralCone::from_halfspaces(2, {normalized(Vector{1.0, -1.0})});
    auto wedge = intersect(q1, upper); // {x >= 0, y >= 0, x <= y}
    CHECK(cone_contains(wedge, Vector{1.0, 2.0}));
    CHECK_FALSE(cone_contains(wedge, Vector{2.0, 1.0}));
    REQUIRE(wedge.rays().size() == 2);
    CHECK(has_vector(wedge.rays(), Vector{0.0, 1.0}, 1e-12));
    CHECK(has_vector(wedge.rays(), normalized(Vector{1.0, 1.0}), 1e-12));

    auto sum = cone_sum(PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}}),
                        PolyhedralCone::from_rays(2, {Vector{0.0, 1.0}}));
    CHECK(cones_equal(sum, q1, 1e-12));
}

TEST_CASE("membership and relative interior") {
    auto q1 = PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}, Vector{0.0, 1.0}});
    CHECK(cone_contains(q1, Vector{1.0, 2.0}));
    CHECK(cone_contains(q1, Vector{0.0, 0.0}));
    CHECK_FALSE(cone_contains(q1, Vector{-1.0, 2.0}));

    CHECK(in_relative_interior(q1, Vector{1.0, 1.0}));
    CHECK_FALSE(in_relative_interior(q1, Vector{1.0, 0.0}));
    CHECK_FALSE(in_relative_interior(q1, Vector{0.0, 0.0}));

    // for a planar cone the relative interior lives inside its span
    auto c = planar_wedge();
    CHECK(in_relative_interior(c, Vector{1.0, 0.0, 0.0}));
    CHECK_FALSE(in_relative_interior(c, Vector{1.0, 0.0, 0.1}));
    CHECK_FALSE(in_relative_interior(c, normalized(Vector{3.0, 1.0, 0.0})));

    // subspaces are their own relative interior
    auto line = PolyhedralCone::from_rays(2, {}, Subspace(2, {Vector{1.0, 0.0}}));
    CHECK(in_relative_interior(line, Vector{-5.0, 0.0}));
    CHECK(in_relative_interior(line, Vector{0.0, 0.0}));

    Vector rip = relative_interior_point(q1);
    CHECK(in_relative_interior(q1, rip));
    CHECK(norm(relative_interior_point(line)) == 0.0);
}

TEST_CASE("lineality and span queries") {
    auto half = PolyhedralCone::from_halfspaces(2, {Vector{0.0, -1.0}});
    CHECK(lineality_space(half).rank() == 1);
    CHECK(span_of(half).is_full());

    auto c = planar_wedge();
    CHECK(lineality_space(c).is_trivial());
    CHECK(span_of(c).rank() == 2);
    CHECK(subspaces_equal(span_of(c),
                          Subspace(3, {Vector{1.0, 0.0, 0.0}, Vector{0.0, 1.0, 0.0}}), 1e-12));

    CHECK(is_subspace(PolyhedralCone::full_space(2)));
    CHECK(is_subspace(PolyhedralCone::zero_cone(2)));
    CHECK(is_subspace(PolyhedralCone::from_rays(2, {}, Subspace(2, {Vector{0.0, 1.0}}))));
    CHECK_FALSE(is_subspace(half));
    CHECK_FALSE(is_subspace(c));
}

TEST_CASE("cones_equal is representation independent") {
    auto a = PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}, Vector{0.0, 1.0}});
    auto b = PolyhedralCone::from_halfspaces(2, {Vector{-1.0, 0.0}, Vector{0.0, -1.0}});
    CHECK(cones_equal(a, b, 1e-12));
    CHECK_FALSE(cones_equal(a, PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}}), 1e-9));
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(PolyhedralCone::from_rays(2, {Vector{1.0, 0.0, 0.0}}), DimensionMismatch);
    auto a2 = PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}});
    auto a3 = PolyhedralCone::from_rays(3, {Vector{1.0, 0.0, 0.0}});
    CHECK_THROWS_AS(intersect(a2, a3), DimensionMismatch);
    CHECK_THROWS_AS(cone_contains(a2, Vector{1.0, 0.0, 0.0}), DimensionMismatch);
}

TEST_CASE("convex set variants validate their payloads") {
    CHECK_THROWS(ConvexSet(BallSet{Vector{0.0, 0.0}, -1.0}));
    CHECK_THROWS(ConvexSet(BallSet{Vector{0.0, 0.0}, 0.0}));
    CHECK_THROWS(ConvexSet(PolytopeSet{{}}));
    CHECK_THROWS(ConvexSet(SegmentSet{Vector{0.0, 0.0}, Vector{1.0, 0.0, 0.0}}));
    CHECK_THROWS(ConvexSet(SegmentSet{Vector{1.0, 2.0}, Vector{1.0, 2.0}}));
    CHECK_THROWS(ConvexSet(HalfspaceSet{Vector{0.0, 0.0}, 1.0})); // zero normal
    CHECK_NOTHROW(ConvexSet(BallSet{Vector{0.0, 0.0}, 2.5}));
}

TEST_CASE("structural set equality") {
    ConvexSet coneA = PolyhedralCone::from_rays(2, {Vector{1.0, 0.0}, Vector{0.0, 1.0}});
    ConvexSet coneB = PolyhedralCone::from_halfspaces(2, {Vector{-1.0, 0.0}, Vector{0.0, -1.0}});
    CHECK(sets_equal(coneA, coneB, 1e-9));

    // same region, different kind: not structurally equal
    ConvexSet half_cone = PolyhedralCone::from_halfspaces(2, {Vector{0.0, -1.0}});
    ConvexSet half_set = HalfspaceSet{Vector{0.0, -1.0}, 0.0};
    CHECK_FALSE(sets_equal(half_cone, half_set, 1e-9));

    // planes compare by affine span, not base point
    ConvexSet p1 = PlaneSet{Vector{0.0, 0.0}, Subspace(2, {Vector{1.0, 0.0}})};
    ConvexSet p2 = PlaneSet{Vector{3.0, 0.0}, Subspace(2, {Vector{-1.0, 0.0}})};
    ConvexSet p3 = PlaneSet{Vector{0.0, 1.0}, Subspace(2, {Vector{1.0, 0.0}})};
    CHECK(sets_equal(p1, p2, 1e-9));
    CHECK_FALSE(sets_equal(p1, p3, 1e-9));

    ConvexSet s1 = SegmentSet{Vector{0.0, 0.0}, Vector{1.0, 1.0}};
    ConvexSet s2 = SegmentSet{Vector{1.0, 1.0}, Vector{0.0, 0.0}};
    CHECK(sets_equal(s1, s2, 1e-9));

    ConvexSet t1 = PolytopeSet{{Vector{0.0, 0.0}, Vector{1.0, 0.0}, Vector{0.0, 1.0}}};
    ConvexSet t2 = PolytopeSet{{Vector{1.0, 0.0}, Vector{0.0, 1.0}, Vector{0.0, 0.0}}};
    CHECK(sets_equal(t1, t2, 1e-9));

    ConvexSet b1 = BallSet{Vector{1.0, 2.0}, 3.0};
    ConvexSet b2 = BallSet{Vector{1.0, 2.0}, 3.0 + 1e-12};
    ConvexSet b3 = BallSet{Vector{1.0, 2.0}, 4.0};
    CHECK(sets_equal(b1, b2, 1e-9));
    CHECK_FALSE(sets_equal(b1, b3, 1e-9));
}

TEST_CASE("landmark points stay inside their set") {
    ConvexSet c = planar_wedge();
    for (const Vector& p : landmark_points(c)) CHECK(cone_contains(c.as_cone(), p, 1e-9));

    ConvexSet seg = SegmentSet{Vector{0.0, 0.0}, Vector{2.0, 0.0}};
    auto pts = landmark_points(seg);
    CHECK(has_vector(pts, Vector{1.0, 0.0}, 1e-12)); // midpoint
}
