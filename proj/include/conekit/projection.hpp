#pragma once

#include "conekit/cone.hpp"
#include "conekit/linalg.hpp"

namespace conekit {

// Metric projection onto a polyhedral cone: the lineality component is
// split off exactly (rays are stored orthogonal to the lineality space)
// and the ray coefficients come from active-set NNLS with dual
// feasibility tolerance 1e-10.
Vector project(const PolyhedralCone& c, const Vector& u);

// Metric projection onto any ConvexSet variant. Cones use NNLS,
// polytopes the min-norm-point active set over convex-combination
// weights, and the remaining variants their closed forms.
Vector project(const ConvexSet& s, const Vector& u);

double set_distance(const ConvexSet& s, const Vector& u);
bool set_contains(const ConvexSet& s, const Vector& u, double tol = kMembershipTol);

// Independent slow-path oracle: projected-gradient descent on
// 1/2 ||x - u||^2 with a per-variant feasibility re-projection
// (coefficient clamping for cones, exact simplex re-projection for
// polytopes, the elementary closed forms elsewhere). Fixed iteration
// budget 1e5; `converged` is false when the final step still moves the
// iterate by more than 1e-7.
struct OracleResult {
    Vector point;
    bool converged;
    long iterations;
    double last_move;
};
OracleResult project_oracle(const ConvexSet& s, const Vector& u);

// u = y + z with y = p_C(u), z = p_polar(C)(u); the residuals are stored
// so callers can audit how sharply the decomposition identity held.
struct MoreauDecomposition {
    Vector u;
    Vector y;
    Vector z;
    double residual_sum;  // ||u - y - z||
    double residual_orth; // |y . z|
};
MoreauDecomposition moreau_decompose(const PolyhedralCone& c, const Vector& u);

} // namespace conekit
