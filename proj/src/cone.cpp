#include "conekit/cone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "conekit/errors.hpp"

namespace conekit {

namespace {

// active-constraint bitset used by the double-description bookkeeping
struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(int nwords) : w(static_cast<std::size_t>(nwords), 0) {}
    void set(int i) { w[static_cast<std::size_t>(i >> 6)] |= (std::uint64_t{1} << (i & 63)); }
    bool contains_all(const Bits& sub) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if ((w[i] & sub.w[i]) != sub.w[i]) return false;
        }
        return true;
    }
};

Bits bits_and(const Bits& a, const Bits& b) {
    Bits out(static_cast<int>(a.w.size()));
    for (std::size_t i = 0; i < a.w.size(); ++i) out.w[i] = a.w[i] & b.w[i];
    return out;
}

struct DDRay {
    Vector v;
    Bits active;
};

std::vector<Vector> normalize_dedup_sort(const std::vector<Vector>& in, int dim) {
    std::vector<Vector> out;
    for (const Vector& v : in) {
        if (v.dim() != dim) throw DimensionMismatch("constraint normal has wrong dimension");
        double n = norm(v);
        if (n <= kRankTol) continue;
        out.push_back(v * (1.0 / n));
    }
    std::sort(out.begin(), out.end(), lex_less);
    std::vector<Vector> uniq;
    for (const Vector& v : out) {
        if (!uniq.empty() && distance(uniq.back(), v) <= 1e-9) continue;
        uniq.push_back(v);
    }
    return uniq;
}

Vector project_out(Vector v, const std::vector<Vector>& orthonormal) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& b : orthonormal) v -= dot(v, b) * b;
    }
    return v;
}

} // namespace

VRep vrep_from_hrep(int dim, const std::vector<Vector>& inequality_normals,
                    const Subspace& equalities) {
    if (equalities.ambient_dim() != dim) {
        throw DimensionMismatch("vrep_from_hrep: equality subspace dimension mismatch");
    }
    std::vector<Vector> ns = normalize_dedup_sort(inequality_normals, dim);
    const int m = static_cast<int>(ns.size());
    const int nwords = std::max(1, (m + 63) / 64);

    std::vector<Vector> lin = orthogonal_complement(equalities).basis();
    std::vector<DDRay> rays;

    for (int t = 0; t < m; ++t) {
        const Vector& a = ns[static_cast<std::size_t>(t)];
        int i0 = -1;
        double s0 = 0.0;
        for (std::size_t i = 0; i < lin.size(); ++i) {
            double d = dot(lin[i], a);
            if (std::abs(d) > std::abs(s0)) {
                s0 = d;
                i0 = static_cast<int>(i);
            }
        }
        if (i0 >= 0 && std::abs(s0) > kRankTol) {
            // the constraint cuts the lineality space: one basis direction
            // becomes a ray, the rest is projected onto {x.a = 0}
            Vector l0 = lin[static_cast<std::size_t>(i0)];
            std::vector<Vector> nl;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (static_cast<int>(i) == i0) continue;
                nl.push_back(lin[i] - (dot(lin[i], a) / s0) * l0);
            }
            std::vector<Vector> newlin = orthonormal_basis(nl, dim).basis();
            for (DDRay& r : rays) {
                Vector v = r.v - (dot(r.v, a) / s0) * l0;
                v = project_out(v, newlin);
                r.v = v * (1.0 / norm(v));
                r.active.set(t);
            }
            Vector r0 = (s0 > 0.0) ? -l0 : l0;
            r0 = project_out(r0, newlin);
            r0 = r0 * (1.0 / norm(r0));
            Bits b(nwords);
            for (int j = 0; j < t; ++j) b.set(j);
            rays.push_back(DDRay{r0, b});
            lin = std::move(newlin);
            continue;
        }

        std::vector<double> d(rays.size(), 0.0);
        std::vector<int> pos, zero, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            d[i] = dot(rays[i].v, a);
            if (d[i] > kMembershipTol) pos.push_back(static_cast<int>(i));
            else if (d[i] < -kMembershipTol) neg.push_back(static_cast<int>(i));
            else zero.push_back(static_cast<int>(i));
        }
        if (pos.empty()) {
            for (int i : zero) rays[static_cast<std::size_t>(i)].active.set(t);
            continue;
        }
        std::vector<DDRay> next;
        for (int i : neg) next.push_back(rays[static_cast<std::size_t>(i)]);
        for (int i : zero) {
            rays[static_cast<std::size_t>(i)].active.set(t);
            next.push_back(rays[static_cast<std::size_t>(i)]);
        }
        for (int p : pos) {
            for (int q : neg) {
                Bits common = bits_and(rays[static_cast<std::size_t>(p)].active,
                                       rays[static_cast<std::size_t>(q)].active);
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size(); ++r) {
                    if (static_cast<int>(r) == p || static_cast<int>(r) == q) continue;
                    if (rays[r].active.contains_all(common)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                Vector wv = d[static_cast<std::size_t>(p)] * rays[static_cast<std::size_t>(q)].v -
                            d[static_cast<std::size_t>(q)] * rays[static_cast<std::size_t>(p)].v;
                double nn = norm(wv);
                if (nn <= 1e-12) continue;
                wv *= 1.0 / nn;
                bool dup = false;
                for (const DDRay& e : next) {
                    if (distance(e.v, wv) <= 1e-9) {
                        dup = true;
                        break;
                    }
                }
                if (dup) continue;
                Bits nb = common;
                nb.set(t);
                next.push_back(DDRay{wv, nb});
            }
        }
        rays = std::move(next);
    }

    VRep out{std::vector<Vector>{}, Subspace(dim, orthonormal_basis(lin, dim).basis())};
    for (const DDRay& r : rays) out.rays.push_back(r.v);
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    return out;
}

PolyhedralCone::PolyhedralCone(int dim, std::vector<Vector> rays, Subspace lineality,
                               std::vector<Vector> facets, Subspace equalities)
    : dim_(dim),
      rays_(std::move(rays)),
      lineality_(std::move(lineality)),
      facets_(std::move(facets)),
      equalities_(std::move(equalities)) {}

namespace {

std::vector<Vector> canonical_rays(const std::vector<Vector>& rays_in, const Subspace& lin,
                                   int dim) {
    std::vector<Vector> out;
    for (const Vector& r : rays_in) {
        if (r.dim() != dim) throw DimensionMismatch("ray has wrong dimension");
        Vector v = r;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& b : lin.basis()) v -= dot(v, b) * b;
        }
        double n = norm(v);
        if (n <= kRankTol) continue;
        out.push_back(v * (1.0 / n));
    }
    std::sort(out.begin(), out.end(), lex_less);
    std::vector<Vector> uniq;
    for (const Vector& v : out) {
        if (!uniq.empty() && distance(uniq.back(), v) <= 1e-9) continue;
        uniq.push_back(v);
    }
    return uniq;
}

} // namespace

PolyhedralCone PolyhedralCone::from_rays(int dim, const std::vector<Vector>& rays,
                                         const Subspace& lineality) {
    if (dim < 1) throw std::invalid_argument("cone ambient dimension must be >= 1");
    if (lineality.ambient_dim() != dim) {
        throw DimensionMismatch("from_rays: lineality subspace dimension mismatch");
    }
    std::vector<Vector> r0 = canonical_rays(rays, lineality, dim);
    VRep pol = vrep_from_hrep(dim, r0, lineality);

    // Rebuild the primal generators from the derived H-representation.
    // This prunes redundant input rays (every stored ray is extreme) and
    // surfaces hidden lineality (e.g. a +/- ray pair) in one step.
    VRep prim = vrep_from_hrep(dim, pol.rays, pol.lineality);

    // The rebuild recomputes ray coordinates numerically; snap each extreme
    // ray back to the matching canonical input direction so stored
    // generators keep the exact input coordinates and a stable order.
    std::vector<Vector> candidates = canonical_rays(r0, prim.lineality, dim);
    for (Vector& r : prim.rays) {
        for (const Vector& c : candidates) {
            if (distance(r, c) <= 1e-7) {
                r = c;
                break;
            }
        }
    }
    std::sort(prim.rays.begin(), prim.rays.end(), lex_less);
    return PolyhedralCone(dim, std::move(prim.rays), std::move(prim.lineality), std::move(pol.rays),
                          std::move(pol.lineality));
}

PolyhedralCone PolyhedralCone::from_rays(int dim, const std::vector<Vector>& rays) {
    return from_rays(dim, rays, Subspace(dim));
}

PolyhedralCone PolyhedralCone::from_halfspaces(int dim, const std::vector<Vector>& normals,
                                               const Subspace& equalities) {
    if (dim < 1) throw std::invalid_argument("cone ambient dimension must be >= 1");
    VRep v = vrep_from_hrep(dim, normals, equalities);
    VRep pol = vrep_from_hrep(dim, v.rays, v.lineality);
    return PolyhedralCone(dim, v.rays, v.lineality, pol.rays, pol.lineality);
}

PolyhedralCone PolyhedralCone::from_halfspaces(int dim, const std::vector<Vector>& normals) {
    return from_halfspaces(dim, normals, Subspace(dim));
}

PolyhedralCone PolyhedralCone::zero_cone(int dim) {
    std::vector<Vector> id;
    for (int i = 0; i < dim; ++i) id.push_back(unit_vector(dim, i));
    return PolyhedralCone(dim, {}, Subspace(dim), {}, Subspace(dim, std::move(id)));
}

PolyhedralCone PolyhedralCone::full_space(int dim) {
    std::vector<Vector> id;
    for (int i = 0; i < dim; ++i) id.push_back(unit_vector(dim, i));
    return PolyhedralCone(dim, {}, Subspace(dim, std::move(id)), {}, Subspace(dim));
}

PolyhedralCone positive_hull(int dim, const std::vector<Vector>& points) {
    return PolyhedralCone::from_rays(dim, points);
}

PolyhedralCone polar(const PolyhedralCone& c) {
    // {x : x.e <= 0 for e in C} = Pos(facet normals) + span(equality normals),
    // so with synchronized representations the polar is an exact swap.
    return PolyhedralCone(c.dim_, c.facets_, c.equalities_, c.rays_, c.lineality_);
}

PolyhedralCone intersect(const PolyhedralCone& c, const PolyhedralCone& d) {
    if (c.ambient_dim() != d.ambient_dim()) {
        throw DimensionMismatch("intersect: ambient dimensions differ");
    }
    std::vector<Vector> normals = c.facet_normals();
    normals.insert(normals.end(), d.facet_normals().begin(), d.facet_normals().end());
    return PolyhedralCone::from_halfspaces(c.ambient_dim(), normals,
                                           subspace_sum(c.equality_normals(), d.equality_normals()));
}

PolyhedralCone cone_sum(const PolyhedralCone& c, const PolyhedralCone& d) {
    if (c.ambient_dim() != d.ambient_dim()) {
        throw DimensionMismatch("cone_sum: ambient dimensions differ");
    }
    std::vector<Vector> rays = c.rays();
    rays.insert(rays.end(), d.rays().begin(), d.rays().end());
    return PolyhedralCone::from_rays(c.ambient_dim(), rays,
                                     subspace_sum(c.lineality_basis(), d.lineality_basis()));
}

bool cone_contains(const PolyhedralCone& c, const Vector& u, double tol) {
    if (u.dim() != c.ambient_dim()) {
        throw DimensionMismatch("cone_contains: vector dimension mismatch");
    }
    for (const Vector& n : c.facet_normals()) {
        if (dot(u, n) > tol) return false;
    }
    for (const Vector& m : c.equality_normals().basis()) {
        if (std::abs(dot(u, m)) > tol) return false;
    }
    return true;
}

Subspace lineality_space(const PolyhedralCone& c) { return c.lineality_basis(); }

Subspace span_of(const PolyhedralCone& c) {
    std::vector<Vector> gens = c.rays();
    gens.insert(gens.end(), c.lineality_basis().basis().begin(), c.lineality_basis().basis().end());
    return orthonormal_basis(gens, c.ambient_dim());
}

bool is_subspace(const PolyhedralCone& c) {
    bool by_rays = c.rays().empty();
    bool by_facets = c.facet_normals().empty();
    if (by_rays != by_facets) {
        throw std::logic_error("cone representations desynced: ray/facet emptiness disagrees");
    }
    return by_rays;
}

bool in_relative_interior(const PolyhedralCone& c, const Vector& u, double tol_strict) {
    if (u.dim() != c.ambient_dim()) {
        throw DimensionMismatch("in_relative_interior: vector dimension mismatch");
    }
    if (is_subspace(c)) return cone_contains(c, u, tol_strict);
    Subspace sp = span_of(c);
    if (norm(u - project_subspace(sp, u)) > tol_strict * (1.0 + norm(u))) return false;
    for (const Vector& n : c.facet_normals()) {
        if (!(dot(u, n) < -tol_strict)) return false;
    }
    return true;
}

bool cones_equal(const PolyhedralCone& a, const PolyhedralCone& b, double tol) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionMismatch("cones_equal: ambient dimensions differ");
    }
    auto contained = [tol](const PolyhedralCone& x, const PolyhedralCone& y) {
        for (const Vector& r : x.rays()) {
            if (!cone_contains(y, r, tol)) return false;
        }
        for (const Vector& l : x.lineality_basis().basis()) {
            if (!cone_contains(y, l, tol) || !cone_contains(y, -l, tol)) return false;
        }
        return true;
    };
    return contained(a, b) && contained(b, a);
}

Vector relative_interior_point(const PolyhedralCone& c) {
    Vector p(c.ambient_dim());
    for (const Vector& r : c.rays()) p += r;
    return p;
}

ConvexSet::ConvexSet(PolyhedralCone c) : v_(std::move(c)) {}

ConvexSet::ConvexSet(PlaneSet p) : v_(std::move(p)) {
    const PlaneSet& pl = std::get<PlaneSet>(v_);
    if (pl.directions.ambient_dim() != pl.point.dim()) {
        throw DimensionMismatch("plane: direction subspace dimension mismatch");
    }
}

ConvexSet::ConvexSet(HalfspaceSet h) : v_(std::move(h)) {
    HalfspaceSet& hs = std::get<HalfspaceSet>(v_);
    double n = norm(hs.normal);
    if (n <= kRankTol) throw std::invalid_argument("halfspace: zero normal");
    if (!std::isfinite(hs.offset)) throw std::invalid_argument("halfspace: offset not finite");
    hs.offset /= n;
    hs.normal = hs.normal * (1.0 / n);
}

ConvexSet::ConvexSet(BallSet b) : v_(std::move(b)) {
    const BallSet& bl = std::get<BallSet>(v_);
    if (!(bl.radius > 0.0) || !std::isfinite(bl.radius)) {
        throw std::invalid_argument("ball: radius must be positive (closed balls only)");
    }
}

ConvexSet::ConvexSet(PolytopeSet p) : v_(std::move(p)) {
    const PolytopeSet& pt = std::get<PolytopeSet>(v_);
    if (pt.vertices.empty()) throw std::invalid_argument("polytope: needs at least one vertex");
    for (const Vector& v : pt.vertices) {
        if (v.dim() != pt.vertices.front().dim()) {
            throw DimensionMismatch("polytope: vertex dimensions differ");
        }
    }
}

ConvexSet::ConvexSet(SegmentSet s) : v_(std::move(s)) {
    const SegmentSet& sg = std::get<SegmentSet>(v_);
    if (sg.a.dim() != sg.b.dim()) throw DimensionMismatch("segment: endpoint dimensions differ");
    if (distance(sg.a, sg.b) <= kRankTol) {
        throw std::invalid_argument("segment: endpoints coincide (use a polytope vertex)");
    }
}

ConvexSet::ConvexSet(ShiftedConeSet s) : v_(std::move(s)) {
    const ShiftedConeSet& sc = std::get<ShiftedConeSet>(v_);
    if (sc.translation.dim() != sc.cone.ambient_dim()) {
        throw DimensionMismatch("shifted cone: translation dimension mismatch");
    }
}

int ConvexSet::ambient_dim() const {
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PolyhedralCone>) return s.ambient_dim();
            else if constexpr (std::is_same_v<T, PlaneSet>) return s.point.dim();
            else if constexpr (std::is_same_v<T, HalfspaceSet>) return s.normal.dim();
            else if constexpr (std::is_same_v<T, BallSet>) return s.center.dim();
            else if constexpr (std::is_same_v<T, PolytopeSet>) return s.vertices.front().dim();
            else if constexpr (std::is_same_v<T, SegmentSet>) return s.a.dim();
            else return s.cone.ambient_dim();
        },
        v_);
}

std::vector<Vector> landmark_points(const ConvexSet& s) {
    std::vector<Vector> out;
    std::visit(
        [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PolyhedralCone>) {
                for (const Vector& r : v.rays()) out.push_back(r);
                for (const Vector& l : v.lineality_basis().basis()) {
                    out.push_back(l);
                    out.push_back(-l);
                }
                if (!v.rays().empty()) out.push_back(relative_interior_point(v));
            } else if constexpr (std::is_same_v<T, PlaneSet>) {
                out.push_back(v.point);
                for (const Vector& d : v.directions.basis()) {
                    out.push_back(v.point + d);
                    out.push_back(v.point - d);
                }
            } else if constexpr (std::is_same_v<T, HalfspaceSet>) {
                out.push_back(v.offset * v.normal);
                out.push_back(v.offset * v.normal - v.normal);
            } else if constexpr (std::is_same_v<T, BallSet>) {
                out.push_back(v.center);
                for (int i = 0; i < v.center.dim(); ++i) {
                    out.push_back(v.center + v.radius * unit_vector(v.center.dim(), i));
                    out.push_back(v.center - v.radius * unit_vector(v.center.dim(), i));
                }
            } else if constexpr (std::is_same_v<T, PolytopeSet>) {
                Vector centroid(v.vertices.front().dim());
                for (const Vector& p : v.vertices) {
                    out.push_back(p);
                    centroid += p;
                }
                out.push_back(centroid * (1.0 / static_cast<double>(v.vertices.size())));
            } else if constexpr (std::is_same_v<T, SegmentSet>) {
                out.push_back(v.a);
                out.push_back(v.b);
                out.push_back(0.5 * (v.a + v.b));
            } else {
                out.push_back(v.translation);
                for (const Vector& r : v.cone.rays()) out.push_back(v.translation + r);
                for (const Vector& l : v.cone.lineality_basis().basis()) {
                    out.push_back(v.translation + l);
                    out.push_back(v.translation - l);
                }
            }
        },
        s.storage());
    return out;
}

namespace {

bool vector_near(const Vector& a, const Vector& b, double tol) {
    return distance(a, b) <= tol;
}

// multiset match: every point of `a` pairs with a distinct point of `b`
bool point_lists_equal(const std::vector<Vector>& a, const std::vector<Vector>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const Vector& p : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && vector_near(p, b[j], tol)) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace

bool sets_equal(const ConvexSet& a, const ConvexSet& b, double tol) {
    if (a.ambient_dim() != b.ambient_dim()) return false;
    if (a.storage().index() != b.storage().index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.storage());
            if constexpr (std::is_same_v<T, PolyhedralCone>) {
                return cones_equal(x, y, tol);
            } else if constexpr (std::is_same_v<T, PlaneSet>) {
                if (!subspaces_equal(x.directions, y.directions, tol)) return false;
                const Vector diff = x.point - y.point;
                return norm(diff - project_subspace(x.directions, diff)) <= tol;
            } else if constexpr (std::is_same_v<T, HalfspaceSet>) {
                return vector_near(x.normal, y.normal, tol) &&
                       std::abs(x.offset - y.offset) <= tol;
            } else if constexpr (std::is_same_v<T, BallSet>) {
                return vector_near(x.center, y.center, tol) &&
                       std::abs(x.radius - y.radius) <= tol;
            } else if constexpr (std::is_same_v<T, PolytopeSet>) {
                return point_lists_equal(x.vertices, y.vertices, tol);
            } else if constexpr (std::is_same_v<T, SegmentSet>) {
                return (vector_near(x.a, y.a, tol) && vector_near(x.b, y.b, tol)) ||
                       (vector_near(x.a, y.b, tol) && vector_near(x.b, y.a, tol));
            } else {
                if (!cones_equal(x.cone, y.cone, tol)) return false;
                // identical regions may carry translations differing by a
                // lineality element
                const Vector diff = x.translation - y.translation;
                return subspace_contains(x.cone.lineality_basis(), diff, tol);
            }
        },
        a.storage());
}

} // namespace conekit
