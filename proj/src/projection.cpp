#include "conekit/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conekit/errors.hpp"
#include "conekit/solvers.hpp"

namespace conekit {

namespace {

void check_dim(int set_dim, const Vector& u, const char* op) {
    if (u.dim() != set_dim) {
        throw DimensionMismatch(std::string(op) + ": vector dimension does not match the set");
    }
}

Vector project_plane(const PlaneSet& p, const Vector& u) {
    return p.point + project_subspace(p.directions, u - p.point);
}

Vector project_halfspace(const HalfspaceSet& h, const Vector& u) {
    double v = dot(u, h.normal) - h.offset;
    if (v <= 0.0) return u;
    return u - v * h.normal;
}

Vector project_ball(const BallSet& b, const Vector& u) {
    Vector d = u - b.center;
    double n = norm(d);
    if (n <= b.radius) return u;
    return b.center + (b.radius / n) * d;
}

Vector project_segment(const SegmentSet& s, const Vector& u) {
    Vector d = s.b - s.a;
    double t = dot(u - s.a, d) / dot(d, d);
    t = std::clamp(t, 0.0, 1.0);
    return s.a + t * d;
}

Vector project_polytope(const PolytopeSet& p, const Vector& u) {
    Columns shifted;
    for (const Vector& v : p.vertices) shifted.push_back(v - u);
    std::vector<double> lam = wolfe_min_norm_point(shifted);
    Vector out(u.dim());
    for (std::size_t i = 0; i < lam.size(); ++i) out += lam[i] * p.vertices[i];
    return out;
}

} // namespace

Vector project(const PolyhedralCone& c, const Vector& u) {
    check_dim(c.ambient_dim(), u, "project");
    Vector pl = project_subspace(c.lineality_basis(), u);
    Vector rest = u - pl;
    if (c.rays().empty()) return pl;
    std::vector<double> w = nnls(c.rays(), rest, 1e-10);
    Vector out = pl;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != 0.0) out += w[i] * c.rays()[i];
    }
    return out;
}

Vector project(const ConvexSet& s, const Vector& u) {
    check_dim(s.ambient_dim(), u, "project");
    return std::visit(
        [&u](const auto& v) -> Vector {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PolyhedralCone>) return project(v, u);
            else if constexpr (std::is_same_v<T, PlaneSet>) return project_plane(v, u);
            else if constexpr (std::is_same_v<T, HalfspaceSet>) return project_halfspace(v, u);
            else if constexpr (std::is_same_v<T, BallSet>) return project_ball(v, u);
            else if constexpr (std::is_same_v<T, PolytopeSet>) return project_polytope(v, u);
            else if constexpr (std::is_same_v<T, SegmentSet>) return project_segment(v, u);
            else return v.translation + project(v.cone, u - v.translation);
        },
        s.storage());
}

double set_distance(const ConvexSet& s, const Vector& u) { return norm(u - project(s, u)); }

bool set_contains(const ConvexSet& s, const Vector& u, double tol) {
    return set_distance(s, u) <= tol;
}

namespace {

constexpr long kOracleBudget = 100000;
constexpr double kOracleMoveFlag = 1e-7;

// largest eigenvalue of M^T M via power iteration on the columns
double spectral_bound(const Columns& cols) {
    const int k = static_cast<int>(cols.size());
    if (k == 0) return 1.0;
    std::vector<double> v(static_cast<std::size_t>(k), 1.0 / std::sqrt(static_cast<double>(k)));
    double lambda = 1.0;
    const int n = cols[0].dim();
    for (int it = 0; it < 100; ++it) {
        Vector mv(n);
        for (int j = 0; j < k; ++j) mv += v[static_cast<std::size_t>(j)] * cols[static_cast<std::size_t>(j)];
        std::vector<double> w(static_cast<std::size_t>(k), 0.0);
        double nw = 0.0;
        for (int j = 0; j < k; ++j) {
            w[static_cast<std::size_t>(j)] = dot(cols[static_cast<std::size_t>(j)], mv);
            nw += w[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
        }
        nw = std::sqrt(nw);
        if (nw <= 1e-300) return 1.0;
        lambda = nw;
        for (int j = 0; j < k; ++j) w[static_cast<std::size_t>(j)] /= nw;
        v = std::move(w);
    }
    return lambda;
}

// PGD over coefficients x of the column model p = M x, minimizing
// 1/2 ||u - M x||^2, re-projecting coefficients through `clamp`.
template <typename Clamp>
OracleResult coefficient_pgd(const Columns& cols, const Vector& u, std::vector<double> x,
                             Clamp clamp) {
    const int k = static_cast<int>(cols.size());
    const int n = u.dim();
    if (k == 0) return OracleResult{Vector(n), true, 0, 0.0};
    double lam = spectral_bound(cols);
    double step = 1.0 / (1.01 * lam + 1e-12);
    auto model = [&](const std::vector<double>& c) {
        Vector p(n);
        for (int j = 0; j < k; ++j) p += c[static_cast<std::size_t>(j)] * cols[static_cast<std::size_t>(j)];
        return p;
    };
    Vector p = model(x);
    double move = 0.0;
    long it = 0;
    const double exit_tol = 1e-15 * (1.0 + norm(u));
    for (; it < kOracleBudget; ++it) {
        Vector r = p - u; // gradient of the x-space objective at p
        std::vector<double> nx = x;
        for (int j = 0; j < k; ++j) {
            nx[static_cast<std::size_t>(j)] -= step * dot(cols[static_cast<std::size_t>(j)], r);
        }
        clamp(nx);
        Vector np = model(nx);
        move = norm(np - p);
        x = std::move(nx);
        p = np;
        if (move <= exit_tol) {
            ++it;
            break;
        }
    }
    return OracleResult{p, move <= kOracleMoveFlag, it, move};
}

OracleResult oracle_cone(const PolyhedralCone& c, const Vector& u) {
    Columns cols = c.rays();
    const std::size_t n_rays = cols.size();
    for (const Vector& l : c.lineality_basis().basis()) cols.push_back(l);
    std::vector<double> x0(cols.size(), 0.0);
    return coefficient_pgd(cols, u, std::move(x0), [n_rays](std::vector<double>& w) {
        for (std::size_t j = 0; j < n_rays; ++j) w[j] = std::max(0.0, w[j]);
    });
}

OracleResult oracle_polytope(const PolytopeSet& p, const Vector& u) {
    const std::size_t k = p.vertices.size();
    std::vector<double> x0(k, 1.0 / static_cast<double>(k));
    return coefficient_pgd(p.vertices, u, std::move(x0),
                           [](std::vector<double>& w) { w = project_to_simplex(w); });
}

// x-space loop for the variants whose feasibility re-projection is a
// closed form; with step 1 the iterate is R(u) and settles immediately.
template <typename Reproject>
OracleResult oracle_closed_form(const Vector& u, Reproject reproject) {
    Vector x = reproject(u);
    double move = 0.0;
    long it = 1;
    for (; it < kOracleBudget; ++it) {
        Vector nx = reproject(x - (x - u));
        move = norm(nx - x);
        x = nx;
        if (move <= 1e-15 * (1.0 + norm(u))) break;
    }
    return OracleResult{x, move <= kOracleMoveFlag, it, move};
}

} // namespace

OracleResult project_oracle(const ConvexSet& s, const Vector& u) {
    check_dim(s.ambient_dim(), u, "project_oracle");
    return std::visit(
        [&u](const auto& v) -> OracleResult {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PolyhedralCone>) {
                return oracle_cone(v, u);
            } else if constexpr (std::is_same_v<T, PlaneSet>) {
                return oracle_closed_form(u, [&v](const Vector& x) { return project_plane(v, x); });
            } else if constexpr (std::is_same_v<T, HalfspaceSet>) {
                return oracle_closed_form(u, [&v](const Vector& x) { return project_halfspace(v, x); });
            } else if constexpr (std::is_same_v<T, BallSet>) {
                return oracle_closed_form(u, [&v](const Vector& x) { return project_ball(v, x); });
            } else if constexpr (std::is_same_v<T, PolytopeSet>) {
                return oracle_polytope(v, u);
            } else if constexpr (std::is_same_v<T, SegmentSet>) {
                return oracle_closed_form(u, [&v](const Vector& x) { return project_segment(v, x); });
            } else {
                OracleResult r = project_oracle(ConvexSet(v.cone), u - v.translation);
                r.point += v.translation;
                return r;
            }
        },
        s.storage());
}

MoreauDecomposition moreau_decompose(const PolyhedralCone& c, const Vector& u) {
    check_dim(c.ambient_dim(), u, "moreau_decompose");
    Vector y = project(c, u);
    Vector z = project(polar(c), u);
    double rs = norm(u - y - z);
    double ro = std::abs(dot(y, z));
    if (rs > 1e-8 * (1.0 + norm(u)) || ro > 1e-8 * (1.0 + dot(u, u))) {
        throw std::logic_error("moreau_decompose: projection residuals exceed the invariant bound");
    }
    if (!cone_contains(c, y, 1e-8) || !cone_contains(polar(c), z, 1e-8)) {
        throw std::logic_error("moreau_decompose: parts failed membership validation");
    }
    return MoreauDecomposition{u, y, z, rs, ro};
}

} // namespace conekit
