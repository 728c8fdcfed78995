#include "conekit/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "conekit/errors.hpp"
#include "conekit/solvers.hpp"

namespace conekit {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D649BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_same_dim(const ConvexSet& e, const ConvexSet& f, const Vector& u) {
    if (e.ambient_dim() != f.ambient_dim() || u.dim() != e.ambient_dim())
        throw DimensionMismatch("pair check needs e, f and u in the same space");
}

} // namespace

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
    std::uint64_t x = seed;
    s_ = splitmix64(x);
    if (s_ == 0) s_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next_u64() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 2685821657736338717ULL;
}

double Xorshift64Star::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
}

double Xorshift64Star::next_gaussian() {
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Sampler::Sampler(int dim, std::uint64_t seed, std::vector<Vector> structured, double radius)
    : dim_(dim), radius_(radius), rng_(seed), structured_(std::move(structured)) {
    if (dim < 1) throw std::invalid_argument("sampler dimension must be positive");
    if (!(radius > 0.0)) throw std::invalid_argument("sampler radius must be positive");
    for (const Vector& v : structured_)
        if (v.dim() != dim_) throw DimensionMismatch("structured sample has wrong dimension");
}

Vector Sampler::next() {
    if (at_ < structured_.size()) return structured_[at_++];
    Vector g(dim_);
    for (int i = 0; i < dim_; ++i) g[i] = rng_.next_gaussian();
    return (radius_ / std::sqrt(static_cast<double>(dim_))) * g;
}

Sampler make_pair_sampler(const ConvexSet& e, const ConvexSet& f, std::uint64_t seed) {
    if (e.ambient_dim() != f.ambient_dim())
        throw DimensionMismatch("pair sampler needs matching ambient dimensions");
    const int n = e.ambient_dim();
    std::vector<Vector> pts;
    pts.push_back(zero_vector(n));
    auto la = landmark_points(e);
    auto lb = landmark_points(f);
    if (la.size() > 12) la.erase(la.begin() + 12, la.end());
    if (lb.size() > 12) lb.erase(lb.begin() + 12, lb.end());
    pts.insert(pts.end(), la.begin(), la.end());
    pts.insert(pts.end(), lb.begin(), lb.end());
    const std::size_t ca = std::min<std::size_t>(la.size(), 6);
    const std::size_t cb = std::min<std::size_t>(lb.size(), 6);
    for (std::size_t i = 0; i < ca; ++i) {
        for (std::size_t j = 0; j < cb; ++j) {
            pts.push_back(la[i] + lb[j]);
            pts.push_back(la[i] - lb[j]);
        }
    }
    if (pts.size() > 80) pts.erase(pts.begin() + 80, pts.end());
    return Sampler(n, seed, std::move(pts));
}

const char* witness_detail_name(WitnessDetail d) {
    switch (d) {
    case WitnessDetail::None: return "NONE";
    case WitnessDetail::SumMismatch: return "SUM_MISMATCH";
    case WitnessDetail::NotOrthogonal: return "NOT_ORTHOGONAL";
    case WitnessDetail::NonUnique: return "NON_UNIQUE";
    case WitnessDetail::NoRepresentation: return "NO_REPRESENTATION";
    }
    return "NONE";
}

std::optional<bool> classify_polar_pair(const ConvexSet& e, const ConvexSet& f, double tol) {
    if (!e.is_cone() || !f.is_cone()) return std::nullopt;
    const PolyhedralCone& ce = e.as_cone();
    const PolyhedralCone& cf = f.as_cone();
    if (ce.ambient_dim() != cf.ambient_dim())
        throw DimensionMismatch("polar classification needs matching dimensions");
    return cones_equal(cf, polar(ce), tol) && cones_equal(ce, polar(cf), tol);
}

std::optional<bool> classify_complementary_planes(const ConvexSet& e, const ConvexSet& f) {
    if (!e.is_plane() || !f.is_plane()) return std::nullopt;
    const PlaneSet& pe = e.as_plane();
    const PlaneSet& pf = f.as_plane();
    if (pe.point.dim() != pf.point.dim())
        throw DimensionMismatch("plane classification needs matching dimensions");
    const int n = pe.point.dim();
    const Subspace sum = subspace_sum(pe.directions, pf.directions);
    return sum.rank() == n && pe.directions.rank() + pf.directions.rank() == n;
}

SumFeasibility solve_sum_feasibility(const ConvexSet& e, const ConvexSet& f, const Vector& u,
                                     int iterations) {
    require_same_dim(e, f, u);
    Vector y = project(e, u);
    Vector z = project(f, u - y);
    double res = norm(u - y - z);
    for (int it = 0; it < iterations; ++it) {
        y = project(e, u - z);
        z = project(f, u - y);
        const double next = norm(u - y - z);
        const bool stalled = res - next < 1e-14;
        res = next;
        if (stalled) break;
    }
    return SumFeasibility{std::move(y), std::move(z), res};
}

std::optional<WitnessDetail> decomposition_violation_at(const ConvexSet& e, const ConvexSet& f,
                                                        const Vector& u) {
    require_same_dim(e, f, u);
    const Vector pe = project(e, u);
    const Vector pf = project(f, u);
    if (norm(u - pe - pf) > 1e-7 * (1.0 + norm(u))) return WitnessDetail::SumMismatch;
    return std::nullopt;
}

PairVerdict check_decomposition_pair(const ConvexSet& e, const ConvexSet& f, Sampler& sampler,
                                     long n_samples) {
    PairVerdict v;
    v.classified_polar_pair = classify_polar_pair(e, f);
    for (long i = 0; i < n_samples; ++i) {
        const Vector u = sampler.next();
        ++v.samples_tested;
        if (auto bad = decomposition_violation_at(e, f, u)) {
            v.property_holds = false;
            v.witness = u;
            v.witness_detail = *bad;
            break;
        }
    }
    return v;
}

std::optional<WitnessDetail> orthogonal_projection_violation_at(const ConvexSet& e,
                                                                const ConvexSet& f,
                                                                const Vector& u) {
    require_same_dim(e, f, u);
    const SumFeasibility sf = solve_sum_feasibility(e, f, u);
    if (sf.residual > 1e-6 * (1.0 + norm(u))) return WitnessDetail::SumMismatch;
    if (std::abs(dot(project(e, u), project(f, u))) > 1e-7 * (1.0 + dot(u, u)))
        return WitnessDetail::NotOrthogonal;
    return std::nullopt;
}

PairVerdict check_orthogonal_projection_pair(const ConvexSet& e, const ConvexSet& f,
                                             Sampler& sampler, long n_samples) {
    PairVerdict v;
    v.classified_polar_pair = classify_polar_pair(e, f);

    // The sum condition e + f = R^n is decidable exactly for cone pairs
    // (polar(e) and polar(f) must meet only at the origin) and for plane
    // pairs (direction sums must fill the space). Sampling then only has
    // to probe orthogonality.
    bool sum_exact_ok = false;
    if (e.is_cone() && f.is_cone()) {
        const PolyhedralCone inter = intersect(polar(e.as_cone()), polar(f.as_cone()));
        if (!inter.is_trivial()) {
            const std::vector<Vector>& lin = inter.lineality_basis().basis();
            v.property_holds = false;
            v.witness = inter.rays().empty() ? lin.front() : inter.rays().front();
            v.witness_detail = WitnessDetail::SumMismatch;
            return v;
        }
        sum_exact_ok = true;
    } else if (e.is_plane() && f.is_plane()) {
        const PlaneSet& pe = e.as_plane();
        const PlaneSet& pf = f.as_plane();
        const Subspace sum = subspace_sum(pe.directions, pf.directions);
        if (sum.rank() < e.ambient_dim()) {
            const Subspace missing = orthogonal_complement(sum);
            v.property_holds = false;
            v.witness = pe.point + pf.point + missing.basis().front();
            v.witness_detail = WitnessDetail::SumMismatch;
            return v;
        }
        sum_exact_ok = true;
    }

    for (long i = 0; i < n_samples; ++i) {
        const Vector u = sampler.next();
        ++v.samples_tested;
        std::optional<WitnessDetail> bad;
        if (sum_exact_ok) {
            if (std::abs(dot(project(e, u), project(f, u))) > 1e-7 * (1.0 + dot(u, u)))
                bad = WitnessDetail::NotOrthogonal;
        } else {
            bad = orthogonal_projection_violation_at(e, f, u);
        }
        if (bad) {
            v.property_holds = false;
            v.witness = u;
            v.witness_detail = *bad;
            break;
        }
    }
    return v;
}

namespace {

double orth_objective(const ConvexSet& f, const Vector& u, const Vector& y) {
    const Vector z = u - y;
    const Vector d = z - project(f, z);
    const double g = dot(y, z);
    return g * g + dot(d, d);
}

} // namespace

std::vector<OrthogonalDecomposition> find_orthogonal_decompositions(const ConvexSet& e,
                                                                    const ConvexSet& f,
                                                                    const Vector& u,
                                                                    const SearchBudget& budget) {
    require_same_dim(e, f, u);
    const int n = u.dim();

    std::vector<Vector> starts;
    starts.push_back(project(e, u));
    starts.push_back(u - project(f, u));
    Xorshift64Star rng(budget.seed);
    const double scale = (1.0 + norm(u)) / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < budget.starts; ++k) {
        Vector g(n);
        for (int i = 0; i < n; ++i) g[i] = rng.next_gaussian();
        starts.push_back(scale * g);
    }

    std::vector<Vector> found;
    for (const Vector& start : starts) {
        Vector y = project(e, start);
        for (int it = 0; it < budget.iterations; ++it) {
            const Vector z = u - y;
            const Vector d = z - project(f, z);
            const double g = dot(y, z);
            const double phi0 = g * g + dot(d, d);
            if (phi0 < 1e-22) break;
            const Vector grad = (2.0 * g) * (u - 2.0 * y) - 2.0 * d;
            if (dot(grad, grad) < 1e-30) break;
            double eta = 1.0;
            bool moved = false;
            Vector y_next = y;
            for (int bt = 0; bt < 45; ++bt) {
                const Vector cand = project(e, y - eta * grad);
                if (orth_objective(f, u, cand) < phi0) {
                    y_next = cand;
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }
            if (!moved) break;
            const double step = distance(y_next, y);
            y = y_next;
            if (step < 1e-14 * (1.0 + norm(y))) break;
        }
        // repair residual infeasibility of z; feasible orthogonal pairs are
        // fixed points of this map, so exact solutions survive untouched
        for (int r = 0; r < 5; ++r) y = project(e, u - project(f, u - y));
        const Vector z = u - y;
        if (std::abs(dot(y, z)) <= 1e-7 && norm(z - project(f, z)) <= 1e-7)
            found.push_back(y);
    }

    std::vector<Vector> reps;
    for (const Vector& y : found) {
        bool dup = false;
        for (const Vector& r : reps) {
            if (distance(y, r) <= 1e-4) {
                dup = true;
                break;
            }
        }
        if (!dup) reps.push_back(y);
    }
    std::sort(reps.begin(), reps.end(), lex_less);

    std::vector<OrthogonalDecomposition> out;
    out.reserve(reps.size());
    for (const Vector& y : reps) out.push_back(OrthogonalDecomposition{y, u - y});
    return out;
}

PairVerdict check_unique_orthogonal_sum_pair(const ConvexSet& e, const ConvexSet& f,
                                             Sampler& sampler, long n_samples,
                                             const SearchBudget& budget) {
    PairVerdict v;
    v.classified_polar_pair = classify_polar_pair(e, f);
    for (long i = 0; i < n_samples; ++i) {
        const Vector u = sampler.next();
        ++v.samples_tested;
        const auto sols = find_orthogonal_decompositions(e, f, u, budget);
        if (sols.size() == 1) continue;
        v.property_holds = false;
        v.witness = u;
        v.witness_detail =
            sols.empty() ? WitnessDetail::NoRepresentation : WitnessDetail::NonUnique;
        break;
    }
    return v;
}

std::optional<Vector> plane_pair_representation(const PlaneSet& e, const PlaneSet& f,
                                                const Vector& u) {
    if (e.point.dim() != f.point.dim() || u.dim() != e.point.dim())
        throw DimensionMismatch("plane pair and point dimensions differ");
    const Vector rhs = u - e.point - f.point;
    Columns cols;
    for (const Vector& bv : e.directions.basis()) cols.push_back(bv);
    for (const Vector& bv : f.directions.basis()) cols.push_back(-1.0 * bv);
    if (cols.empty()) {
        if (norm(rhs) <= 1e-9 * (1.0 + norm(u))) return e.point;
        return std::nullopt;
    }
    const LeastSquaresResult ls = least_squares(cols, rhs);
    Vector fit = zero_vector(u.dim());
    for (std::size_t j = 0; j < cols.size(); ++j) fit += ls.x[static_cast<int>(j)] * cols[j];
    if (norm(rhs - fit) > 1e-9 * (1.0 + norm(u))) return std::nullopt;
    Vector y = e.point;
    const std::vector<Vector>& be = e.directions.basis();
    for (std::size_t j = 0; j < be.size(); ++j) y += ls.x[static_cast<int>(j)] * be[j];
    return y;
}

std::optional<WitnessDetail> unique_sum_violation_at(const ConvexSet& e, const ConvexSet& f,
                                                     const Vector& u, const SearchBudget& budget) {
    require_same_dim(e, f, u);

    if (e.is_plane() && f.is_plane()) {
        // exact affine route: representability is a least-squares residual,
        // uniqueness is the triviality of the direction intersection
        const PlaneSet& pe = e.as_plane();
        const PlaneSet& pf = f.as_plane();
        if (!plane_pair_representation(pe, pf, u)) return WitnessDetail::NoRepresentation;
        const Subspace sum = subspace_sum(pe.directions, pf.directions);
        if (pe.directions.rank() + pf.directions.rank() > sum.rank())
            return WitnessDetail::NonUnique;
        return std::nullopt;
    }

    const SumFeasibility sf = solve_sum_feasibility(e, f, u);
    if (sf.residual > 1e-6 * (1.0 + norm(u))) return WitnessDetail::NoRepresentation;

    std::vector<Vector> starts;
    starts.push_back(sf.y);
    starts.push_back(project(e, u));
    Xorshift64Star rng(budget.seed);
    const int n = u.dim();
    const double scale = (1.0 + norm(u)) / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < budget.starts; ++k) {
        Vector g(n);
        for (int i = 0; i < n; ++i) g[i] = rng.next_gaussian();
        starts.push_back(scale * g);
    }

    std::vector<Vector> reps;
    for (const Vector& start : starts) {
        Vector y = project(e, start);
        for (int it = 0; it < budget.iterations; ++it) {
            const Vector y_next = project(e, u - project(f, u - y));
            const double step = distance(y_next, y);
            y = y_next;
            if (step < 1e-15 * (1.0 + norm(y))) break;
        }
        const Vector z = u - y;
        if (norm(z - project(f, z)) > 1e-7) continue;
        bool dup = false;
        for (const Vector& r : reps) {
            if (distance(y, r) <= 1e-4) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            reps.push_back(y);
            if (reps.size() >= 2) return WitnessDetail::NonUnique;
        }
    }
    return std::nullopt;
}

PairVerdict check_unique_sum_pair(const ConvexSet& e, const ConvexSet& f, Sampler& sampler,
                                  long n_samples, const SearchBudget& budget) {
    PairVerdict v;
    v.classified_polar_pair = classify_complementary_planes(e, f);
    for (long i = 0; i < n_samples; ++i) {
        const Vector u = sampler.next();
        ++v.samples_tested;
        if (auto bad = unique_sum_violation_at(e, f, u, budget)) {
            v.property_holds = false;
            v.witness = u;
            v.witness_detail = *bad;
            break;
        }
    }
    return v;
}

PolyhedralCone orthogonal_face_complement(const PolyhedralCone& c, const PolyhedralCone& b) {
    if (c.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("cone and face live in different spaces");
    if (is_subspace(c))
        throw HypothesisViolated("cone is a plane, so it has no proper face to separate along");
    for (const Vector& r : b.rays())
        if (!cone_contains(c, r)) throw HypothesisViolated("face generator lies outside the cone");
    for (const Vector& l : b.lineality_basis().basis())
        if (!cone_contains(c, l) || !cone_contains(c, -1.0 * l))
            throw HypothesisViolated("face lineality leaves the cone");
    // For a polyhedral subset, staying out of the relative interior is
    // equivalent to its own relative-interior point staying out.
    const Vector p = relative_interior_point(b);
    if (in_relative_interior(c, p))
        throw HypothesisViolated("face meets the relative interior of the cone");
    const Subspace eq = subspace_sum(lineality_space(c), span_of(b));
    return PolyhedralCone::from_halfspaces(c.ambient_dim(), c.rays(), eq);
}

SeparationResult separate_face(const PolyhedralCone& c, const PolyhedralCone& b) {
    PolyhedralCone d = orthogonal_face_complement(c, b);
    const int n = c.ambient_dim();
    if (d.rays().empty())
        throw SeparationNotFound("complement cone degenerated to a plane; no strict side exists");

    auto signed_gens = [](const PolyhedralCone& k) {
        std::vector<Vector> g = k.rays();
        for (const Vector& l : k.lineality_basis().basis()) {
            g.push_back(l);
            g.push_back(-1.0 * l);
        }
        return g;
    };
    const std::vector<Vector> gens_c = signed_gens(c);
    const std::vector<Vector> gens_d = signed_gens(d);
    std::vector<Vector> gens_b = b.rays();
    for (const Vector& l : b.lineality_basis().basis()) gens_b.push_back(l);

    Vector sum_c = zero_vector(n);
    for (const Vector& r : c.rays()) sum_c += r;
    Vector sum_d = zero_vector(n);
    for (const Vector& r : d.rays()) sum_d += r;

    // LP over e = e_pos - e_neg with both parts boxed into [0,1], plus a
    // slack margin t that the objective pushes up. A positive optimum is a
    // normal whose hyperplane carries b with c and d strictly on opposite
    // sides at their interior surrogates.
    LpProblem lp;
    lp.n_vars = 2 * n + 1;
    auto push_row = [&](const Vector& g, double tcoef, LpRelation rel, double rhs) {
        std::vector<double> row(static_cast<std::size_t>(lp.n_vars), 0.0);
        for (int i = 0; i < n; ++i) {
            row[static_cast<std::size_t>(i)] = g[i];
            row[static_cast<std::size_t>(n + i)] = -g[i];
        }
        row[static_cast<std::size_t>(2 * n)] = tcoef;
        lp.rows.push_back(std::move(row));
        lp.relations.push_back(rel);
        lp.rhs.push_back(rhs);
    };
    for (const Vector& g : gens_b) push_row(g, 0.0, LpRelation::EQ, 0.0);
    for (const Vector& g : gens_c) push_row(g, 0.0, LpRelation::LE, 0.0);
    for (const Vector& g : gens_d) push_row(g, 0.0, LpRelation::GE, 0.0);
    push_row(sum_c, 1.0, LpRelation::LE, 0.0);
    push_row(sum_d, -1.0, LpRelation::GE, 0.0);
    for (int i = 0; i < 2 * n; ++i) {
        std::vector<double> row(static_cast<std::size_t>(lp.n_vars), 0.0);
        row[static_cast<std::size_t>(i)] = 1.0;
        lp.rows.push_back(std::move(row));
        lp.relations.push_back(LpRelation::LE);
        lp.rhs.push_back(1.0);
    }
    lp.objective.assign(static_cast<std::size_t>(lp.n_vars), 0.0);
    lp.objective[static_cast<std::size_t>(2 * n)] = 1.0;

    const LpResult sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal || sol.objective < 1e-7)
        throw SeparationNotFound("no hyperplane through the face strictly separates cone from complement");

    Vector e(n);
    for (int i = 0; i < n; ++i) e[i] = sol.x[i] - sol.x[n + i];
    const double len = norm(e);
    if (len < 1e-9) throw SeparationNotFound("separating normal degenerated to zero");
    e = (1.0 / len) * e;

    bool contains_b = true;
    for (const Vector& g : gens_b) contains_b = contains_b && std::abs(dot(e, g)) <= 1e-9;
    for (const Vector& g : gens_c)
        if (dot(e, g) > 1e-9) throw SeparationNotFound("candidate normal fails the cone side");
    for (const Vector& g : gens_d)
        if (dot(e, g) < -1e-9)
            throw SeparationNotFound("candidate normal fails the complement side");
    const bool strict = dot(e, sum_c) < -1e-9 && dot(e, sum_d) > 1e-9;

    Subspace s = orthogonal_complement(Subspace(n, {e}));
    return SeparationResult{std::move(e), std::move(s), std::move(d), contains_b, strict};
}

PolyhedralCone random_cone(int ambient_dim, int n_rays, std::uint64_t seed,
                           bool inject_lineality) {
    if (ambient_dim < 1 || ambient_dim > 8)
        throw std::invalid_argument("random_cone: ambient_dim must be in [1, 8]");
    if (n_rays < 0 || n_rays > 16)
        throw std::invalid_argument("random_cone: n_rays must be in [0, 16]");
    Xorshift64Star rng(seed);
    auto draw_unit = [&]() {
        for (;;) {
            Vector v(ambient_dim);
            for (int i = 0; i < ambient_dim; ++i) v[i] = rng.next_gaussian();
            if (norm(v) > 1e-6) return normalized(v);
        }
    };
    std::vector<Vector> rays;
    rays.reserve(static_cast<std::size_t>(n_rays));
    for (int k = 0; k < n_rays; ++k) rays.push_back(draw_unit());
    if (inject_lineality) {
        const Subspace lin(ambient_dim, {draw_unit()});
        return PolyhedralCone::from_rays(ambient_dim, rays, lin);
    }
    return PolyhedralCone::from_rays(ambient_dim, rays);
}

} // namespace conekit
