#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conekit/cone.hpp"
#include "conekit/linalg.hpp"
#include "conekit/projection.hpp"

namespace conekit {

// xorshift64* with a splitmix64-scrambled seed, so seed 0 is usable.
// Gaussians come from Box-Muller on the raw stream; everything is pure
// arithmetic, so equal seeds give bit-identical streams.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed);
    std::uint64_t next_u64();
    double next_uniform(); // [0, 1)
    double next_gaussian();

private:
    std::uint64_t s_;
};

// Deterministic sample stream: the structured points first, then Gaussian
// vectors with typical norm `radius`. Plain value, no hidden state.
class Sampler {
public:
    Sampler(int dim, std::uint64_t seed, std::vector<Vector> structured = {},
            double radius = 4.0);
    Vector next();
    int dim() const { return dim_; }

private:
    int dim_;
    double radius_;
    Xorshift64Star rng_;
    std::vector<Vector> structured_;
    std::size_t at_ = 0;
};

// Sampler preloaded with both sets' landmark points, their pairwise sums
// and differences, and the origin.
Sampler make_pair_sampler(const ConvexSet& e, const ConvexSet& f, std::uint64_t seed);

enum class WitnessDetail { None, SumMismatch, NotOrthogonal, NonUnique, NoRepresentation };
const char* witness_detail_name(WitnessDetail d);

struct PairVerdict {
    bool property_holds = true;
    std::optional<Vector> witness;
    WitnessDetail witness_detail = WitnessDetail::None;
    long samples_tested = 0;
    // exact classification when both sets are cones (polarity) or both are
    // planes (complementarity); absent otherwise
    std::optional<bool> classified_polar_pair;
};

struct SearchBudget {
    int starts = 32;
    int iterations = 200;
    std::uint64_t seed = 0;
};

// Exact classifications. nullopt when the variant pair does not admit the
// exact test.
std::optional<bool> classify_polar_pair(const ConvexSet& e, const ConvexSet& f,
                                        double tol = 1e-8);
std::optional<bool> classify_complementary_planes(const ConvexSet& e, const ConvexSet& f);

// Alternating-projection feasibility of u in e + f.
struct SumFeasibility {
    Vector y;
    Vector z;
    double residual;
};
SumFeasibility solve_sum_feasibility(const ConvexSet& e, const ConvexSet& f, const Vector& u,
                                     int iterations = 1000);

// --- decomposition identity: u == p_e(u) + p_f(u) for all u ---
std::optional<WitnessDetail> decomposition_violation_at(const ConvexSet& e, const ConvexSet& f,
                                                        const Vector& u);
PairVerdict check_decomposition_pair(const ConvexSet& e, const ConvexSet& f, Sampler& sampler,
                                     long n_samples);

// --- sum condition e + f = R^n plus orthogonal projections ---
std::optional<WitnessDetail> orthogonal_projection_violation_at(const ConvexSet& e,
                                                                const ConvexSet& f,
                                                                const Vector& u);
PairVerdict check_orthogonal_projection_pair(const ConvexSet& e, const ConvexSet& f,
                                             Sampler& sampler, long n_samples);

// --- orthogonal decompositions u = y + z, y in e, z in f, y.z = 0 ---
struct OrthogonalDecomposition {
    Vector y;
    Vector z;
};
// Multi-start local search minimizing |y.z| with feasibility enforced by
// projection; returns every solution passing |y.z| <= 1e-7 and
// dist(z, f) <= 1e-7, deduplicated at radius 1e-4. A falsifier: two or
// more entries disprove uniqueness, a single entry does not prove it.
std::vector<OrthogonalDecomposition> find_orthogonal_decompositions(
    const ConvexSet& e, const ConvexSet& f, const Vector& u, const SearchBudget& budget = {});
PairVerdict check_unique_orthogonal_sum_pair(const ConvexSet& e, const ConvexSet& f,
                                             Sampler& sampler, long n_samples,
                                             const SearchBudget& budget = {});

// --- plain unique-sum representations u = y + z (no orthogonality) ---
std::optional<WitnessDetail> unique_sum_violation_at(const ConvexSet& e, const ConvexSet& f,
                                                     const Vector& u,
                                                     const SearchBudget& budget = {});
PairVerdict check_unique_sum_pair(const ConvexSet& e, const ConvexSet& f, Sampler& sampler,
                                  long n_samples, const SearchBudget& budget = {});

// For Plane-Plane pairs: the representation y found by exact affine
// algebra (nullopt when u is not representable).
std::optional<Vector> plane_pair_representation(const PlaneSet& e, const PlaneSet& f,
                                                const Vector& u);

// --- cone-versus-face separation ---

// D = polar(c) intersected with span(b)-perp. Hypotheses checked: c is
// not a subspace, b's generators lie in c, and a relative-interior point
// of b stays out of Rint c (so all of b lies in the relative boundary).
PolyhedralCone orthogonal_face_complement(const PolyhedralCone& c, const PolyhedralCone& b);

struct SeparationResult {
    Vector e;        // unit normal of the separating hyperplane S = e-perp
    Subspace s;      // rank n-1, contains span(b)
    PolyhedralCone d;
    bool contains_b;   // every generator of b lies on S
    bool strict_sides; // rint points of c and d fall in opposite open halfspaces
};
// LP feasibility with strictness margin 1e-7: e.g = 0 on b's generators,
// e.r <= 0 on c's, e.d >= 0 on D's, with the ray sums of c and d pushed
// strictly off the hyperplane. c ends up in {x.e <= 0}.
SeparationResult separate_face(const PolyhedralCone& c, const PolyhedralCone& b);

// Seed-reproducible random cone: n_rays unit Gaussian directions, plus an
// optional one-dimensional lineality injection. 1 <= dim <= 8 and
// 0 <= n_rays <= 16.
PolyhedralCone random_cone(int ambient_dim, int n_rays, std::uint64_t seed,
                           bool inject_lineality = false);

} // namespace conekit
