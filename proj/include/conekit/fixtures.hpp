#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conekit/cone.hpp"
#include "conekit/theorems.hpp"

namespace conekit {

// Nearest point on the planar curve {(x, x*x)}. The critical points of the
// squared distance solve 2x^3 + (1 - 2u_2)x - u_1 = 0; ties go to the
// smaller parameter.
Vector project_parabola(const Vector& u);

struct FixtureExpectation {
    bool property_holds = true;
    WitnessDetail witness_detail = WitnessDetail::None;
    std::optional<bool> classified_polar_pair;
    // for pairs stored as closures of declared-open sets: whether the
    // closure pair should pass the sum-plus-orthogonality conditions
    std::optional<bool> closure_conditions_hold;
};

// A named, self-contained scenario: either a set pair run through one of
// the pair checkers, or a cone/face input run through the separation
// construction.
struct Fixture {
    std::string name;
    std::string description;
    int theorem = 0; // 2, 3, 4, 5 or 6
    std::optional<ConvexSet> e;
    std::optional<ConvexSet> f;
    // the stored sets are closures; the pair under discussion is open, so
    // the polar classification is pinned to false regardless of them
    bool declared_open = false;
    // f is the parabola curve, which no ConvexSet variant carries; the
    // runner uses the exact curve geometry instead
    bool f_is_parabola = false;
    std::optional<PolyhedralCone> cone_c;
    std::optional<PolyhedralCone> face_b;
    std::optional<PolyhedralCone> expected_d;
    FixtureExpectation expected;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture_by_name(const std::string& name); // std::invalid_argument if unknown

struct FixtureOutcome {
    PairVerdict verdict;
    bool matches_expectation = false;
    std::string detail_text; // rendered report, one "key: value" per line
};

FixtureOutcome run_fixture(const Fixture& fx, long n_samples = 60, std::uint64_t seed = 0);

} // namespace conekit
