// Acceptance gate: ten pass/fail lines, exit 0 only when all criteria hold.
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "conekit/cone.hpp"
#include "conekit/errors.hpp"
#include "conekit/fixtures.hpp"
#include "conekit/linalg.hpp"
#include "conekit/projection.hpp"
#include "conekit/setfile.hpp"
#include "conekit/theorems.hpp"

using namespace conekit;

namespace {

bool g_all_pass = true;

void report(int id, bool ok, const std::string& label, const std::string& note = "") {
    g_all_pass = g_all_pass && ok;
    std::string line = (ok ? "PASS" : "FAIL");
    line += " criterion " + std::to_string(id) + ": " + label;
    if (!ok && !note.empty()) line += " (" + note + ")";
    std::puts(line.c_str());
}

// independent route for plane decompositions: dense Gaussian elimination
// with partial pivoting on the direction-basis system
std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            for (int k = col; k < n; ++k) a[r][k] -= m * a[col][k];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < n; ++k) s -= a[r][k] * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(r)] = s / a[r][r];
    }
    return x;
}

// nudge the first ray of a cone off its place; returns nullopt when the
// perturbed generator set still describes the same cone
std::optional<PolyhedralCone> perturb_first_ray(const PolyhedralCone& d, double angle) {
    if (d.rays().empty()) return std::nullopt;
    const int n = d.ambient_dim();
    const Vector r0 = d.rays().front();
    for (int axis = 0; axis < n; ++axis) {
        Vector w = unit_vector(n, axis);
        Vector perp = w - dot(w, r0) * r0;
        if (norm(perp) < 1e-6) continue;
        perp = normalized(perp);
        Vector rotated = std::cos(angle) * r0 + std::sin(angle) * perp;
        std::vector<Vector> rays = d.rays();
        rays[0] = rotated;
        try {
            PolyhedralCone out = PolyhedralCone::from_rays(n, rays, d.lineality_basis());
            if (!cones_equal(out, d, 1e-6)) return out;
        } catch (const std::exception&) {
            continue;
        }
    }
    return std::nullopt;
}

struct CliResult {
    std::string output;
    int code = -1;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CONEKIT_CLI_PATH) + " " + args + " 2>&1";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

PolyhedralCone pointed_random_cone(int dim, int n_rays, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    std::vector<Vector> rays;
    while (static_cast<int>(rays.size()) < n_rays) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rng.next_gaussian();
        if (norm(v) < 1e-6) continue;
        if (v[0] < 0.0) v *= -1.0;
        if (std::abs(v[0]) < 0.05 * norm(v)) continue; // keep a clean pointing margin
        rays.push_back(normalized(v));
    }
    return PolyhedralCone::from_rays(dim, rays);
}

// ---- criteria ----

void criterion_1() {
    bool ok = true;
    std::string note;
    int idx = 0;
    for (int n = 2; n <= 6 && ok; ++n) {
        for (int i = 0; i < 40 && ok; ++i, ++idx) {
            const auto c = random_cone(n, 2 + (idx % 7), 1000 + idx, idx % 3 == 0);
            Sampler sampler(n, 50000 + idx);
            const Vector u = sampler.next();
            const auto d = moreau_decompose(c, u);
            if (d.residual_sum > 1e-7 * (1.0 + norm(u)) ||
                d.residual_orth > 1e-7 * (1.0 + dot(u, u))) {
                ok = false;
                note = "instance " + std::to_string(idx) + " dim " + std::to_string(n);
            }
        }
    }
    report(1, ok, "split u = y + z with y orthogonal to z on 200 random cone/point draws", note);
}

void criterion_2() {
    bool ok = true;
    std::string note;
    for (int i = 0; i < 100 && ok; ++i) {
        const int n = 1 + (i % 8);
        const auto c = random_cone(n, i % 11, 2000 + i, i % 3 == 1);
        if (!cones_equal(polar(polar(c)), c, 1e-8)) {
            ok = false;
            note = "cone " + std::to_string(i);
        }
    }
    report(2, ok, "double polar returns the original cone on 100 random cones", note);
}

void criterion_3() {
    bool ok = true;
    std::string note;
    for (int i = 0; i < 100 && ok; ++i) {
        const int n = 1 + (i % 8);
        const auto c = random_cone(n, i % 11, 3000 + i, i % 4 == 2);
        if (!subspaces_equal(span_of(polar(c)), orthogonal_complement(lineality_space(c)),
                             1e-9)) {
            ok = false;
            note = "cone " + std::to_string(i);
        }
    }
    report(3, ok, "span of the polar equals the orthogonal complement of the lineality space",
           note);
}

void criterion_4() {
    bool ok = true;
    std::string note;
    int made = 0;
    std::uint64_t seed = 4000;
    while (made < 50 && ok) {
        ++seed;
        const int n = 2 + (made % 4);
        const auto c = random_cone(n, 2 + (made % 4), seed);
        const auto d = polar(c);
        const auto perturbed = perturb_first_ray(d, 0.2);
        if (!perturbed) continue; // polar had no rays to displace
        ++made;

        ConvexSet e(c), f(d), f_bad(*perturbed);
        Sampler s_ok = make_pair_sampler(e, f, 100 + seed);
        const auto good = check_decomposition_pair(e, f, s_ok, 200);
        if (!good.property_holds || good.classified_polar_pair != std::optional<bool>(true)) {
            ok = false;
            note = "polar pair " + std::to_string(made) + " misjudged";
            break;
        }
        Sampler s_bad = make_pair_sampler(e, f_bad, 100 + seed);
        const auto bad = check_decomposition_pair(e, f_bad, s_bad, 500);
        if (bad.property_holds || !bad.witness.has_value() || bad.samples_tested > 500 ||
            bad.classified_polar_pair != std::optional<bool>(false)) {
            ok = false;
            note = "perturbed pair " + std::to_string(made) + " not refuted";
        }
    }
    report(4, ok,
           "50 polar pairs pass and 50 perturbed pairs are refuted with matching exact "
           "classification",
           note);
}

void criterion_5() {
    const auto open_q = run_fixture(fixture_by_name("remark2_open_quadrants"));
    const auto segments = run_fixture(fixture_by_name("remark3_axis_intervals"));
    const bool ok_open = open_q.matches_expectation && open_q.verdict.property_holds &&
                         open_q.verdict.classified_polar_pair == std::optional<bool>(false);
    const bool ok_seg = segments.matches_expectation && !segments.verdict.property_holds &&
                        segments.verdict.witness_detail == WitnessDetail::SumMismatch;
    report(5, ok_open && ok_seg,
           "open-quadrant closures pass the sum conditions without being polar; bounded "
           "segments fail with SUM_MISMATCH",
           ok_open ? "segment fixture mismatch" : "open-quadrant fixture mismatch");
}

void criterion_6() {
    const Fixture& remark4 = fixture_by_name("remark4_halfplanes");
    const ConvexSet& e = *remark4.e;
    const ConvexSet& f = *remark4.f;
    bool ok = true;
    std::string note;

    // analytic family at u = (1, 0): y = (s, a) with a^2 = s(1-s); the two
    // named members below are exact and must be reproduced by the search
    const Vector u0{1.0, 0.0};
    auto sols0 = find_orthogonal_decompositions(e, f, u0);
    if (sols0.size() < 2) {
        ok = false;
        note = "family at (1,0) missing";
    }
    for (const auto& d : sols0) {
        if (std::abs(d.y[1] * d.y[1] - d.y[0] * (1.0 - d.y[0])) > 1e-5) {
            ok = false;
            note = "solution off the analytic family";
        }
    }
    const Vector y_half{0.5, 0.5};
    const Vector z_half = u0 - y_half;
    if (std::abs(dot(y_half, z_half)) > 1e-15 || !set_contains(e, y_half, 1e-12) ||
        !set_contains(f, z_half, 1e-12)) {
        ok = false;
        note = "analytic family member rejected";
    }

    Sampler sampler(2, 600, {}, 4.0);
    int tested = 1; // u0 above
    while (tested < 20 && ok) {
        const Vector u = sampler.next();
        if (std::abs(u[0]) < 0.5) continue; // family degenerates on the vertical axis
        ++tested;
        if (find_orthogonal_decompositions(e, f, u).size() < 2) {
            ok = false;
            note = "expected a second decomposition at a sampled point";
        }
    }

    const char* polar_fixtures[] = {"polar_orthants_r2", "polar_halfplane_ray",
                                    "polar_planar_wedge_r3"};
    for (const char* name : polar_fixtures) {
        if (!ok) break;
        const Fixture& fx = fixture_by_name(name);
        Sampler s = make_pair_sampler(*fx.e, *fx.f, 601);
        for (int i = 0; i < 20; ++i) {
            const auto sols = find_orthogonal_decompositions(*fx.e, *fx.f, s.next());
            if (sols.size() != 1) {
                ok = false;
                note = std::string("polar pair ") + name + " not unique";
                break;
            }
        }
    }
    report(6, ok,
           "opposite halfplanes admit the a^2 = s(1-s) decomposition family while polar pairs "
           "decompose uniquely",
           note);
}

void criterion_7() {
    bool ok = true;
    std::string note;
    Xorshift64Star rng(7000);
    int made = 0;
    while (made < 20 && ok) {
        const int n = 2 + (made % 4);
        const int k = 1 + (made % (n - 1));
        auto draw = [&](int dim) {
            Vector v(dim);
            for (int i = 0; i < dim; ++i) v[i] = rng.next_gaussian();
            return v;
        };
        std::vector<Vector> de, df;
        for (int i = 0; i < k; ++i) de.push_back(draw(n));
        for (int i = 0; i < n - k; ++i) df.push_back(draw(n));
        const Subspace se = orthonormal_basis(de, n);
        const Subspace sf = orthonormal_basis(df, n);
        if (se.rank() != k || sf.rank() != n - k || subspace_sum(se, sf).rank() != n) continue;
        ++made;
        const PlaneSet pe{draw(n), se};
        const PlaneSet pf{draw(n), sf};
        ConvexSet e(pe), f(pf);

        Sampler sampler(n, 7100 + made);
        for (int t = 0; t < 5 && ok; ++t) {
            const Vector u = sampler.next();
            if (unique_sum_violation_at(e, f, u).has_value()) {
                ok = false;
                note = "unexpected violation on pair " + std::to_string(made);
                break;
            }
            const auto y = plane_pair_representation(pe, pf, u);
            if (!y) {
                ok = false;
                note = "missing representation on pair " + std::to_string(made);
                break;
            }
            // independent route: solve the direction-basis system directly
            std::vector<Vector> cols;
            for (const Vector& bv : se.basis()) cols.push_back(bv);
            for (const Vector& bv : sf.basis()) cols.push_back(bv);
            const Vector rhs = u - pe.point - pf.point;
            std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                               std::vector<double>(static_cast<std::size_t>(n)));
            std::vector<double> b(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r) {
                for (int cidx = 0; cidx < n; ++cidx) a[r][cidx] = cols[cidx][r];
                b[r] = rhs[r];
            }
            const auto coef = gauss_solve(a, b);
            Vector y_direct = pe.point;
            for (int j = 0; j < k; ++j) y_direct += coef[static_cast<std::size_t>(j)] * se.basis()[static_cast<std::size_t>(j)];
            if (distance(*y, y_direct) > 1e-8) {
                ok = false;
                note = "representation disagrees with the direct solve";
                break;
            }
        }
        if (!ok) break;
        Sampler s2 = make_pair_sampler(e, f, 7200 + made);
        const auto verdict = check_unique_sum_pair(e, f, s2, 30);
        if (!verdict.property_holds ||
            verdict.classified_polar_pair != std::optional<bool>(true)) {
            ok = false;
            note = "checker verdict wrong on pair " + std::to_string(made);
        }
    }

    const auto parabola = run_fixture(fixture_by_name("remark5_parabola_line"));
    const bool fixture_ok = parabola.matches_expectation && parabola.verdict.property_holds &&
                            parabola.verdict.classified_polar_pair == std::optional<bool>(false);
    if (!fixture_ok) note = "parabola/line fixture mismatch";
    report(7, ok && fixture_ok,
           "complementary planes decompose uniquely and match a direct linear solve; the "
           "parabola/line pair has unique sums without complementary planes",
           note);
}

void criterion_8() {
    bool ok = true;
    std::string note;
    int made = 0;
    std::uint64_t seed = 8000;
    while (made < 50 && ok) {
        ++seed;
        const int n = 2 + (made % 5);
        const auto c = pointed_random_cone(n, n + (made % 3), seed);
        if (c.rays().size() < 2 || !c.lineality_basis().is_trivial()) continue;
        const auto b = PolyhedralCone::from_rays(
            n, {c.rays()[static_cast<std::size_t>(made) % c.rays().size()]});
        ++made;
        try {
            const auto r = separate_face(c, b);
            if (!r.contains_b || !r.strict_sides || r.s.rank() != n - 1) {
                ok = false;
                note = "weak certificate on instance " + std::to_string(made);
            }
        } catch (const std::exception& ex) {
            ok = false;
            note = std::string("separation failed: ") + ex.what();
        }
    }

    // planar-cone fixture: complement and its H-rep, plus the certificate
    // normal leaves the polar cone on both sides of the hyperplane
    const auto c3 = PolyhedralCone::from_rays(
        3, {normalized(Vector{3.0, 1.0, 0.0}), normalized(Vector{3.0, -1.0, 0.0})});
    const auto b3 = PolyhedralCone::from_rays(3, {normalized(Vector{3.0, 1.0, 0.0})});
    const auto expected_d = PolyhedralCone::from_rays(
        3, {normalized(Vector{-1.0, 3.0, 0.0})}, Subspace(3, {Vector{0.0, 0.0, 1.0}}));
    try {
        const auto r = separate_face(c3, b3);
        if (!cones_equal(r.d, expected_d, 1e-9)) {
            ok = false;
            note = "complement cone mismatch";
        }
        if (!subspaces_equal(r.d.equality_normals(),
                             Subspace(3, {normalized(Vector{3.0, 1.0, 0.0})}), 1e-9) ||
            r.d.facet_normals().size() != 1 ||
            distance(r.d.facet_normals()[0], normalized(Vector{1.0, -3.0, 0.0})) > 1e-9) {
            ok = false;
            note = "complement H-rep mismatch";
        }
        // the hyperplane cannot separate the cone from its full polar: some
        // polar generator sits strictly on the cone's side
        const auto cp = polar(c3);
        bool polar_crosses = false;
        for (const Vector& g : cp.rays()) polar_crosses = polar_crosses || dot(g, r.e) < -1e-9;
        if (!polar_crosses) {
            ok = false;
            note = "polar cone unexpectedly separated";
        }
    } catch (const std::exception& ex) {
        ok = false;
        note = std::string("fixture separation failed: ") + ex.what();
    }
    report(8, ok,
           "boundary-ray separation yields a carrying hyperplane with strict sides on 50 random "
           "pointed cones and the planar-cone example",
           note);
}

void criterion_9() {
    double max_gap = 0.0;
    auto probe = [&max_gap](const ConvexSet& s, const Vector& u) {
        const Vector fast = project(s, u);
        const Vector slow = project_oracle(s, u).point;
        max_gap = std::max(max_gap, distance(fast, slow));
    };
    for (const Fixture& fx : fixtures()) {
        std::vector<ConvexSet> sets;
        if (fx.e) sets.push_back(*fx.e);
        if (fx.f) sets.push_back(*fx.f);
        if (fx.cone_c) sets.push_back(ConvexSet(*fx.cone_c));
        if (fx.expected_d) sets.push_back(ConvexSet(*fx.expected_d));
        for (const ConvexSet& s : sets) {
            Sampler sampler(s.ambient_dim(), 9000);
            for (int i = 0; i < 6; ++i) probe(s, sampler.next());
        }
    }
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + (i % 5);
        const auto c = random_cone(n, 2 + (i % 6), 9100 + i, i % 4 == 0);
        Sampler sampler(n, 9200 + i);
        probe(ConvexSet(c), sampler.next());
    }
    report(9, max_gap <= 1e-5,
           "independent slow projection agrees with the fast one to 1e-5 across fixtures and "
           "100 random cones",
           "max gap " + format_number(max_gap));
}

void criterion_10() {
    const auto dir = std::filesystem::temp_directory_path() / "conekit_acceptance";
    std::filesystem::create_directories(dir);
    const auto pair_path = (dir / "pair.txt").string();
    {
        std::ofstream out(pair_path);
        out << "dim 2\nset cone_rays\nray 1 0\nray 0 1\nend\n"
               "set cone_rays\nray -1 0\nray 0 -1\nend\n";
    }
    std::vector<std::string> cmds = {"fixtures --list"};
    for (const Fixture& fx : fixtures()) cmds.push_back("fixtures --run " + fx.name);
    cmds.push_back("polar " + pair_path);
    cmds.push_back("check " + pair_path + " --theorem 2 --seed 5");
    cmds.push_back("decompose " + pair_path + " --point \"-1 2\"");

    auto transcript = [&cmds]() {
        std::string all;
        for (const auto& c : cmds) {
            const auto r = run_cli(c);
            all += "$ " + c + "\n" + r.output + "exit " + std::to_string(r.code) + "\n";
        }
        return all;
    };
    const std::string first = transcript();
    const std::string second = transcript();
    const bool ok = !first.empty() && first == second;
    report(10, ok, "two full command-line sweeps over the fixture catalog emit identical bytes",
           ok ? "" : "transcripts differ");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    return g_all_pass ? 0 : 1;
}
