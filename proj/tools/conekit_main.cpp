#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "conekit/cone.hpp"
#include "conekit/errors.hpp"
#include "conekit/fixtures.hpp"
#include "conekit/projection.hpp"
#include "conekit/setfile.hpp"
#include "conekit/theorems.hpp"

namespace ck = conekit;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ck::Vector parse_point(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> coords;
    double v = 0.0;
    while (in >> v) coords.push_back(v);
    if (!in.eof()) throw std::runtime_error("cannot parse point: '" + text + "'");
    if (coords.empty()) throw std::runtime_error("point needs at least one coordinate");
    return ck::Vector(std::move(coords));
}

std::string opt_bool_text(const std::optional<bool>& b) {
    if (!b) return "none";
    return *b ? "true" : "false";
}

std::string hrep_block(const ck::PolyhedralCone& c) {
    std::string out = "set cone_halfspaces\n";
    for (const ck::Vector& n : c.facet_normals()) out += "normal " + ck::format_vector(n) + "\n";
    for (const ck::Vector& m : c.equality_normals().basis())
        out += "equality " + ck::format_vector(m) + "\n";
    out += "end\n";
    return out;
}

const ck::ConvexSet& only_set(const ck::SetFile& sf) {
    if (sf.sets.size() != 1)
        throw ck::ParseError(1, 1, "this command needs a document with exactly one set");
    return sf.sets.front();
}

const ck::PolyhedralCone& require_cone(const ck::ConvexSet& s, const char* what) {
    if (!s.is_cone()) throw ck::HypothesisViolated(std::string(what) + " needs a cone set");
    return s.as_cone();
}

int cmd_polar(const std::string& file) {
    const ck::SetFile sf = ck::parse_set_file(read_file(file));
    const ck::PolyhedralCone& c = require_cone(only_set(sf), "polar");
    const ck::PolyhedralCone p = ck::polar(c);
    std::cout << "dim " << p.ambient_dim() << "\n";
    std::cout << ck::serialize_set(ck::ConvexSet(p));
    std::cout << hrep_block(p);
    return 0;
}

int cmd_project(const std::string& file, const std::string& point) {
    const ck::SetFile sf = ck::parse_set_file(read_file(file));
    const ck::ConvexSet& s = only_set(sf);
    const ck::Vector u = parse_point(point);
    if (u.dim() != s.ambient_dim())
        throw ck::DimensionMismatch("point has dimension " + std::to_string(u.dim()) +
                                    ", set lives in dimension " +
                                    std::to_string(s.ambient_dim()));
    const ck::Vector p = ck::project(s, u);
    std::cout << "point: " << ck::format_vector(u) << "\n";
    std::cout << "projection: " << ck::format_vector(p) << "\n";
    std::cout << "distance: " << ck::format_number(ck::distance(u, p)) << "\n";
    return 0;
}

int cmd_decompose(const std::string& file, const std::string& point) {
    const ck::SetFile sf = ck::parse_set_file(read_file(file));
    const ck::PolyhedralCone& c = require_cone(only_set(sf), "decompose");
    const ck::Vector u = parse_point(point);
    if (u.dim() != c.ambient_dim())
        throw ck::DimensionMismatch("point has dimension " + std::to_string(u.dim()) +
                                    ", cone lives in dimension " +
                                    std::to_string(c.ambient_dim()));
    const ck::MoreauDecomposition md = ck::moreau_decompose(c, u);
    std::cout << "u: " << ck::format_vector(md.u) << "\n";
    std::cout << "y: " << ck::format_vector(md.y) << "\n";
    std::cout << "z: " << ck::format_vector(md.z) << "\n";
    std::cout << "residual_sum: " << ck::format_number(md.residual_sum) << "\n";
    std::cout << "residual_orth: " << ck::format_number(md.residual_orth) << "\n";
    return 0;
}

int cmd_check(const std::string& file, int theorem, long samples, std::uint64_t seed) {
    const ck::SetFile sf = ck::parse_set_file(read_file(file));
    if (sf.sets.size() != 2)
        throw ck::ParseError(1, 1, "check needs a document with two sets");
    const ck::ConvexSet& e = sf.sets[0];
    const ck::ConvexSet& f = sf.sets[1];
    ck::Sampler sampler = ck::make_pair_sampler(e, f, seed);
    ck::SearchBudget budget;
    budget.seed = seed;
    ck::PairVerdict v;
    switch (theorem) {
    case 2: v = ck::check_decomposition_pair(e, f, sampler, samples); break;
    case 3: v = ck::check_orthogonal_projection_pair(e, f, sampler, samples); break;
    case 4: v = ck::check_unique_orthogonal_sum_pair(e, f, sampler, samples, budget); break;
    case 5: v = ck::check_unique_sum_pair(e, f, sampler, samples, budget); break;
    default: throw std::runtime_error("unsupported theorem id");
    }
    std::cout << "theorem: " << theorem << "\n";
    std::cout << "property_holds: " << (v.property_holds ? "true" : "false") << "\n";
    std::cout << "samples_tested: " << v.samples_tested << "\n";
    std::cout << "classified_polar_pair: " << opt_bool_text(v.classified_polar_pair) << "\n";
    if (v.witness) {
        std::cout << "witness: " << ck::format_vector(*v.witness) << "\n";
        std::cout << "witness_detail: " << ck::witness_detail_name(v.witness_detail) << "\n";
        if (theorem == 4) {
            const auto sols = ck::find_orthogonal_decompositions(e, f, *v.witness, budget);
            for (const auto& s : sols) {
                std::cout << "decomposition_y: " << ck::format_vector(s.y) << "\n";
                std::cout << "decomposition_z: " << ck::format_vector(s.z) << "\n";
            }
        }
    }
    return v.property_holds ? 0 : 2;
}

int cmd_separate(const std::string& file) {
    const ck::SetFile sf = ck::parse_set_file(read_file(file));
    if (sf.sets.size() != 2)
        throw ck::ParseError(1, 1, "separate needs a document with two sets (cone, then face)");
    const ck::PolyhedralCone& c = require_cone(sf.sets[0], "separate");
    const ck::PolyhedralCone& b = require_cone(sf.sets[1], "separate");
    const ck::SeparationResult r = ck::separate_face(c, b);
    std::cout << "separating_normal: " << ck::format_vector(r.e) << "\n";
    std::cout << "hyperplane_rank: " << r.s.rank() << "\n";
    std::cout << "contains_b: " << (r.contains_b ? "true" : "false") << "\n";
    std::cout << "strict_sides: " << (r.strict_sides ? "true" : "false") << "\n";
    std::cout << "complement:\n";
    std::cout << ck::serialize_set(ck::ConvexSet(r.d));
    return 0;
}

int cmd_fixtures(bool list, const std::string& run_name, long samples, std::uint64_t seed) {
    if (list) {
        for (const ck::Fixture& fx : ck::fixtures())
            std::cout << fx.name << " [theorem " << fx.theorem << "] " << fx.description << "\n";
        return 0;
    }
    const ck::Fixture& fx = ck::fixture_by_name(run_name);
    const ck::FixtureOutcome out = ck::run_fixture(fx, samples, seed);
    std::cout << "name: " << fx.name << "\n";
    std::cout << "theorem: " << fx.theorem << "\n";
    std::cout << out.detail_text;
    return out.matches_expectation ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex cone toolkit: polars, projections, decompositions, pair checks, separations"};
    app.require_subcommand(1);

    std::string file;
    std::string point;
    int theorem = 2;
    long samples = 200;
    long fixture_samples = 60;
    std::uint64_t seed = 0;
    bool list = false;
    std::string run_name;

    CLI::App* polar_cmd =
        app.add_subcommand("polar", "polar of the cone in FILE, printed in both representations");
    polar_cmd->add_option("file", file, "set-description file")->required();

    CLI::App* project_cmd =
        app.add_subcommand("project", "metric projection of a point onto the set in FILE");
    project_cmd->add_option("file", file, "set-description file")->required();
    project_cmd->add_option("--point", point, "coordinates, e.g. \"-1 2\"")->required();

    CLI::App* decompose_cmd =
        app.add_subcommand("decompose", "orthogonal cone decomposition of a point against FILE");
    decompose_cmd->add_option("file", file, "set-description file")->required();
    decompose_cmd->add_option("--point", point, "coordinates, e.g. \"-1 2\"")->required();

    CLI::App* check_cmd =
        app.add_subcommand("check", "run a pair checker over the two sets in FILE");
    check_cmd->add_option("file", file, "set-description file with two sets")->required();
    check_cmd->add_option("--theorem", theorem, "property family: 2, 3, 4 or 5")
        ->required()
        ->check(CLI::Range(2, 5));
    check_cmd->add_option("--samples", samples, "sample budget")->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", seed, "sampler seed");

    CLI::App* separate_cmd = app.add_subcommand(
        "separate", "hyperplane through a face separating the cone from the complement cone");
    separate_cmd->add_option("file", file, "set-description file with cone then face")->required();

    CLI::App* fixtures_cmd =
        app.add_subcommand("fixtures", "list or run the bundled scenario catalog");
    CLI::Option* list_flag = fixtures_cmd->add_flag("--list", list, "print the catalog");
    CLI::Option* run_opt = fixtures_cmd->add_option("--run", run_name, "run one fixture by name");
    list_flag->excludes(run_opt);
    run_opt->excludes(list_flag);
    fixtures_cmd->add_option("--samples", fixture_samples, "sample budget")
        ->check(CLI::PositiveNumber);
    fixtures_cmd->add_option("--seed", seed, "sampler seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (polar_cmd->parsed()) return cmd_polar(file);
        if (project_cmd->parsed()) return cmd_project(file, point);
        if (decompose_cmd->parsed()) return cmd_decompose(file, point);
        if (check_cmd->parsed()) return cmd_check(file, theorem, samples, seed);
        if (separate_cmd->parsed()) return cmd_separate(file);
        if (fixtures_cmd->parsed()) {
            if (!list && run_name.empty()) {
                std::cerr << "fixtures: pass --list or --run NAME\n";
                return 1;
            }
            return cmd_fixtures(list, run_name, fixture_samples, seed);
        }
    } catch (const ck::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 64;
    } catch (const ck::HypothesisViolated& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 66;
    } catch (const ck::SeparationNotFound& e) {
        std::cerr << "separation not found: " << e.what() << "\n";
        return 70;
    } catch (const ck::DimensionMismatch& e) {
        std::cerr << "dimension mismatch: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
