#include "conekit/setfile.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "conekit/errors.hpp"

namespace conekit {

std::string format_number(double x) {
    if (x == 0.0) x = 0.0; // collapse negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::string(buf);
}

std::string format_vector(const Vector& v) {
    std::string out;
    for (int i = 0; i < v.dim(); ++i) {
        if (i) out += ' ';
        out += format_number(v[i]);
    }
    return out;
}

namespace {

struct Token {
    std::string text;
    int column = 0; // 1-based
};

struct Line {
    int number = 0;
    std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        Line ln;
        ln.number = number;
        std::size_t i = 0;
        while (i < raw.size()) {
            const unsigned char c = static_cast<unsigned char>(raw[i]);
            if (c == '#') break;
            if (std::isspace(c)) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])) &&
                   raw[j] != '#')
                ++j;
            ln.tokens.push_back(Token{raw.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
        }
        if (!ln.tokens.empty()) out.push_back(std::move(ln));
    }
    return out;
}

double parse_number(const Line& ln, std::size_t idx) {
    const Token& t = ln.tokens[idx];
    double value = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw ParseError(ln.number, t.column, "expected a number, got '" + t.text + "'");
    if (!std::isfinite(value)) throw ParseError(ln.number, t.column, "number is not finite");
    return value;
}

int parse_integer(const Line& ln, std::size_t idx) {
    const Token& t = ln.tokens[idx];
    int value = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw ParseError(ln.number, t.column, "expected an integer, got '" + t.text + "'");
    return value;
}

Vector parse_coords(const Line& ln, int dim) {
    if (static_cast<int>(ln.tokens.size()) - 1 != dim)
        throw ParseError(ln.number, ln.tokens.front().column,
                         "'" + ln.tokens.front().text + "' needs exactly " + std::to_string(dim) +
                             " coordinates, got " + std::to_string(ln.tokens.size() - 1));
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(dim));
    for (std::size_t i = 1; i < ln.tokens.size(); ++i) c.push_back(parse_number(ln, i));
    return Vector(std::move(c));
}

double parse_scalar(const Line& ln) {
    if (ln.tokens.size() != 2)
        throw ParseError(ln.number, ln.tokens.front().column,
                         "'" + ln.tokens.front().text + "' needs exactly one value");
    return parse_number(ln, 1);
}

using Body = std::vector<const Line*>;

[[noreturn]] void unknown_keyword(const Line& ln, const std::string& kind) {
    throw ParseError(ln.number, ln.tokens.front().column,
                     "unexpected '" + ln.tokens.front().text + "' in a '" + kind + "' block");
}

ConvexSet build_set(const Line& head, const std::string& kind, const Body& body, int dim) {
    try {
        if (kind == "cone_rays" || kind == "shifted_cone") {
            std::vector<Vector> rays;
            std::vector<Vector> lins;
            std::optional<Vector> translation;
            for (const Line* ln : body) {
                const std::string& kw = ln->tokens.front().text;
                if (kw == "ray") {
                    rays.push_back(parse_coords(*ln, dim));
                } else if (kw == "lineality") {
                    lins.push_back(parse_coords(*ln, dim));
                } else if (kw == "translation" && kind == "shifted_cone") {
                    if (translation)
                        throw ParseError(ln->number, ln->tokens.front().column,
                                         "duplicate 'translation'");
                    translation = parse_coords(*ln, dim);
                } else {
                    unknown_keyword(*ln, kind);
                }
            }
            PolyhedralCone cone =
                PolyhedralCone::from_rays(dim, rays, orthonormal_basis(lins, dim));
            if (kind == "cone_rays") return ConvexSet(std::move(cone));
            if (!translation)
                throw ParseError(head.number, head.tokens.front().column,
                                 "shifted_cone needs a 'translation' line");
            return ConvexSet(ShiftedConeSet{std::move(cone), *translation});
        }
        if (kind == "cone_halfspaces") {
            std::vector<Vector> normals;
            std::vector<Vector> eqs;
            for (const Line* ln : body) {
                const std::string& kw = ln->tokens.front().text;
                if (kw == "normal") normals.push_back(parse_coords(*ln, dim));
                else if (kw == "equality") eqs.push_back(parse_coords(*ln, dim));
                else unknown_keyword(*ln, kind);
            }
            return ConvexSet(
                PolyhedralCone::from_halfspaces(dim, normals, orthonormal_basis(eqs, dim)));
        }
        if (kind == "plane") {
            std::optional<Vector> point;
            std::vector<Vector> dirs;
            for (const Line* ln : body) {
                const std::string& kw = ln->tokens.front().text;
                if (kw == "point") {
                    if (point)
                        throw ParseError(ln->number, ln->tokens.front().column,
                                         "duplicate 'point'");
                    point = parse_coords(*ln, dim);
                } else if (kw == "direction") {
                    dirs.push_back(parse_coords(*ln, dim));
                } else {
                    unknown_keyword(*ln, kind);
                }
            }
            if (!point)
                throw ParseError(head.number, head.tokens.front().column,
                                 "plane needs a 'point' line");
            return ConvexSet(PlaneSet{*point, orthonormal_basis(dirs, dim)});
        }
        if (kind == "halfspace") {
            std::optional<Vector> normal;
            std::optional<double> offset;
            for (const Line* ln : body) {
                const std::string& kw = ln->tokens.front().text;
                if (kw == "normal") {
                    if (normal)
                        throw ParseError(ln->number, ln->tokens.front().column,
                                         "duplicate 'normal'");
                    normal = parse_coords(*ln, dim);
                } else if (kw == "offset") {
                    if (offset)
                        throw ParseError(ln->number, ln->tokens.front().column,
                                         "duplicate 'offset'");
                    offset = parse_scalar(*ln);
                } else {
                    unknown_keyword(*ln, kind);
                }
            }
            if (!normal || !offset)
                throw ParseError(head.number, head.tokens.front().column,
                                 "halfspace needs 'normal' and 'offset' lines");
            return ConvexSet(HalfspaceSet{*normal, *offset});
        }
        if (kind == "ball") {
            std::optional<Vector> center;
            std::optional<double> radius;
            for (const Line* ln : body) {
                const std::string& kw = ln->tokens.front().text;
                if (kw == "center") {
                    if (center)
                        throw ParseError(ln->number, ln->tokens.front().column,
                                         "duplicate 'center'");
                    center = parse_coords(*ln, dim);
                } else if (kw == "radius") {
                    if (radius)
                        throw ParseError(ln->number, ln->tokens.front().column,
                                         "duplicate 'radius'");
                    radius = parse_scalar(*ln);
                } else {
                    unknown_keyword(*ln, kind);
                }
            }
            if (!center || !radius)
                throw ParseError(head.number, head.tokens.front().column,
                                 "ball needs 'center' and 'radius' lines");
            return ConvexSet(BallSet{*center, *radius});
        }
        if (kind == "polytope") {
            std::vector<Vector> vertices;
            for (const Line* ln : body) {
                if (ln->tokens.front().text == "vertex") vertices.push_back(parse_coords(*ln, dim));
                else unknown_keyword(*ln, kind);
            }
            if (vertices.empty())
                throw ParseError(head.number, head.tokens.front().column,
                                 "polytope needs at least one 'vertex' line");
            return ConvexSet(PolytopeSet{std::move(vertices)});
        }
        if (kind == "segment") {
            std::optional<Vector> a;
            std::optional<Vector> b;
            for (const Line* ln : body) {
                const std::string& kw = ln->tokens.front().text;
                if (kw == "a") {
                    if (a) throw ParseError(ln->number, ln->tokens.front().column, "duplicate 'a'");
                    a = parse_coords(*ln, dim);
                } else if (kw == "b") {
                    if (b) throw ParseError(ln->number, ln->tokens.front().column, "duplicate 'b'");
                    b = parse_coords(*ln, dim);
                } else {
                    unknown_keyword(*ln, kind);
                }
            }
            if (!a || !b)
                throw ParseError(head.number, head.tokens.front().column,
                                 "segment needs 'a' and 'b' lines");
            return ConvexSet(SegmentSet{*a, *b});
        }
        throw ParseError(head.number, head.tokens[1].column, "unknown set kind '" + kind + "'");
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        // constructor-level validation (radius bounds, degenerate payloads)
        throw ParseError(head.number, head.tokens.front().column, ex.what());
    }
}

void append_vec_lines(std::string& out, const char* kw, const std::vector<Vector>& vs) {
    for (const Vector& v : vs) {
        out += kw;
        out += ' ';
        out += format_vector(v);
        out += '\n';
    }
}

} // namespace

SetFile parse_set_file(const std::string& text) {
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty document; expected 'dim <n>'");
    const Line& dl = lines.front();
    if (dl.tokens.front().text != "dim")
        throw ParseError(dl.number, dl.tokens.front().column, "expected 'dim <n>' first");
    if (dl.tokens.size() != 2)
        throw ParseError(dl.number, dl.tokens.front().column, "'dim' needs exactly one integer");
    const int dim = parse_integer(dl, 1);
    if (dim < 1 || dim > 64)
        throw ParseError(dl.number, dl.tokens[1].column, "dimension must be between 1 and 64");

    SetFile out;
    out.dim = dim;
    std::size_t at = 1;
    while (at < lines.size()) {
        const Line& head = lines[at];
        if (head.tokens.front().text != "set")
            throw ParseError(head.number, head.tokens.front().column, "expected 'set <kind>'");
        if (head.tokens.size() != 2)
            throw ParseError(head.number, head.tokens.front().column,
                             "'set' needs exactly one kind");
        if (out.sets.size() == 2)
            throw ParseError(head.number, head.tokens.front().column,
                             "a document holds at most two sets");
        ++at;
        Body body;
        bool closed = false;
        while (at < lines.size()) {
            const Line& ln = lines[at];
            if (ln.tokens.front().text == "end") {
                if (ln.tokens.size() != 1)
                    throw ParseError(ln.number, ln.tokens[1].column, "'end' takes no arguments");
                ++at;
                closed = true;
                break;
            }
            if (ln.tokens.front().text == "set")
                throw ParseError(ln.number, ln.tokens.front().column,
                                 "missing 'end' before the next set");
            body.push_back(&ln);
            ++at;
        }
        if (!closed)
            throw ParseError(lines.back().number, 1, "missing 'end' at the end of the document");
        out.sets.push_back(build_set(head, head.tokens[1].text, body, dim));
    }
    if (out.sets.empty())
        throw ParseError(dl.number, dl.tokens.front().column, "document declares no set");
    return out;
}

std::string serialize_set(const ConvexSet& s) {
    std::string out;
    std::visit(
        [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PolyhedralCone>) {
                out += "set cone_rays\n";
                append_vec_lines(out, "ray", v.rays());
                append_vec_lines(out, "lineality", v.lineality_basis().basis());
            } else if constexpr (std::is_same_v<T, PlaneSet>) {
                out += "set plane\n";
                out += "point " + format_vector(v.point) + "\n";
                append_vec_lines(out, "direction", v.directions.basis());
            } else if constexpr (std::is_same_v<T, HalfspaceSet>) {
                out += "set halfspace\n";
                out += "normal " + format_vector(v.normal) + "\n";
                out += "offset " + format_number(v.offset) + "\n";
            } else if constexpr (std::is_same_v<T, BallSet>) {
                out += "set ball\n";
                out += "center " + format_vector(v.center) + "\n";
                out += "radius " + format_number(v.radius) + "\n";
            } else if constexpr (std::is_same_v<T, PolytopeSet>) {
                out += "set polytope\n";
                append_vec_lines(out, "vertex", v.vertices);
            } else if constexpr (std::is_same_v<T, SegmentSet>) {
                out += "set segment\n";
                out += "a " + format_vector(v.a) + "\n";
                out += "b " + format_vector(v.b) + "\n";
            } else {
                out += "set shifted_cone\n";
                out += "translation " + format_vector(v.translation) + "\n";
                append_vec_lines(out, "ray", v.cone.rays());
                append_vec_lines(out, "lineality", v.cone.lineality_basis().basis());
            }
        },
        s.storage());
    out += "end\n";
    return out;
}

std::string serialize_set_file(const SetFile& f) {
    std::string out = "dim " + std::to_string(f.dim) + "\n";
    for (const ConvexSet& s : f.sets) out += serialize_set(s);
    return out;
}

} // namespace conekit
