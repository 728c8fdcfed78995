#pragma once

#include <string>
#include <vector>

#include "conekit/cone.hpp"

namespace conekit {

// Text format for set descriptions. Line-based and whitespace-tokenized,
// `#` starts a comment, blank lines are skipped:
//
//   dim 3
//   set cone_rays
//   ray 1 0 0
//   ray 0 1 0
//   lineality 0 0 1
//   end
//
// A document declares the ambient dimension once, then one or two set
// blocks. Kinds and their payload lines:
//   cone_rays        ray*       lineality*
//   cone_halfspaces  normal*    equality*
//   plane            point      direction*
//   halfspace        normal     offset <v>
//   ball             center     radius <v>
//   polytope         vertex+
//   segment          a  b
//   shifted_cone     translation  ray*  lineality*
// Every starred line carries exactly `dim` coordinates. Parsing failures
// carry 1-based line/column positions. Serialization is canonical
// (stored generators, 12 significant digits), and serialize(parse(text))
// reparses to an equal set.

struct SetFile {
    int dim = 0;
    std::vector<ConvexSet> sets;
};

SetFile parse_set_file(const std::string& text);

std::string serialize_set(const ConvexSet& s);
std::string serialize_set_file(const SetFile& f);

// Canonical numeric rendering used across the library: printf "%.12g"
// with negative zero collapsed.
std::string format_number(double x);
// Space-separated coordinates.
std::string format_vector(const Vector& v);

} // namespace conekit
