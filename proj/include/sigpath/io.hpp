#pragma once

// JSON forms of paths, height functions, signatures and quotient trees.
//   path:   {"dim": d, "points": [[x1, ..., xd], ...]}
//   height: {"times": [...], "values": [...]}
//   tree:   {"vertices": [{"time", "height"}], "edges": [{"parent", "child", "length"}]}

#include <json.hpp>
#include <string>

#include "sigpath/rtree.hpp"
#include "sigpath/signature.hpp"
#include "sigpath/treelike.hpp"

namespace sigpath {

using Json = nlohmann::ordered_json;

// Malformed documents raise ParseError; well-formed but invalid data raises DomainError.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& filename);

PiecewiseLinearPath path_from_json(const Json& j);
HeightFunction height_from_json(const Json& j);

Json path_to_json(const PiecewiseLinearPath& p);
Json height_to_json(const HeightFunction& h);
Json tree_to_json(const QuotientTree& t);

// Levels as nested arrays: level k is a depth-k array with d entries per axis.
Json tensor_levels_to_json(const TruncatedTensor& s);

}  // namespace sigpath
