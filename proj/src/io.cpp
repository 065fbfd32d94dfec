#include "sigpath/io.hpp"

#include <fstream>
#include <sstream>

#include "sigpath/error.hpp"

namespace sigpath {

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError("cannot open " + filename);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + " must be a number");
  return j.get<double>();
}

std::vector<double> number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

PiecewiseLinearPath path_from_json(const Json& j) {
  const Json& dim = field(j, "dim");
  if (!dim.is_number_integer()) throw ParseError("\"dim\" must be an integer");
  const Json& points = field(j, "points");
  if (!points.is_array()) throw ParseError("\"points\" must be an array");
  std::vector<PiecewiseLinearPath::Point> pts;
  for (std::size_t i = 0; i < points.size(); ++i) pts.push_back(number_array(points[i], "points[" + std::to_string(i) + "]"));
  return PiecewiseLinearPath(dim.get<int>(), std::move(pts));
}

HeightFunction height_from_json(const Json& j) {
  return HeightFunction(number_array(field(j, "times"), "times"), number_array(field(j, "values"), "values"));
}

Json path_to_json(const PiecewiseLinearPath& p) {
  Json j;
  j["dim"] = p.dim();
  j["points"] = p.points();
  return j;
}

Json height_to_json(const HeightFunction& h) {
  Json j;
  j["times"] = h.times();
  j["values"] = h.values();
  return j;
}

Json tree_to_json(const QuotientTree& t) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : t.vertices) j["vertices"].push_back(Json{{"time", v.time}, {"height", v.height}});
  j["edges"] = Json::array();
  for (const auto& e : t.edges) j["edges"].push_back(Json{{"parent", e.parent}, {"child", e.child}, {"length", e.length}});
  return j;
}

namespace {

Json nest(std::span<const double> flat, int dim, int depth) {
  if (depth == 0) return flat[0];
  Json arr = Json::array();
  const std::size_t block = flat.size() / static_cast<std::size_t>(dim);
  for (int i = 0; i < dim; ++i) arr.push_back(nest(flat.subspan(static_cast<std::size_t>(i) * block, block), dim, depth - 1));
  return arr;
}

}  // namespace

Json tensor_levels_to_json(const TruncatedTensor& s) {
  Json levels = Json::array();
  for (int k = 0; k <= s.depth(); ++k) levels.push_back(nest(s.level(k), s.dim(), k));
  return levels;
}

}  // namespace sigpath
