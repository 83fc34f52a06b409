#pragma once

// JSON encoding of point sets and their coordinates.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "planeset/geometry.hpp"

namespace planeset {

using json = nlohmann::json;

inline json to_json(const SurdPoint& p) { return json{{"x", p.x.str()}, {"y_coeff", p.y.str()}, {"k", p.k}}; }

inline json to_json(const PointSet& s, bool with_coordinates = false, const FactorTable* table = nullptr) {
  json j{{"n", s.matrix.size()},
         {"upper_triangle", s.matrix.upper_row_major()},
         {"characteristic", s.characteristic},
         {"position_class", to_string(s.position_class)},
         {"diameter", s.diameter}};
  if (with_coordinates) {
    json coords = json::array();
    for (const auto& p : embed(s.matrix, table)) coords.push_back(to_json(p));
    j["coordinates"] = std::move(coords);
  }
  return j;
}

/// A point set as read from disk: the matrix plus whatever it claims about
/// itself. Claims are checked separately.
struct PointSetRecord {
  DistanceMatrix matrix;
  std::optional<std::uint64_t> characteristic;
  std::optional<Position> position_class;
  std::optional<Length> diameter;
  std::optional<std::vector<SurdPoint>> coordinates;
};

/// Throws invalid_input on anything that is not a well-formed record.
inline PointSetRecord point_set_from_json(const json& j) {
  if (!j.is_object()) throw invalid_input("point set must be a JSON object");
  PointSetRecord r;
  try {
    const auto n = j.at("n").get<std::size_t>();
    if (n < 3) throw invalid_input("point set needs n >= 3");
    const auto upper = j.at("upper_triangle").get<std::vector<Length>>();
    if (upper.size() != n * (n - 1) / 2)
      throw invalid_input("upper_triangle has " + std::to_string(upper.size()) + " entries, expected " +
                          std::to_string(n * (n - 1) / 2));
    r.matrix = DistanceMatrix::from_upper_row_major(n, upper);
    if (j.contains("characteristic")) r.characteristic = j["characteristic"].get<std::uint64_t>();
    if (j.contains("position_class")) r.position_class = parse_position(j["position_class"].get<std::string>());
    if (j.contains("diameter")) r.diameter = j["diameter"].get<Length>();
    if (j.contains("coordinates")) {
      std::vector<SurdPoint> pts;
      for (const auto& c : j["coordinates"])
        pts.push_back(SurdPoint{Rational::parse(c.at("x").get<std::string>()),
                                Rational::parse(c.at("y_coeff").get<std::string>()), c.at("k").get<std::uint64_t>()});
      if (pts.size() != n) throw invalid_input("coordinates list has the wrong length");
      r.coordinates = std::move(pts);
    }
  } catch (const json::exception& e) {
    throw invalid_input(e.what());
  } catch (const std::invalid_argument& e) {
    throw invalid_input(e.what());
  }
  return r;
}

}  // namespace planeset
