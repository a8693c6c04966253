#pragma once

#include "isowreath/discrete.hpp"
#include "isowreath/fields.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace isowreath {

// Grid sampling of surfaces as nets, for export.
QuadNet net_from_height(const Field& f, const Grid2& g);
QuadNet net_from_param(const ParamSurface& s, const Grid2& g);

// Quads as two triangles each, coordinates with %.17g. The quad indices
// (0-based, one [a, b, c, d] per face) go to path + ".quads.json".
void write_obj(const std::string& path, const QuadNet& n);

nlohmann::json net_to_json(const QuadNet& n);
QuadNet net_from_json(const nlohmann::json& j);
void write_net_json(const std::string& path, const QuadNet& n);
QuadNet read_net_json(const std::string& path);

// First line: u0,v0,hu,hv,nu,nv. Then nv rows of nu values.
void write_csv(const std::string& path, const Grid2& g, const std::vector<double>& values);
std::pair<Grid2, std::vector<double>> read_csv(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

} // namespace isowreath
