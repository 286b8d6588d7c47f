#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "pencil/current.hpp"
#include "pencil/netgraph.hpp"
#include "pencil/pencil.hpp"
#include "pencil/space.hpp"

namespace pencil {

using json = nlohmann::ordered_json;

// Reals carried in reports are rounded to 12 significant digits so emitted
// documents are reproducible; rationals are carried exactly as "num/den".
double round12(double x);
json real(double x);
json rational(const Rat& x);

// Space file schema:
// { "points": [[..],..] | null, "dist_matrix": [[..],..] | null,
//   "weights": [..], "metric": "euclidean" | "matrix" }
// Exactly one of points / dist_matrix is non-null.
Space space_from_json(const json& doc);
json space_to_json(const Space& space);
Space load_space_file(const std::string& path);

// Graph dump: vertices with ids and positions, edges as
// [i, j, capacity_num, capacity_den, length].
json graph_dump(const NetGraph& graph, const Space& space);

// Current dump: list of {x, y, length, weight}; boundary dump: {vertex: atom}.
json current_dump(const DiscreteCurrent& current);
json boundary_dump(const std::map<int, Rat>& atoms);

// Pencil dump: {curves: [{path, weight_num, weight_den, length}], normalized}.
json pencil_dump(const Pencil& pencil);
Pencil pencil_from_json(const json& doc, const Space& space);

json load_json_file(const std::string& path);

// Serializes with a trailing newline and renames into place.
void write_json_atomic(const json& doc, const std::string& path);

} // namespace pencil
