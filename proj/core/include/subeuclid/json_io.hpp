#pragma once

#include <string>
#include <vector>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

/// Formats a double with 17 significant digits so values round-trip exactly.
std::string format_double(double x);

/// Interchange format used by every CLI command:
///   {"dim": d, "seed": s, "points": [[x1..xd], ...]}
/// `seed` is omitted when absent.
std::string point_set_to_json(const PointSet& ps);
PointSet point_set_from_json(const std::string& text);

/// FractionalSolution format: {"n": n, "edges": [[u, v, w], ...]}.
std::string fractional_to_json(const FractionalSolution& sol);
FractionalSolution fractional_from_json(const std::string& text);

/// Bare edge list: [[u, v], ...].
std::string edges_to_json(const std::vector<Edge>& edges);
std::vector<Edge> edges_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace subeuclid
