#include "subeuclid/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace subeuclid {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string point_set_to_json(const PointSet& ps) {
  std::ostringstream out;
  out << "{\"dim\": " << ps.dim();
  if (ps.seed()) out << ", \"seed\": " << *ps.seed();
  out << ", \"points\": [";
  for (int i = 0; i < ps.size(); ++i) {
    if (i) out << ", ";
    out << "[";
    for (int k = 0; k < ps.dim(); ++k) {
      if (k) out << ", ";
      out << format_double(ps.coord(i, k));
    }
    out << "]";
  }
  out << "]}";
  return out.str();
}

PointSet point_set_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  const int dim = j.at("dim").get<int>();
  std::optional<std::uint64_t> seed;
  if (j.contains("seed") && !j["seed"].is_null())
    seed = j["seed"].get<std::uint64_t>();
  std::vector<double> coords;
  for (const auto& pt : j.at("points")) {
    if (static_cast<int>(pt.size()) != dim)
      throw std::invalid_argument("point arity does not match dim");
    for (const auto& c : pt) coords.push_back(c.get<double>());
  }
  return PointSet(dim, std::move(coords), seed);
}

std::string fractional_to_json(const FractionalSolution& sol) {
  std::ostringstream out;
  out << "{\"n\": " << sol.n << ", \"edges\": [";
  bool first = true;
  for (const auto& [e, w] : sol.weights) {
    if (!first) out << ", ";
    first = false;
    out << "[" << e.u << ", " << e.v << ", " << format_double(w) << "]";
  }
  out << "]}";
  return out.str();
}

FractionalSolution fractional_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  FractionalSolution sol;
  sol.n = j.at("n").get<int>();
  for (const auto& row : j.at("edges")) {
    if (row.size() != 3) throw std::invalid_argument("edge row must be [u,v,w]");
    sol.set(make_edge(row[0].get<int>(), row[1].get<int>()), row[2].get<double>());
  }
  return sol;
}

std::string edges_to_json(const std::vector<Edge>& edges) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out << ", ";
    out << "[" << edges[i].u << ", " << edges[i].v << "]";
  }
  out << "]";
  return out.str();
}

std::vector<Edge> edges_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  const auto& arr = j.is_array() ? j : j.at("edges");
  std::vector<Edge> edges;
  for (const auto& row : arr) {
    if (row.size() != 2) throw std::invalid_argument("edge row must be [u,v]");
    edges.push_back(make_edge(row[0].get<int>(), row[1].get<int>()));
  }
  return edges;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace subeuclid
