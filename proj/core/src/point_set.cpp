#include "subeuclid/point_set.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "subeuclid/rng.hpp"

namespace subeuclid {

PointSet::PointSet(int dim, std::vector<double> coords,
                   std::optional<std::uint64_t> seed)
    : dim_(dim), coords_(std::move(coords)), seed_(seed) {
  if (dim_ < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
  if (coords_.size() % dim_ != 0)
    throw std::invalid_argument("PointSet: coordinate count not divisible by dim");
  for (double c : coords_)
    if (!std::isfinite(c))
      throw std::invalid_argument("PointSet: non-finite coordinate");
}

double PointSet::distance(int i, int j) const {
  return point_distance(point(i), point(j));
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double point_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

PointSet generate_uniform(int n, int d, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("generate_uniform: n must be >= 0");
  if (d < 1) throw std::invalid_argument("generate_uniform: d must be >= 1");
  Rng rng(seed);
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n) * d);
  std::set<std::vector<double>> seen;
  std::vector<double> pt(d);
  for (int i = 0; i < n; ++i) {
    for (;;) {
      for (int k = 0; k < d; ++k) pt[k] = rng.uniform01();
      if (seen.insert(pt).second) break;
    }
    coords.insert(coords.end(), pt.begin(), pt.end());
  }
  return PointSet(d, std::move(coords), seed);
}

PointSet scale(const PointSet& ps, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("scale: factor must be > 0");
  std::vector<double> coords = ps.coords();
  for (double& c : coords) c *= factor;
  return PointSet(ps.dim(), std::move(coords), ps.seed());
}

double edge_length(const PointSet& ps, Edge e) {
  const int n = ps.size();
  if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
    throw std::out_of_range("edge_length: vertex index out of range");
  return ps.distance(e.u, e.v);
}

double structure_length(const PointSet& ps, std::span<const Edge> edges) {
  double total = 0;
  for (const Edge& e : edges) total += edge_length(ps, e);
  return total;
}

}  // namespace subeuclid
