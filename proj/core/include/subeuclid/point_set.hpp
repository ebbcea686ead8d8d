#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace subeuclid {

/// Undirected edge between vertex indices, normalized to u < v so equality
/// and ordering are well defined.
struct Edge {
  int u = 0;
  int v = 0;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Finite point set in R^d. Point i occupies coords[i*dim .. (i+1)*dim).
/// Indices 0..n-1 are the canonical vertex identities used by every edge
/// structure. Instances are immutable by convention once built.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::vector<double> coords,
           std::optional<std::uint64_t> seed = std::nullopt);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(coords_.size()) / dim_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const std::vector<double>& coords() const { return coords_; }

  std::span<const double> point(int i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * dim_,
            static_cast<std::size_t>(dim_)};
  }

  double coord(int i, int axis) const {
    return coords_[static_cast<std::size_t>(i) * dim_ + axis];
  }

  double distance(int i, int j) const;

 private:
  int dim_ = 2;
  std::vector<double> coords_;
  std::optional<std::uint64_t> seed_;
};

/// n i.i.d.-uniform points in [0,1)^d from the seeded stream. Identical
/// seeds give bit-identical output. Exact duplicate points (probability ~0)
/// are redrawn from the same stream, which keeps the result deterministic.
PointSet generate_uniform(int n, int d, std::uint64_t seed);

/// All coordinates multiplied by factor > 0. Any fixed edge set's
/// structure_length scales by exactly the same factor (up to roundoff).
PointSet scale(const PointSet& ps, double factor);

/// Euclidean length of edge e; throws std::out_of_range on bad indices.
double edge_length(const PointSet& ps, Edge e);

/// Sum of edge lengths; multiplicities in `edges` are counted.
double structure_length(const PointSet& ps, std::span<const Edge> edges);

double squared_distance(std::span<const double> a, std::span<const double> b);
double point_distance(std::span<const double> a, std::span<const double> b);

}  // namespace subeuclid
