#include "subeuclid/matching.hpp"

#include <algorithm>
#include <stdexcept>

#include "subeuclid/blossom.hpp"

namespace subeuclid {

std::pair<Matching, double> min_matching(const PointSet& ps) {
  const int n = ps.size();
  if (n < 2) throw std::invalid_argument("min_matching: requires n >= 2");
  const bool odd = n % 2 != 0;
  const int m = odd ? n + 1 : n;
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, ps.distance(u, v)});
  if (odd)
    for (int u = 0; u < n; ++u) edges.push_back({u, n, 0.0});
  auto result = min_weight_perfect_matching(m, edges);
  if (!result.perfect)
    throw std::runtime_error("min_matching: internal error, no perfect matching");
  Matching match;
  double total = 0;
  for (int u = 0; u < n; ++u) {
    const int v = result.mate[u];
    if (v > u && v < n) {
      match.edges.push_back(Edge{u, v});
      total += ps.distance(u, v);
    }
  }
  std::sort(match.edges.begin(), match.edges.end());
  return {match, total};
}

}  // namespace subeuclid
