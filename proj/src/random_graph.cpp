#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>

#include "tagcn/error.hpp"
#include "tagcn/graph.hpp"

namespace tagcn {

Graph random_connected_graph(std::size_t n, std::uint64_t seed, const RandomGraphOptions& opts) {
  require(n >= 3, ErrorCode::InvalidArgument, "random graphs need at least three vertices");
  require(opts.edge_prob >= 0.0 && opts.edge_prob <= 1.0, ErrorCode::InvalidArgument,
          "edge probability must lie in [0, 1]");
  require(opts.min_weight > 0.0 && opts.min_weight <= opts.max_weight, ErrorCode::InvalidArgument,
          "weights must satisfy 0 < min <= max");

  std::mt19937_64 rng(seed);
  auto weight = [&] {
    if (opts.integer_weights) {
      std::uniform_int_distribution<long long> pick(static_cast<long long>(std::ceil(opts.min_weight)),
                                                    static_cast<long long>(std::floor(opts.max_weight)));
      return static_cast<double>(pick(rng));
    }
    return std::uniform_real_distribution<double>(opts.min_weight, opts.max_weight)(rng);
  };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::set<std::pair<std::size_t, std::size_t>> present;
  std::vector<Edge> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    if (!present.emplace(a, b).second) return;
    edges.push_back({a, b, weight()});
  };
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    add(order[i], order[parent(rng)]);
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!present.count({a, b}) && unif(rng) < opts.edge_prob) add(a, b);

  std::vector<std::vector<std::size_t>> nbrs(n);
  for (const Edge& e : edges) {
    nbrs[e.src].push_back(e.dst);
    nbrs[e.dst].push_back(e.src);
  }
  std::vector<int> colour(n, -1);
  colour[0] = 0;
  std::queue<std::size_t> q;
  q.push(0);
  bool bipartite = true;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : nbrs[u]) {
      if (colour[v] < 0) {
        colour[v] = 1 - colour[u];
        q.push(v);
      } else if (colour[v] == colour[u]) {
        bipartite = false;
      }
    }
  }
  if (bipartite) {
    // With n >= 3 one colour class has two members; they are not adjacent, and
    // joining them closes an odd cycle.
    std::vector<std::size_t> cls[2];
    for (std::size_t v = 0; v < n; ++v) cls[colour[v]].push_back(v);
    const auto& pick = cls[0].size() >= 2 ? cls[0] : cls[1];
    add(pick[0], pick[1]);
  }
  return build_graph(edges, n, /*directed=*/false);
}

}  // namespace tagcn
