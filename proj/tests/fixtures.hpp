#pragma once

#include <cstddef>
#include <vector>

#include "oracles.hpp"
#include "tagcn/graph.hpp"

namespace fixture {

// Seven-vertex weighted digraph; row i lists the weights flowing into i.
inline oracle::Dense worked_example_matrix() {
  return {{0, 1, 0, 2, 3, 0, 0}, {1, 0, 4, 5, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 1}, {1, 1, 0, 0, 6, 0, 0},
          {1, 0, 0, 1, 0, 1, 0}, {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0}};
}

inline tagcn::Graph graph_from_dense(const oracle::Dense& a, bool directed) {
  std::vector<tagcn::Edge> edges;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j] == 0.0) continue;
      if (!directed && j > i) continue;
      edges.push_back({j, i, a[i][j]});
    }
  return tagcn::build_graph(edges, a.size(), directed);
}

inline oracle::Dense to_dense(const tagcn::CsrMatrix& m) {
  oracle::Dense d = oracle::zeros(m.n, m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p) d[i][m.col_indices[p]] = m.values[p];
  return d;
}

// Random digraph with integer weights in [1, max_weight]; every vertex gets at
// least one incident edge.
inline oracle::Dense random_integer_digraph(std::size_t n, int max_weight, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> w(1, max_weight);
  oracle::Dense a = oracle::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (u(rng) < density) a[i][j] = w(rng);
  for (std::size_t i = 0; i < n; ++i) {
    bool touched = false;
    for (std::size_t j = 0; j < n; ++j) touched = touched || a[i][j] != 0.0 || a[j][i] != 0.0;
    if (!touched) a[(i + 1) % n][i] = w(rng);
  }
  return a;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace fixture
