#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tagcn/matrix.hpp"

namespace tagcn {

/// A weighted edge. The weight sits on the directed edge src -> dst, so it is
/// stored in the adjacency matrix at A[dst][src]: row i of A collects the
/// values flowing into vertex i.
struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  double weight = 1.0;
};

/// Square sparse matrix in compressed row form. Column indices are sorted
/// within each row.
struct CsrMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> row_offsets{0};
  std::vector<std::size_t> col_indices;
  std::vector<double> values;

  std::size_t nnz() const noexcept { return col_indices.size(); }
  /// A[row][col], zero when not stored.
  double at(std::size_t row, std::size_t col) const;
  Matrix to_dense() const;
  bool is_symmetric() const;
};

CsrMatrix transpose(const CsrMatrix& m);

/// Immutable weighted graph; `adjacency` holds the matrix A-bar.
class Graph {
 public:
  /// Empty placeholder with no vertices.
  Graph() = default;
  Graph(CsrMatrix adjacency, bool directed);

  std::size_t num_nodes() const noexcept { return adjacency_.n; }
  bool directed() const noexcept { return directed_; }
  const CsrMatrix& adjacency() const noexcept { return adjacency_; }
  std::size_t num_stored_edges() const noexcept { return adjacency_.nnz(); }

 private:
  CsrMatrix adjacency_;
  bool directed_ = false;
};

/// Builds a canonical graph. Undirected edges are stored both ways.
/// Throws IndexOutOfRange, DuplicateEdge, NonFiniteValue or IsolatedVertex.
Graph build_graph(std::span<const Edge> edges, std::size_t num_nodes, bool directed);

/// Row sums of the adjacency matrix.
std::vector<double> degrees(const Graph& g);

enum class ShiftKind {
  Raw,
  SymNormalized,    // D^-1/2 A D^-1/2
  GcnRenormalized,  // D~^-1/2 (A + I) D~^-1/2
  RandomWalk,       // D^-1 A
  Laplacian,        // D - A, undirected only
  ScaledLaplacian,  // (2 / lambda_max) L - I, built by rescale_laplacian
};

std::string_view to_string(ShiftKind kind);
ShiftKind parse_shift_kind(std::string_view name);

/// A normalized matrix derived from a graph; immutable after construction.
struct ShiftOperator {
  ShiftKind kind = ShiftKind::Raw;
  CsrMatrix matrix;

  std::size_t num_nodes() const noexcept { return matrix.n; }
};

ShiftOperator normalize(const Graph& g, ShiftKind kind);

/// y = M x with ascending column order inside each row.
std::vector<double> spmv(const CsrMatrix& m, std::span<const double> x);
std::vector<double> spmv(const ShiftOperator& s, std::span<const double> x);
/// y = M^T x.
std::vector<double> spmv_transposed(const CsrMatrix& m, std::span<const double> x);

/// Y = M X applied to every column of X.
Matrix spmm(const CsrMatrix& m, const Matrix& x);
Matrix spmm(const ShiftOperator& s, const Matrix& x);
/// Y = M^T X.
Matrix spmm_transposed(const CsrMatrix& m, const Matrix& x);

inline constexpr int kMaxEnumeratedPathLength = 6;

struct PathEnumeration {
  double weight_sum = 0.0;
  std::size_t num_paths = 0;
  /// Every contributing vertex sequence, src first.
  std::vector<std::vector<std::size_t>> paths;
};

/// Exhaustively enumerates all length-k walks src -> dst with nonzero weight.
/// The weight of a walk is the product of its edge weights.
PathEnumeration enumerate_paths(const Graph& g, std::size_t src, std::size_t dst, int k);
double path_weight_sum(const Graph& g, std::size_t src, std::size_t dst, int k);

/// Forward and backward reachability from vertex 0 over stored edges.
bool is_strongly_connected(const CsrMatrix& m);

/// Graph with vertex v renamed to perm[v].
Graph relabel(const Graph& g, std::span<const std::size_t> perm);

}  // namespace tagcn

namespace tagcn {

/// Seeded undirected graph on n >= 3 vertices that is connected and has an odd
/// cycle: a random spanning tree, extra edges with probability `edge_prob`,
/// and one chord added if the result is still bipartite. Weights are uniform
/// in [min_weight, max_weight]; integer_weights draws integers instead.
struct RandomGraphOptions {
  double edge_prob = 0.2;
  double min_weight = 0.5;
  double max_weight = 1.5;
  bool integer_weights = false;
};
Graph random_connected_graph(std::size_t n, std::uint64_t seed, const RandomGraphOptions& opts = {});

}  // namespace tagcn
