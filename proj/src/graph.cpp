#include "tagcn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "tagcn/error.hpp"

namespace tagcn {
namespace {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

CsrMatrix csr_from_triplets(std::size_t n, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  CsrMatrix m;
  m.n = n;
  m.row_offsets.assign(n + 1, 0);
  m.col_indices.reserve(triplets.size());
  m.values.reserve(triplets.size());
  for (std::size_t t = 0; t < triplets.size(); ++t) {
    if (t > 0 && triplets[t].row == triplets[t - 1].row && triplets[t].col == triplets[t - 1].col) {
      fail(ErrorCode::DuplicateEdge, "duplicate edge " + std::to_string(triplets[t].col) + " -> " +
                                         std::to_string(triplets[t].row));
    }
    ++m.row_offsets[triplets[t].row + 1];
    m.col_indices.push_back(triplets[t].col);
    m.values.push_back(triplets[t].value);
  }
  for (std::size_t i = 0; i < n; ++i) m.row_offsets[i + 1] += m.row_offsets[i];
  return m;
}

void check_nonnegative(const CsrMatrix& m) {
  for (double w : m.values) {
    require(w >= 0.0, ErrorCode::NegativeWeight, "normalization requires nonnegative weights");
  }
}

std::vector<double> row_sums(const CsrMatrix& m) {
  std::vector<double> d(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p) d[i] += m.values[p];
  return d;
}

void check_positive(std::span<const double> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0)) {
      fail(ErrorCode::NonPositiveDegree, "vertex " + std::to_string(i) + " has non-positive degree");
    }
  }
}

CsrMatrix with_unit_diagonal(const CsrMatrix& a) {
  std::vector<Triplet> t;
  t.reserve(a.nnz() + a.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    bool has_diag = false;
    for (std::size_t p = a.row_offsets[i]; p < a.row_offsets[i + 1]; ++p) {
      const std::size_t j = a.col_indices[p];
      double v = a.values[p];
      if (j == i) {
        v += 1.0;
        has_diag = true;
      }
      t.push_back({i, j, v});
    }
    if (!has_diag) t.push_back({i, i, 1.0});
  }
  return csr_from_triplets(a.n, std::move(t));
}

CsrMatrix symmetric_scale(const CsrMatrix& a, std::span<const double> d) {
  CsrMatrix m = a;
  std::vector<double> inv_sqrt(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) inv_sqrt[i] = 1.0 / std::sqrt(d[i]);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p)
      m.values[p] = inv_sqrt[i] * m.values[p] * inv_sqrt[m.col_indices[p]];
  return m;
}

}  // namespace

double CsrMatrix::at(std::size_t row, std::size_t col) const {
  const auto first = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[row]);
  const auto last = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values[static_cast<std::size_t>(it - col_indices.begin())];
}

Matrix CsrMatrix::to_dense() const {
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = row_offsets[i]; p < row_offsets[i + 1]; ++p) d(i, col_indices[p]) = values[p];
  return d;
}

bool CsrMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = row_offsets[i]; p < row_offsets[i + 1]; ++p)
      if (at(col_indices[p], i) != values[p]) return false;
  return true;
}

CsrMatrix transpose(const CsrMatrix& m) {
  std::vector<Triplet> t;
  t.reserve(m.nnz());
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p)
      t.push_back({m.col_indices[p], i, m.values[p]});
  return csr_from_triplets(m.n, std::move(t));
}

Graph::Graph(CsrMatrix adjacency, bool directed)
    : adjacency_(std::move(adjacency)), directed_(directed) {
  require(adjacency_.n > 0, ErrorCode::InvalidArgument, "graph needs at least one vertex");
  require(adjacency_.row_offsets.size() == adjacency_.n + 1, ErrorCode::InvalidArgument,
          "row_offsets must have num_nodes + 1 entries");
  for (std::size_t i = 0; i < adjacency_.n; ++i) {
    require(adjacency_.row_offsets[i] <= adjacency_.row_offsets[i + 1], ErrorCode::InvalidArgument,
            "row_offsets must be nondecreasing");
  }
  for (std::size_t c : adjacency_.col_indices) {
    require(c < adjacency_.n, ErrorCode::IndexOutOfRange, "column index out of range");
  }
  for (double w : adjacency_.values) {
    require(std::isfinite(w), ErrorCode::NonFiniteValue, "edge weights must be finite");
  }
  std::vector<bool> touched(adjacency_.n, false);
  for (std::size_t i = 0; i < adjacency_.n; ++i) {
    for (std::size_t p = adjacency_.row_offsets[i]; p < adjacency_.row_offsets[i + 1]; ++p) {
      touched[i] = true;
      touched[adjacency_.col_indices[p]] = true;
    }
  }
  for (std::size_t i = 0; i < adjacency_.n; ++i) {
    if (!touched[i]) fail(ErrorCode::IsolatedVertex, "vertex " + std::to_string(i) + " is isolated");
  }
  if (!directed_) {
    require(adjacency_.is_symmetric(), ErrorCode::InvalidArgument,
            "undirected graph must have a symmetric adjacency matrix");
  }
}

Graph build_graph(std::span<const Edge> edges, std::size_t num_nodes, bool directed) {
  require(num_nodes > 0, ErrorCode::InvalidArgument, "graph needs at least one vertex");
  std::vector<Triplet> t;
  t.reserve(directed ? edges.size() : 2 * edges.size());
  for (const Edge& e : edges) {
    if (e.src >= num_nodes || e.dst >= num_nodes) {
      fail(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                                           ") out of range for " + std::to_string(num_nodes) + " vertices");
    }
    require(std::isfinite(e.weight), ErrorCode::NonFiniteValue, "edge weights must be finite");
    t.push_back({e.dst, e.src, e.weight});
    if (!directed && e.src != e.dst) t.push_back({e.src, e.dst, e.weight});
  }
  return Graph(csr_from_triplets(num_nodes, std::move(t)), directed);
}

std::vector<double> degrees(const Graph& g) { return row_sums(g.adjacency()); }

std::string_view to_string(ShiftKind kind) {
  switch (kind) {
    case ShiftKind::Raw: return "raw";
    case ShiftKind::SymNormalized: return "sym";
    case ShiftKind::GcnRenormalized: return "gcn";
    case ShiftKind::RandomWalk: return "rw";
    case ShiftKind::Laplacian: return "laplacian";
    case ShiftKind::ScaledLaplacian: return "scaled-laplacian";
  }
  return "unknown";
}

ShiftKind parse_shift_kind(std::string_view name) {
  for (ShiftKind k : {ShiftKind::Raw, ShiftKind::SymNormalized, ShiftKind::GcnRenormalized,
                      ShiftKind::RandomWalk, ShiftKind::Laplacian, ShiftKind::ScaledLaplacian}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown shift kind '" + std::string(name) + "'");
}

ShiftOperator normalize(const Graph& g, ShiftKind kind) {
  const CsrMatrix& a = g.adjacency();
  switch (kind) {
    case ShiftKind::Raw:
      return {kind, a};
    case ShiftKind::SymNormalized: {
      check_nonnegative(a);
      const auto d = row_sums(a);
      check_positive(d);
      return {kind, symmetric_scale(a, d)};
    }
    case ShiftKind::GcnRenormalized: {
      check_nonnegative(a);
      CsrMatrix tilde = with_unit_diagonal(a);
      const auto d = row_sums(tilde);
      check_positive(d);
      return {kind, symmetric_scale(tilde, d)};
    }
    case ShiftKind::RandomWalk: {
      check_nonnegative(a);
      const auto d = row_sums(a);
      check_positive(d);
      CsrMatrix m = a;
      for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p) m.values[p] /= d[i];
      return {kind, std::move(m)};
    }
    case ShiftKind::Laplacian: {
      require(!g.directed(), ErrorCode::DirectedLaplacian, "the Laplacian needs an undirected graph");
      check_nonnegative(a);
      const auto d = row_sums(a);
      std::vector<Triplet> t;
      t.reserve(a.nnz() + a.n);
      for (std::size_t i = 0; i < a.n; ++i) {
        bool has_diag = false;
        for (std::size_t p = a.row_offsets[i]; p < a.row_offsets[i + 1]; ++p) {
          const std::size_t j = a.col_indices[p];
          if (j == i) {
            t.push_back({i, i, d[i] - a.values[p]});
            has_diag = true;
          } else {
            t.push_back({i, j, -a.values[p]});
          }
        }
        if (!has_diag) t.push_back({i, i, d[i]});
      }
      return {kind, csr_from_triplets(a.n, std::move(t))};
    }
    case ShiftKind::ScaledLaplacian:
      fail(ErrorCode::WrongOperatorKind, "scaled Laplacians are built with rescale_laplacian");
  }
  fail(ErrorCode::InvalidArgument, "unknown shift kind");
}

std::vector<double> spmv(const CsrMatrix& m, std::span<const double> x) {
  require(x.size() == m.n, ErrorCode::DimensionMismatch,
          "spmv: vector length " + std::to_string(x.size()) + " != " + std::to_string(m.n));
  std::vector<double> y(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    double acc = 0.0;
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p)
      acc += m.values[p] * x[m.col_indices[p]];
    y[i] = acc;
  }
  return y;
}

std::vector<double> spmv(const ShiftOperator& s, std::span<const double> x) { return spmv(s.matrix, x); }

std::vector<double> spmv_transposed(const CsrMatrix& m, std::span<const double> x) {
  require(x.size() == m.n, ErrorCode::DimensionMismatch, "spmv_transposed: length mismatch");
  std::vector<double> y(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p)
      y[m.col_indices[p]] += m.values[p] * x[i];
  return y;
}

Matrix spmm(const CsrMatrix& m, const Matrix& x) {
  require(x.rows() == m.n, ErrorCode::DimensionMismatch,
          "spmm: matrix has " + std::to_string(x.rows()) + " rows, operator has " + std::to_string(m.n));
  Matrix y(m.n, x.cols());
  for (std::size_t i = 0; i < m.n; ++i) {
    auto dst = y.row(i);
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p) {
      const double w = m.values[p];
      auto src = x.row(m.col_indices[p]);
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += w * src[c];
    }
  }
  return y;
}

Matrix spmm(const ShiftOperator& s, const Matrix& x) { return spmm(s.matrix, x); }

Matrix spmm_transposed(const CsrMatrix& m, const Matrix& x) {
  require(x.rows() == m.n, ErrorCode::DimensionMismatch, "spmm_transposed: row count mismatch");
  Matrix y(m.n, x.cols());
  for (std::size_t i = 0; i < m.n; ++i) {
    auto src = x.row(i);
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p) {
      const double w = m.values[p];
      auto dst = y.row(m.col_indices[p]);
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += w * src[c];
    }
  }
  return y;
}

PathEnumeration enumerate_paths(const Graph& g, std::size_t src, std::size_t dst, int k) {
  const std::size_t n = g.num_nodes();
  require(src < n && dst < n, ErrorCode::IndexOutOfRange, "path endpoints out of range");
  require(k >= 0, ErrorCode::InvalidArgument, "path length must be nonnegative");
  require(k <= kMaxEnumeratedPathLength, ErrorCode::PathLengthTooLarge,
          "path enumeration is limited to length " + std::to_string(kMaxEnumeratedPathLength));

  // Row v of the transpose lists the out-edges v -> u with weight A[u][v].
  const CsrMatrix out = transpose(g.adjacency());
  PathEnumeration result;
  std::vector<std::size_t> walk{src};

  auto visit = [&](auto&& self, std::size_t v, double weight, int remaining) -> void {
    if (remaining == 0) {
      if (v == dst) {
        result.weight_sum += weight;
        ++result.num_paths;
        result.paths.push_back(walk);
      }
      return;
    }
    for (std::size_t p = out.row_offsets[v]; p < out.row_offsets[v + 1]; ++p) {
      walk.push_back(out.col_indices[p]);
      self(self, out.col_indices[p], weight * out.values[p], remaining - 1);
      walk.pop_back();
    }
  };
  visit(visit, src, 1.0, k);
  return result;
}

double path_weight_sum(const Graph& g, std::size_t src, std::size_t dst, int k) {
  return enumerate_paths(g, src, dst, k).weight_sum;
}

bool is_strongly_connected(const CsrMatrix& m) {
  if (m.n == 0) return false;
  auto reaches_all = [](const CsrMatrix& a) {
    std::vector<bool> seen(a.n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t p = a.row_offsets[v]; p < a.row_offsets[v + 1]; ++p) {
        const std::size_t u = a.col_indices[p];
        if (!seen[u]) {
          seen[u] = true;
          ++count;
          stack.push_back(u);
        }
      }
    }
    return count == a.n;
  };
  return reaches_all(m) && reaches_all(transpose(m));
}

Graph relabel(const Graph& g, std::span<const std::size_t> perm) {
  const CsrMatrix& a = g.adjacency();
  require(perm.size() == a.n, ErrorCode::DimensionMismatch, "relabel: permutation length mismatch");
  std::vector<Triplet> t;
  t.reserve(a.nnz());
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t p = a.row_offsets[i]; p < a.row_offsets[i + 1]; ++p)
      t.push_back({perm[i], perm[a.col_indices[p]], a.values[p]});
  return Graph(csr_from_triplets(a.n, std::move(t)), g.directed());
}

}  // namespace tagcn
