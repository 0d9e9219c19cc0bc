#include "tagcn/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tagcn/error.hpp"

namespace tagcn {

PolyFilterParams::PolyFilterParams(std::size_t in_features, std::size_t out_features,
                                   std::size_t filter_size, bool include_k0)
    : in_(in_features),
      out_(out_features),
      k_(filter_size),
      include_k0_(include_k0),
      coeffs_(in_features * out_features * (filter_size + 1), 0.0),
      bias_(out_features, 0.0) {
  require(in_ > 0 && out_ > 0, ErrorCode::InvalidArgument, "filter bank needs positive widths");
  require(include_k0_ || k_ >= 1, ErrorCode::InvalidArgument,
          "dropping the degree-0 term needs filter size >= 1");
}

Matrix PolyFilterParams::weight_block(std::size_t k) const {
  Matrix w(in_, out_);
  for (std::size_t c = 0; c < in_; ++c)
    for (std::size_t f = 0; f < out_; ++f) w(c, f) = coeff(c, f, k);
  return w;
}

void PolyFilterParams::set_weight_block(std::size_t k, const Matrix& w) {
  require(w.rows() == in_ && w.cols() == out_, ErrorCode::DimensionMismatch, "weight block shape");
  for (std::size_t c = 0; c < in_; ++c)
    for (std::size_t f = 0; f < out_; ++f) coeff(c, f, k) = w(c, f);
}

std::vector<double> PolyFilterParams::polynomial(std::size_t c, std::size_t f) const {
  std::vector<double> g(k_ + 1);
  for (std::size_t k = 0; k <= k_; ++k) g[k] = coeff(c, f, k);
  if (!include_k0_) g[0] = 0.0;
  return g;
}

std::vector<double> apply_poly_filter(std::span<const double> coeffs, const ShiftOperator& s,
                                      std::span<const double> x) {
  require(x.size() == s.num_nodes(), ErrorCode::DimensionMismatch, "filter input length mismatch");
  std::vector<double> y(x.size(), 0.0);
  if (coeffs.empty()) return y;
  std::vector<double> z(x.begin(), x.end());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) z = spmv(s, z);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += coeffs[k] * z[i];
  }
  return y;
}

Matrix layer_forward(const PolyFilterParams& p, const ShiftOperator& s, const Matrix& x) {
  require(x.rows() == s.num_nodes(), ErrorCode::DimensionMismatch, "layer input has wrong vertex count");
  require(x.cols() == p.in_features(), ErrorCode::DimensionMismatch, "layer input has wrong feature count");
  Matrix y(x.rows(), p.out_features());
  Matrix z = x;
  for (std::size_t k = 0; k <= p.filter_size(); ++k) {
    if (k > 0) z = spmm(s, z);
    if (k < p.first_degree()) continue;
    add_inplace(y, matmul(z, p.weight_block(k)));
  }
  const auto b = p.bias();
  for (std::size_t i = 0; i < y.rows(); ++i) {
    auto row = y.row(i);
    for (std::size_t f = 0; f < row.size(); ++f) row[f] += b[f];
  }
  return y;
}

double shift_invariance_residual(const SignalOperator& filter, const ShiftOperator& s,
                                 std::span<const double> x) {
  require(x.size() == s.num_nodes(), ErrorCode::DimensionMismatch, "residual input length mismatch");
  const auto shifted_after = spmv(s, filter(x));
  const auto ax = spmv(s, x);
  const auto filtered_after = filter(ax);
  require(shifted_after.size() == filtered_after.size(), ErrorCode::DimensionMismatch,
          "operator changed the signal length");
  double worst = 0.0;
  for (std::size_t i = 0; i < shifted_after.size(); ++i)
    worst = std::max(worst, std::abs(shifted_after[i] - filtered_after[i]));
  return worst;
}

double shift_invariance_residual(std::span<const double> coeffs, const ShiftOperator& s,
                                 std::span<const double> x) {
  std::vector<double> g(coeffs.begin(), coeffs.end());
  return shift_invariance_residual(
      [&](std::span<const double> v) { return apply_poly_filter(g, s, v); }, s, x);
}

PowerIterationResult power_iteration(const CsrMatrix& m, int max_iterations, double tolerance,
                                     std::span<const double> start) {
  require(m.n > 0, ErrorCode::InvalidArgument, "power iteration on an empty matrix");
  PowerIterationResult result;
  std::vector<double> v;
  if (start.empty()) {
    // A non-uniform positive start avoids being orthogonal to common eigenvectors.
    v.resize(m.n);
    for (std::size_t i = 0; i < m.n; ++i) v[i] = 1.0 + static_cast<double>(i % 7) / 7.0;
  } else {
    require(start.size() == m.n, ErrorCode::DimensionMismatch, "power iteration start length");
    v.assign(start.begin(), start.end());
  }
  auto norm = [](std::span<const double> a) {
    double acc = 0.0;
    for (double e : a) acc += e * e;
    return std::sqrt(acc);
  };
  double nv = norm(v);
  require(nv > 0.0, ErrorCode::InvalidArgument, "power iteration start vector is zero");
  for (double& e : v) e /= nv;

  for (int it = 1; it <= max_iterations; ++it) {
    auto w = spmv(m, v);
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) rayleigh += v[i] * w[i];
    const double nw = norm(w);
    result.iterations = it;
    result.eigenvalue = rayleigh;
    if (nw == 0.0) {
      result.eigenvector = v;
      return result;
    }
    // Keep the orientation consistent with the previous iterate so a negative
    // dominant eigenvalue does not look like divergence.
    const double sign = rayleigh < 0.0 ? -1.0 : 1.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
      w[i] = sign * w[i] / nw;
      diff += (w[i] - v[i]) * (w[i] - v[i]);
    }
    v = std::move(w);
    if (std::sqrt(diff) < tolerance) {
      result.converged = true;
      break;
    }
  }
  result.eigenvector = std::move(v);
  return result;
}

ShiftOperator rescale_laplacian(const ShiftOperator& laplacian, std::optional<double> lambda_max) {
  require(laplacian.kind == ShiftKind::Laplacian, ErrorCode::WrongOperatorKind,
          "rescale_laplacian expects a Laplacian operator");
  double lmax = 0.0;
  if (lambda_max) {
    lmax = *lambda_max;
  } else {
    lmax = power_iteration(laplacian.matrix, 100, 1e-8).eigenvalue;
  }
  require(std::isfinite(lmax) && lmax > 0.0, ErrorCode::InvalidArgument,
          "lambda_max must be positive and finite");
  ShiftOperator out{ShiftKind::ScaledLaplacian, laplacian.matrix};
  CsrMatrix& m = out.matrix;
  const double scale = 2.0 / lmax;
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t p = m.row_offsets[i]; p < m.row_offsets[i + 1]; ++p) {
      m.values[p] *= scale;
      // normalize() always stores the Laplacian diagonal.
      if (m.col_indices[p] == i) m.values[p] -= 1.0;
    }
  }
  return out;
}

std::vector<double> chebyshev_apply(std::span<const double> theta, const ShiftOperator& scaled_laplacian,
                                    std::span<const double> x) {
  require(scaled_laplacian.kind == ShiftKind::ScaledLaplacian, ErrorCode::WrongOperatorKind,
          "chebyshev_apply expects a rescaled Laplacian");
  require(x.size() == scaled_laplacian.num_nodes(), ErrorCode::DimensionMismatch,
          "chebyshev input length mismatch");
  std::vector<double> y(x.size(), 0.0);
  if (theta.empty()) return y;
  std::vector<double> prev(x.begin(), x.end());  // T_0 x
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += theta[0] * prev[i];
  if (theta.size() == 1) return y;
  std::vector<double> cur = spmv(scaled_laplacian, prev);  // T_1 x
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += theta[1] * cur[i];
  for (std::size_t k = 2; k < theta.size(); ++k) {
    auto next = spmv(scaled_laplacian, cur);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = 2.0 * next[i] - prev[i];
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += theta[k] * next[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return y;
}

Graph make_cyclic_graph(std::size_t n) {
  require(n >= 2, ErrorCode::InvalidArgument, "a cyclic graph needs at least 2 vertices");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return build_graph(edges, n, /*directed=*/true);
}

ParameterCount count_parameters(LayerKind kind, std::size_t in_features, std::size_t out_features,
                                std::size_t filter_size, bool include_k0) {
  const std::size_t cf = in_features * out_features;
  ParameterCount count;
  switch (kind) {
    case LayerKind::TAGCN: {
      const std::size_t degrees_used = filter_size + (include_k0 ? 1 : 0);
      count.filter_weights = cf * degrees_used;
      count.filter_weights_table = cf * filter_size;
      count.bias = out_features;
      break;
    }
    case LayerKind::GCN:
      count.filter_weights = cf;
      count.filter_weights_table = cf;
      break;
    case LayerKind::Cheb:
      count.filter_weights = cf * (filter_size + 1);
      count.filter_weights_table = cf * (filter_size + 1);
      count.bias = out_features;
      break;
    case LayerKind::DCNN:
      count.filter_weights = in_features * (filter_size + 1);
      count.filter_weights_table = in_features * (filter_size + 1);
      break;
  }
  return count;
}

}  // namespace tagcn
