#include <algorithm>
#include <cmath>
#include <string>

#include "tagcn/error.hpp"
#include "tagcn/nn.hpp"

namespace tagcn {
namespace {

void check_input(const LayerSpec& layer, const ShiftOperator& s, const Matrix& x) {
  require(x.rows() == s.num_nodes(), ErrorCode::DimensionMismatch,
          "layer input has " + std::to_string(x.rows()) + " rows, graph has " + std::to_string(s.num_nodes()));
  require(x.cols() == layer.in_width, ErrorCode::DimensionMismatch,
          "layer expects " + std::to_string(layer.in_width) + " input features, got " + std::to_string(x.cols()));
}

void require_kind(const LayerSpec& layer, LayerKind kind) {
  require(layer.kind == kind, ErrorCode::WrongOperatorKind,
          "layer of kind " + std::string(to_string(layer.kind)) + " passed to " + std::string(to_string(kind)));
}

void add_bias(Matrix& y, std::span<const double> bias) {
  for (std::size_t i = 0; i < y.rows(); ++i) {
    auto row = y.row(i);
    for (std::size_t f = 0; f < row.size(); ++f) row[f] += bias[f];
  }
}

/// Y = sum_{d} basis[d + first] * weights[d] (+ bias).
Matrix combine_basis(const LayerSpec& layer, const std::vector<Matrix>& basis, std::size_t rows) {
  Matrix y(rows, layer.out_width);
  for (std::size_t d = 0; d < layer.weights.size(); ++d)
    add_inplace(y, matmul(basis[d + layer.first_degree()], layer.weights[d]));
  if (layer.has_bias()) add_bias(y, layer.bias);
  return y;
}

}  // namespace

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::TAGCN: return "tagcn";
    case LayerKind::GCN: return "gcn";
    case LayerKind::Cheb: return "cheb";
    case LayerKind::DCNN: return "dcnn";
  }
  return "unknown";
}

LayerKind parse_layer_kind(std::string_view name) {
  for (LayerKind k : {LayerKind::TAGCN, LayerKind::GCN, LayerKind::Cheb, LayerKind::DCNN})
    if (to_string(k) == name) return k;
  fail(ErrorCode::InvalidArgument, "unknown layer kind '" + std::string(name) + "'");
}

void LayerSpec::check_shapes() const {
  auto stale = [](const std::string& what) { fail(ErrorCode::StaleState, "layer shape mismatch: " + what); };
  if (kind == LayerKind::DCNN) {
    if (out_width != in_width * (filter_size + 1)) stale("dcnn output width");
    if (weights.size() != 1 || weights[0].rows() != filter_size + 1 || weights[0].cols() != in_width)
      stale("dcnn gains");
  } else {
    std::size_t blocks = 1;
    if (kind == LayerKind::TAGCN) blocks = filter_size + 1 - first_degree();
    if (kind == LayerKind::Cheb) blocks = filter_size + 1;
    if (weights.size() != blocks) stale("number of weight blocks");
    for (const Matrix& w : weights)
      if (w.rows() != in_width || w.cols() != out_width) stale("weight block shape");
  }
  if (bias.size() != (has_bias() ? out_width : 0)) stale("bias length");
}

LayerSpec make_layer(LayerKind kind, std::size_t in_width, std::size_t out_width, std::size_t filter_size,
                     bool include_k0) {
  require(in_width > 0, ErrorCode::InvalidArgument, "layer input width must be positive");
  LayerSpec layer;
  layer.kind = kind;
  layer.in_width = in_width;
  layer.filter_size = filter_size;
  layer.include_k0 = kind == LayerKind::TAGCN ? include_k0 : true;
  switch (kind) {
    case LayerKind::TAGCN:
      require(include_k0 || filter_size >= 1, ErrorCode::InvalidArgument,
              "dropping the degree-0 term needs filter size >= 1");
      layer.out_width = out_width;
      layer.weights.assign(filter_size + 1 - layer.first_degree(), Matrix(in_width, out_width));
      layer.bias.assign(out_width, 0.0);
      break;
    case LayerKind::GCN:
      layer.out_width = out_width;
      layer.filter_size = 1;
      layer.weights.assign(1, Matrix(in_width, out_width));
      break;
    case LayerKind::Cheb:
      layer.out_width = out_width;
      layer.weights.assign(filter_size + 1, Matrix(in_width, out_width));
      layer.bias.assign(out_width, 0.0);
      break;
    case LayerKind::DCNN:
      layer.out_width = in_width * (filter_size + 1);
      layer.weights.assign(1, Matrix(filter_size + 1, in_width));
      break;
  }
  require(layer.out_width > 0, ErrorCode::InvalidArgument, "layer output width must be positive");
  return layer;
}

void glorot_init(LayerSpec& layer, Rng& rng) {
  const double fan_out = layer.kind == LayerKind::DCNN ? 1.0 : static_cast<double>(layer.out_width);
  const double limit = std::sqrt(6.0 / (static_cast<double>(layer.in_width) + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (Matrix& w : layer.weights)
    for (double& v : w.values()) v = dist(rng);
  std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
}

PolyFilterParams to_filter_params(const LayerSpec& layer) {
  require_kind(layer, LayerKind::TAGCN);
  layer.check_shapes();
  PolyFilterParams p(layer.in_width, layer.out_width, layer.filter_size, layer.include_k0);
  for (std::size_t d = 0; d < layer.weights.size(); ++d)
    p.set_weight_block(d + layer.first_degree(), layer.weights[d]);
  std::copy(layer.bias.begin(), layer.bias.end(), p.bias().begin());
  return p;
}

LayerSpec from_filter_params(const PolyFilterParams& p) {
  LayerSpec layer = make_layer(LayerKind::TAGCN, p.in_features(), p.out_features(), p.filter_size(),
                               p.include_k0());
  for (std::size_t d = 0; d < layer.weights.size(); ++d)
    layer.weights[d] = p.weight_block(d + layer.first_degree());
  std::copy(p.bias().begin(), p.bias().end(), layer.bias.begin());
  return layer;
}

GraphOperators GraphOperators::build(const Graph& g, std::span<const LayerKind> kinds, ShiftKind tagcn_kind) {
  GraphOperators ops;
  for (LayerKind kind : kinds) {
    switch (kind) {
      case LayerKind::TAGCN:
        if (!ops.adjacency) ops.adjacency = normalize(g, tagcn_kind);
        break;
      case LayerKind::GCN:
        if (!ops.renormalized) ops.renormalized = normalize(g, ShiftKind::GcnRenormalized);
        break;
      case LayerKind::Cheb:
        if (!ops.scaled_laplacian) ops.scaled_laplacian = rescale_laplacian(normalize(g, ShiftKind::Laplacian));
        break;
      case LayerKind::DCNN:
        if (!ops.random_walk) ops.random_walk = normalize(g, ShiftKind::RandomWalk);
        break;
    }
  }
  return ops;
}

const ShiftOperator& GraphOperators::for_layer(LayerKind kind) const {
  const std::optional<ShiftOperator>* op = nullptr;
  switch (kind) {
    case LayerKind::TAGCN: op = &adjacency; break;
    case LayerKind::GCN: op = &renormalized; break;
    case LayerKind::Cheb: op = &scaled_laplacian; break;
    case LayerKind::DCNN: op = &random_walk; break;
  }
  require(op != nullptr && op->has_value(), ErrorCode::WrongOperatorKind,
          "no operator available for " + std::string(to_string(kind)) + " layers");
  return **op;
}

Matrix tagcn_forward(const LayerSpec& layer, const ShiftOperator& s, const Matrix& x, LayerCache* cache) {
  require_kind(layer, LayerKind::TAGCN);
  layer.check_shapes();
  check_input(layer, s, x);
  std::vector<Matrix> basis;
  basis.reserve(layer.filter_size + 1);
  basis.push_back(x);
  for (std::size_t k = 1; k <= layer.filter_size; ++k) basis.push_back(spmm(s, basis.back()));
  Matrix y = combine_basis(layer, basis, x.rows());
  if (cache) *cache = {x, std::move(basis)};
  return y;
}

Matrix gcn_forward(const LayerSpec& layer, const ShiftOperator& s_hat, const Matrix& x, LayerCache* cache) {
  require_kind(layer, LayerKind::GCN);
  require(s_hat.kind == ShiftKind::GcnRenormalized, ErrorCode::WrongOperatorKind,
          "GCN layers need the renormalized adjacency");
  layer.check_shapes();
  check_input(layer, s_hat, x);
  Matrix propagated = spmm(s_hat, x);
  Matrix y = matmul(propagated, layer.weights[0]);
  if (cache) *cache = {x, {std::move(propagated)}};
  return y;
}

Matrix cheb_forward(const LayerSpec& layer, const ShiftOperator& scaled_laplacian, const Matrix& x,
                    LayerCache* cache) {
  require_kind(layer, LayerKind::Cheb);
  require(scaled_laplacian.kind == ShiftKind::ScaledLaplacian, ErrorCode::WrongOperatorKind,
          "Chebyshev layers need a rescaled Laplacian");
  layer.check_shapes();
  check_input(layer, scaled_laplacian, x);
  std::vector<Matrix> basis;
  basis.reserve(layer.filter_size + 1);
  basis.push_back(x);
  if (layer.filter_size >= 1) basis.push_back(spmm(scaled_laplacian, x));
  for (std::size_t k = 2; k <= layer.filter_size; ++k) {
    Matrix next = spmm(scaled_laplacian, basis[k - 1]);
    scale_inplace(next, 2.0);
    axpy_inplace(next, -1.0, basis[k - 2]);
    basis.push_back(std::move(next));
  }
  Matrix y = combine_basis(layer, basis, x.rows());
  if (cache) *cache = {x, std::move(basis)};
  return y;
}

Matrix dcnn_forward(const LayerSpec& layer, const ShiftOperator& p, const Matrix& x, LayerCache* cache) {
  require_kind(layer, LayerKind::DCNN);
  require(p.kind == ShiftKind::RandomWalk, ErrorCode::WrongOperatorKind,
          "DCNN layers need the random-walk transition matrix");
  layer.check_shapes();
  check_input(layer, p, x);
  const std::size_t c_in = layer.in_width;
  std::vector<Matrix> basis;
  basis.reserve(layer.filter_size + 1);
  basis.push_back(x);
  for (std::size_t h = 1; h <= layer.filter_size; ++h) basis.push_back(spmm(p, basis.back()));
  const Matrix& gains = layer.weights[0];
  Matrix y(x.rows(), layer.out_width);
  for (std::size_t h = 0; h < basis.size(); ++h)
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t c = 0; c < c_in; ++c) y(i, h * c_in + c) = gains(h, c) * basis[h](i, c);
  if (cache) *cache = {x, std::move(basis)};
  return y;
}

Matrix layer_forward(const LayerSpec& layer, const GraphOperators& ops, const Matrix& x, LayerCache* cache) {
  const ShiftOperator& s = ops.for_layer(layer.kind);
  switch (layer.kind) {
    case LayerKind::TAGCN: return tagcn_forward(layer, s, x, cache);
    case LayerKind::GCN: return gcn_forward(layer, s, x, cache);
    case LayerKind::Cheb: return cheb_forward(layer, s, x, cache);
    case LayerKind::DCNN: return dcnn_forward(layer, s, x, cache);
  }
  fail(ErrorCode::InvalidArgument, "unknown layer kind");
}

LayerGrads layer_backward(const LayerSpec& layer, const GraphOperators& ops, const LayerCache& cache,
                          const Matrix& grad_out, Matrix* grad_input) {
  layer.check_shapes();
  const ShiftOperator& s = ops.for_layer(layer.kind);
  const std::size_t n = s.num_nodes();
  require(grad_out.rows() == n && grad_out.cols() == layer.out_width, ErrorCode::StaleState,
          "upstream gradient shape does not match the layer output");
  require(cache.input.rows() == n && cache.input.cols() == layer.in_width, ErrorCode::StaleState,
          "cached input does not match the layer");
  const CsrMatrix& m = s.matrix;

  LayerGrads grads;
  if (layer.kind == LayerKind::DCNN) {
    const std::size_t c_in = layer.in_width;
    const std::size_t hops = layer.filter_size + 1;
    require(cache.basis.size() == hops, ErrorCode::StaleState, "cached diffusion basis has wrong depth");
    const Matrix& gains = layer.weights[0];
    Matrix dg(hops, c_in);
    std::vector<Matrix> scaled;  // dL/d(P^h X)
    scaled.reserve(hops);
    for (std::size_t h = 0; h < hops; ++h) {
      Matrix sh(n, c_in);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < c_in; ++c) {
          const double g = grad_out(i, h * c_in + c);
          dg(h, c) += g * cache.basis[h](i, c);
          sh(i, c) = g * gains(h, c);
        }
      }
      scaled.push_back(std::move(sh));
    }
    grads.weights.push_back(std::move(dg));
    if (grad_input) {
      Matrix acc = scaled.back();
      for (std::size_t h = hops - 1; h-- > 0;) {
        acc = spmm_transposed(m, acc);
        add_inplace(acc, scaled[h]);
      }
      *grad_input = std::move(acc);
    }
    return grads;
  }

  const std::size_t first = layer.first_degree();
  const std::size_t expected_basis = layer.kind == LayerKind::GCN ? 1 : layer.filter_size + 1;
  require(cache.basis.size() == expected_basis, ErrorCode::StaleState, "cached basis has wrong size");

  grads.weights.reserve(layer.weights.size());
  for (std::size_t d = 0; d < layer.weights.size(); ++d)
    grads.weights.push_back(matmul_tn(cache.basis[d + first], grad_out));
  if (layer.has_bias()) grads.bias = column_sums(grad_out);

  if (!grad_input) return grads;

  // Z_k = G W_k^T is the gradient with respect to basis k.
  std::vector<Matrix> z(expected_basis, Matrix(n, layer.in_width));
  for (std::size_t d = 0; d < layer.weights.size(); ++d) z[d + first] = matmul_nt(grad_out, layer.weights[d]);

  switch (layer.kind) {
    case LayerKind::GCN:
      *grad_input = spmm_transposed(m, z[0]);
      break;
    case LayerKind::TAGCN: {
      // sum_k (A^T)^k Z_k in Horner form.
      Matrix acc = z.back();
      for (std::size_t k = expected_basis - 1; k-- > 0;) {
        acc = spmm_transposed(m, acc);
        add_inplace(acc, z[k]);
      }
      *grad_input = std::move(acc);
      break;
    }
    case LayerKind::Cheb: {
      // Clenshaw: b_k = Z_k + 2 M b_{k+1} - b_{k+2}, result Z_0 + M b_1 - b_2,
      // with M = L^T so that the sum is sum_k T_k(L)^T Z_k.
      const std::size_t kmax = expected_basis - 1;
      if (kmax == 0) {
        *grad_input = z[0];
        break;
      }
      Matrix b_next(n, layer.in_width);   // b_{k+1}
      Matrix b_next2(n, layer.in_width);  // b_{k+2}
      for (std::size_t k = kmax; k >= 1; --k) {
        Matrix b = spmm_transposed(m, b_next);
        scale_inplace(b, 2.0);
        add_inplace(b, z[k]);
        axpy_inplace(b, -1.0, b_next2);
        b_next2 = std::move(b_next);
        b_next = std::move(b);
      }
      Matrix result = spmm_transposed(m, b_next);
      add_inplace(result, z[0]);
      axpy_inplace(result, -1.0, b_next2);
      *grad_input = std::move(result);
      break;
    }
    case LayerKind::DCNN:
      break;
  }
  return grads;
}

Matrix relu(const Matrix& x) {
  Matrix y = x;
  for (double& v : y.values()) v = v > 0.0 ? v : 0.0;
  return y;
}

DropoutResult inverted_dropout(const Matrix& x, double rate, Rng& rng) {
  require(rate >= 0.0 && rate < 1.0, ErrorCode::InvalidRate, "dropout rate must lie in [0, 1)");
  DropoutResult r{Matrix(x.rows(), x.cols()), Matrix(x.rows(), x.cols(), 1.0)};
  if (rate == 0.0) {
    r.output = x;
    return r;
  }
  const double keep_scale = 1.0 / (1.0 - rate);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto xv = x.values();
  auto ov = r.output.values();
  auto mv = r.mask.values();
  for (std::size_t i = 0; i < xv.size(); ++i) {
    mv[i] = u(rng) < rate ? 0.0 : keep_scale;
    ov[i] = xv[i] * mv[i];
  }
  return r;
}

LossResult masked_softmax_xent(const Matrix& logits, std::span<const int> labels,
                               std::span<const std::size_t> mask) {
  require(!mask.empty(), ErrorCode::EmptyMask, "cross-entropy mask is empty");
  require(labels.size() == logits.rows(), ErrorCode::DimensionMismatch, "one label per row required");
  LossResult r{0.0, Matrix(logits.rows(), logits.cols())};
  const double inv = 1.0 / static_cast<double>(mask.size());
  std::vector<double> p(logits.cols());
  for (std::size_t i : mask) {
    require(i < logits.rows(), ErrorCode::IndexOutOfRange, "mask index out of range");
    const int label = labels[i];
    require(label >= 0 && static_cast<std::size_t>(label) < logits.cols(), ErrorCode::LabelOutOfRange,
            "masked row " + std::to_string(i) + " has label " + std::to_string(label));
    auto row = logits.row(i);
    const double mx = *std::max_element(row.begin(), row.end());
    double z = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      p[c] = std::exp(row[c] - mx);
      z += p[c];
    }
    r.loss += (std::log(z) - (row[static_cast<std::size_t>(label)] - mx)) * inv;
    auto g = r.grad.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) g[c] += (p[c] / z - (c == static_cast<std::size_t>(label))) * inv;
  }
  return r;
}

double masked_accuracy(const Matrix& logits, std::span<const int> labels, std::span<const std::size_t> mask) {
  if (mask.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i : mask) {
    auto row = logits.row(i);
    const auto best = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    if (best == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(mask.size());
}

}  // namespace tagcn
