#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "tagcn/filters.hpp"
#include "tagcn/graph.hpp"
#include "tagcn/matrix.hpp"

namespace tagcn {

using Rng = std::mt19937_64;

std::string_view to_string(LayerKind kind);
LayerKind parse_layer_kind(std::string_view name);

/// One graph-convolution layer.
///
/// TAGCN and Cheb hold `weights[d]`, the C x F block for degree
/// d + first_degree(), plus a bias. GCN holds a single C x F block and no
/// bias. DCNN holds one (K+1) x C matrix of per-hop, per-feature gains and
/// emits C * (K+1) columns, column h * C + c carrying hop h of feature c.
struct LayerSpec {
  LayerKind kind = LayerKind::TAGCN;
  std::size_t in_width = 0;
  std::size_t out_width = 0;
  std::size_t filter_size = 0;
  bool include_k0 = true;
  std::vector<Matrix> weights;
  std::vector<double> bias;

  std::size_t first_degree() const noexcept {
    return kind == LayerKind::TAGCN && !include_k0 ? 1 : 0;
  }
  bool has_bias() const noexcept { return kind == LayerKind::TAGCN || kind == LayerKind::Cheb; }
  /// Throws StaleState when the stored blocks do not match the declared shape.
  void check_shapes() const;
};

/// Zero-initialized layer of the requested kind and shape.
LayerSpec make_layer(LayerKind kind, std::size_t in_width, std::size_t out_width, std::size_t filter_size,
                     bool include_k0 = true);
/// Weights uniform in +-sqrt(6 / (C + F)), bias zero. DCNN gains use the same
/// range with F = 1.
void glorot_init(LayerSpec& layer, Rng& rng);

/// Reinterprets a TAGCN layer as a filter bank and back.
PolyFilterParams to_filter_params(const LayerSpec& layer);
LayerSpec from_filter_params(const PolyFilterParams& p);

/// Operators each layer kind consumes; a layer fails with WrongOperatorKind
/// when its operator is missing.
struct GraphOperators {
  std::optional<ShiftOperator> adjacency;      // TAGCN
  std::optional<ShiftOperator> renormalized;   // GCN
  std::optional<ShiftOperator> scaled_laplacian;  // Cheb
  std::optional<ShiftOperator> random_walk;    // DCNN

  /// Builds the operators needed by `kinds` from one graph. TAGCN uses
  /// `tagcn_kind` (the symmetric normalization by default).
  static GraphOperators build(const Graph& g, std::span<const LayerKind> kinds,
                              ShiftKind tagcn_kind = ShiftKind::SymNormalized);
  const ShiftOperator& for_layer(LayerKind kind) const;
};

/// Per-layer intermediate products kept for the backward pass.
struct LayerCache {
  Matrix input;
  std::vector<Matrix> basis;  // A^k X, T_k(L) X or P^h X
};

/// Y = sum_k (A^k X) W_k + 1 b^T.
Matrix tagcn_forward(const LayerSpec& layer, const ShiftOperator& s, const Matrix& x,
                     LayerCache* cache = nullptr);
/// Y = A_hat X W with A_hat the renormalized adjacency.
Matrix gcn_forward(const LayerSpec& layer, const ShiftOperator& s_hat, const Matrix& x,
                   LayerCache* cache = nullptr);
/// Y = sum_k (T_k(L) X) Theta_k + 1 b^T on a rescaled Laplacian.
Matrix cheb_forward(const LayerSpec& layer, const ShiftOperator& scaled_laplacian, const Matrix& x,
                    LayerCache* cache = nullptr);
/// Y[:, h*C + c] = g[h][c] * (P^h X)[:, c] on the random-walk matrix P.
Matrix dcnn_forward(const LayerSpec& layer, const ShiftOperator& p, const Matrix& x,
                    LayerCache* cache = nullptr);

Matrix layer_forward(const LayerSpec& layer, const GraphOperators& ops, const Matrix& x,
                     LayerCache* cache = nullptr);

struct LayerGrads {
  std::vector<Matrix> weights;
  std::vector<double> bias;
};

/// Parameter gradients of one layer given dL/dY; writes dL/dX when asked.
LayerGrads layer_backward(const LayerSpec& layer, const GraphOperators& ops, const LayerCache& cache,
                          const Matrix& grad_out, Matrix* grad_input = nullptr);

Matrix relu(const Matrix& x);

struct DropoutResult {
  Matrix output;
  Matrix mask;  // 0 for dropped entries, 1 / (1 - rate) for kept ones
};

/// Zeroes each entry with probability `rate` and rescales survivors by
/// 1 / (1 - rate). Throws InvalidRate unless 0 <= rate < 1.
DropoutResult inverted_dropout(const Matrix& x, double rate, Rng& rng);

struct LossResult {
  double loss = 0.0;
  Matrix grad;
};

/// Mean softmax cross-entropy over the rows in `mask`; zero gradient elsewhere.
LossResult masked_softmax_xent(const Matrix& logits, std::span<const int> labels,
                               std::span<const std::size_t> mask);

/// Fraction of rows in `mask` whose arg-max logit equals the label.
double masked_accuracy(const Matrix& logits, std::span<const int> labels, std::span<const std::size_t> mask);

/// An ordered layer stack; ReLU (and dropout in training) sits between
/// consecutive layers and the last layer emits class logits.
struct Model {
  std::vector<LayerSpec> layers;

  std::vector<LayerKind> kinds() const;
  /// Throws StaleState when adjacent widths do not chain.
  void check() const;
  std::size_t num_parameters() const;
};

struct Architecture {
  LayerKind kind = LayerKind::TAGCN;
  std::size_t input_width = 0;
  std::vector<std::size_t> hidden_widths{16};
  std::size_t num_classes = 0;
  std::size_t filter_size = 2;
  bool include_k0 = true;
};

/// Builds and Glorot-initializes a model. A DCNN model is one diffusion layer
/// followed by a dense classifier (a TAGCN layer of filter size 0), since the
/// diffusion layer's width is fixed by its hop count.
Model make_model(const Architecture& arch, Rng& rng);

enum class Mode { Train, Eval };

struct ForwardState {
  std::vector<LayerCache> caches;
  std::vector<Matrix> pre_activations;
  std::vector<Matrix> dropout_masks;
  Matrix logits;
};

Matrix model_forward(const Model& model, const GraphOperators& ops, const Matrix& x, Mode mode,
                     double dropout_rate, Rng* rng, ForwardState* state = nullptr);

struct ModelGrads {
  std::vector<LayerGrads> layers;
  Matrix input;
};

/// Backpropagates dL/dlogits through a stored forward pass.
/// Throws StaleState when `state` does not belong to `model`.
ModelGrads model_backward(const Model& model, const GraphOperators& ops, const ForwardState& state,
                          const Matrix& grad_logits, bool want_input_grad = false);

/// Every parameter array of the model, in a fixed order.
std::vector<std::span<double>> parameter_spans(Model& model);
std::vector<std::span<const double>> parameter_spans(const Model& model);
std::vector<std::span<double>> gradient_spans(ModelGrads& grads);

}  // namespace tagcn
