#include <string>

#include "tagcn/error.hpp"
#include "tagcn/nn.hpp"

namespace tagcn {

std::vector<LayerKind> Model::kinds() const {
  std::vector<LayerKind> out;
  for (const LayerSpec& l : layers) out.push_back(l.kind);
  return out;
}

void Model::check() const {
  require(!layers.empty(), ErrorCode::StaleState, "model has no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].check_shapes();
    if (l + 1 < layers.size()) {
      require(layers[l].out_width == layers[l + 1].in_width, ErrorCode::StaleState,
              "layer " + std::to_string(l) + " output width does not match the next layer's input");
    }
  }
}

std::size_t Model::num_parameters() const {
  std::size_t total = 0;
  for (const LayerSpec& l : layers) {
    for (const Matrix& w : l.weights) total += w.size();
    total += l.bias.size();
  }
  return total;
}

Model make_model(const Architecture& arch, Rng& rng) {
  require(arch.input_width > 0 && arch.num_classes > 0, ErrorCode::InvalidArgument,
          "model needs positive input width and class count");
  Model model;
  if (arch.kind == LayerKind::DCNN) {
    model.layers.push_back(make_layer(LayerKind::DCNN, arch.input_width, 0, arch.filter_size));
    model.layers.push_back(
        make_layer(LayerKind::TAGCN, model.layers.back().out_width, arch.num_classes, 0, true));
  } else {
    std::size_t in = arch.input_width;
    std::vector<std::size_t> widths = arch.hidden_widths;
    widths.push_back(arch.num_classes);
    for (std::size_t w : widths) {
      require(w > 0, ErrorCode::InvalidArgument, "hidden widths must be positive");
      model.layers.push_back(make_layer(arch.kind, in, w, arch.filter_size, arch.include_k0));
      in = w;
    }
  }
  for (LayerSpec& l : model.layers) glorot_init(l, rng);
  return model;
}

Matrix model_forward(const Model& model, const GraphOperators& ops, const Matrix& x, Mode mode,
                     double dropout_rate, Rng* rng, ForwardState* state) {
  model.check();
  const bool drop = mode == Mode::Train && dropout_rate > 0.0;
  require(dropout_rate >= 0.0 && dropout_rate < 1.0, ErrorCode::InvalidRate, "dropout rate must lie in [0, 1)");
  require(!drop || rng != nullptr, ErrorCode::InvalidArgument, "training-mode dropout needs a generator");
  if (state) {
    state->caches.assign(model.layers.size(), {});
    state->pre_activations.assign(model.layers.size(), {});
    state->dropout_masks.assign(model.layers.size(), {});
  }
  Matrix h = x;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    Matrix z = layer_forward(model.layers[l], ops, h, state ? &state->caches[l] : nullptr);
    if (l + 1 == model.layers.size()) {
      if (state) {
        state->pre_activations[l] = z;
        state->logits = z;
      }
      return z;
    }
    Matrix a = relu(z);
    if (state) state->pre_activations[l] = std::move(z);
    if (drop) {
      auto d = inverted_dropout(a, dropout_rate, *rng);
      a = std::move(d.output);
      if (state) state->dropout_masks[l] = std::move(d.mask);
    }
    h = std::move(a);
  }
  return h;
}

ModelGrads model_backward(const Model& model, const GraphOperators& ops, const ForwardState& state,
                          const Matrix& grad_logits, bool want_input_grad) {
  model.check();
  const std::size_t depth = model.layers.size();
  require(state.caches.size() == depth && state.pre_activations.size() == depth, ErrorCode::StaleState,
          "forward state was recorded for a different model");
  require(grad_logits.same_shape(state.logits), ErrorCode::StaleState, "logit gradient shape mismatch");

  ModelGrads grads;
  grads.layers.resize(depth);
  Matrix g = grad_logits;
  for (std::size_t l = depth; l-- > 0;) {
    Matrix dx;
    const bool need_dx = l > 0 || want_input_grad;
    grads.layers[l] = layer_backward(model.layers[l], ops, state.caches[l], g, need_dx ? &dx : nullptr);
    if (l == 0) {
      if (want_input_grad) grads.input = std::move(dx);
      break;
    }
    const Matrix& mask = state.dropout_masks[l - 1];
    const Matrix& pre = state.pre_activations[l - 1];
    require(pre.same_shape(dx), ErrorCode::StaleState, "cached activation shape mismatch");
    auto dv = dx.values();
    auto pv = pre.values();
    if (!mask.empty()) {
      auto mv = mask.values();
      for (std::size_t i = 0; i < dv.size(); ++i) dv[i] *= mv[i];
    }
    for (std::size_t i = 0; i < dv.size(); ++i)
      if (!(pv[i] > 0.0)) dv[i] = 0.0;
    g = std::move(dx);
  }
  return grads;
}

std::vector<std::span<double>> parameter_spans(Model& model) {
  std::vector<std::span<double>> out;
  for (LayerSpec& l : model.layers) {
    for (Matrix& w : l.weights) out.push_back(w.values());
    if (!l.bias.empty()) out.emplace_back(l.bias);
  }
  return out;
}

std::vector<std::span<const double>> parameter_spans(const Model& model) {
  std::vector<std::span<const double>> out;
  for (const LayerSpec& l : model.layers) {
    for (const Matrix& w : l.weights) out.push_back(w.values());
    if (!l.bias.empty()) out.emplace_back(l.bias);
  }
  return out;
}

std::vector<std::span<double>> gradient_spans(ModelGrads& grads) {
  std::vector<std::span<double>> out;
  for (LayerGrads& l : grads.layers) {
    for (Matrix& w : l.weights) out.push_back(w.values());
    if (!l.bias.empty()) out.emplace_back(l.bias);
  }
  return out;
}

}  // namespace tagcn
