#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "tagcn/error.hpp"
#include "tagcn/trainer.hpp"

namespace tagcn {

void TrainConfig::validate() const {
  require(learning_rate > 0.0 && std::isfinite(learning_rate), ErrorCode::InvalidArgument,
          "learning rate must be positive");
  require(dropout_rate >= 0.0 && dropout_rate < 1.0, ErrorCode::InvalidRate, "dropout rate must lie in [0, 1)");
  require(early_stop_window >= 1, ErrorCode::InvalidArgument, "early-stopping window must be at least 1");
  require(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0,
          ErrorCode::InvalidArgument, "Adam betas must lie in [0, 1)");
  require(adam_eps > 0.0, ErrorCode::InvalidArgument, "Adam epsilon must be positive");
  require(weight_decay >= 0.0 && std::isfinite(weight_decay), ErrorCode::InvalidArgument,
          "weight decay must be nonnegative");
  require(hidden_units >= 1, ErrorCode::InvalidArgument, "hidden units must be positive");
  require(num_runs >= 1, ErrorCode::InvalidArgument, "at least one run is required");
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamMoments& moments, std::size_t t,
               const TrainConfig& cfg, double weight_decay) {
  require(t >= 1, ErrorCode::InvalidArgument, "Adam step counter starts at 1");
  require(params.size() == grads.size(), ErrorCode::ShapeMismatch, "parameter and gradient sizes differ");
  if (moments.m.empty() && moments.v.empty()) {
    moments.m.assign(params.size(), 0.0);
    moments.v.assign(params.size(), 0.0);
  }
  require(moments.m.size() == params.size() && moments.v.size() == params.size(), ErrorCode::ShapeMismatch,
          "moment buffers do not match the parameters");
  const double b1 = cfg.adam_beta1;
  const double b2 = cfg.adam_beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i] + weight_decay * params[i];
    moments.m[i] = b1 * moments.m[i] + (1.0 - b1) * g;
    moments.v[i] = b2 * moments.v[i] + (1.0 - b2) * (g * g);
    const double m_hat = moments.m[i] / c1;
    const double v_hat = moments.v[i] / c2;
    params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
  }
}

bool early_stop_check(std::span<const double> history, std::size_t window) {
  if (window == 0 || history.size() < window + 1) return false;
  double sum = 0.0;
  for (std::size_t i = history.size() - 1 - window; i + 1 < history.size(); ++i) sum += history[i];
  return history.back() > sum / static_cast<double>(window);
}

Evaluation evaluate_model(const Model& model, const GraphOperators& ops, const Dataset& data,
                          std::span<const std::size_t> mask) {
  const Matrix logits = model_forward(model, ops, data.features, Mode::Eval, 0.0, nullptr);
  return {masked_softmax_xent(logits, data.labels, mask).loss, masked_accuracy(logits, data.labels, mask)};
}

namespace {

struct ParamSlot {
  std::span<double> values;
  double decay;
};

// Per-array parameter views in the same order as gradient_spans; weight decay
// applies to the first layer's weights only.
std::vector<ParamSlot> param_slots(Model& model, double weight_decay) {
  std::vector<ParamSlot> out;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    LayerSpec& layer = model.layers[l];
    for (Matrix& w : layer.weights) out.push_back({w.values(), l == 0 ? weight_decay : 0.0});
    if (!layer.bias.empty()) out.push_back({layer.bias, 0.0});
  }
  return out;
}

}  // namespace

TrainResult train_model(const Dataset& data, const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  require(!data.train_idx.empty(), ErrorCode::EmptySplit, "training split is empty");
  require(!data.val_idx.empty(), ErrorCode::EmptySplit, "validation split is empty");
  require(!data.test_idx.empty(), ErrorCode::EmptySplit, "test split is empty");
  validate_splits(data);
  const auto start = std::chrono::steady_clock::now();

  Rng rng(cfg.seed);
  Architecture arch;
  arch.kind = cfg.layer_kind;
  arch.input_width = data.feature_dim();
  arch.hidden_widths = {cfg.hidden_units};
  arch.num_classes = data.num_classes;
  arch.filter_size = cfg.filter_size;
  arch.include_k0 = cfg.include_k0;

  TrainResult result;
  result.model = make_model(arch, rng);
  const auto kinds = result.model.kinds();
  const GraphOperators ops = GraphOperators::build(data.graph, kinds, cfg.shift_kind);

  RunMetrics& m = result.metrics;
  m.seed = cfg.seed;
  Model best = result.model;
  double best_loss = 0.0;
  bool have_best = false;
  std::vector<AdamMoments> moments;

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    ForwardState state;
    const Matrix logits =
        model_forward(result.model, ops, data.features, Mode::Train, cfg.dropout_rate, &rng, &state);
    const LossResult loss = masked_softmax_xent(logits, data.labels, data.train_idx);
    ModelGrads grads = model_backward(result.model, ops, state, loss.grad);

    auto slots = param_slots(result.model, cfg.weight_decay);
    auto grad_views = gradient_spans(grads);
    require(slots.size() == grad_views.size(), ErrorCode::StaleState, "gradient layout does not match parameters");
    moments.resize(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i)
      adam_step(slots[i].values, grad_views[i], moments[i], epoch, cfg, slots[i].decay);

    const Evaluation val = evaluate_model(result.model, ops, data, data.val_idx);
    m.train_loss.push_back(loss.loss);
    m.val_loss.push_back(val.loss);
    m.val_accuracy.push_back(val.accuracy);
    m.epochs_run = epoch;
    if (on_epoch) on_epoch({epoch, loss.loss, val.loss, val.accuracy});

    if (!have_best || val.accuracy > m.best_val_accuracy ||
        (val.accuracy == m.best_val_accuracy && val.loss < best_loss)) {
      have_best = true;
      best = result.model;
      best_loss = val.loss;
      m.best_val_accuracy = val.accuracy;
      m.best_epoch = epoch;
    }
    if (early_stop_check(m.val_loss, cfg.early_stop_window)) {
      m.early_stopped = true;
      break;
    }
  }

  if (have_best) {
    result.model = std::move(best);
  } else {
    m.best_val_accuracy = evaluate_model(result.model, ops, data, data.val_idx).accuracy;
  }
  m.test_accuracy = evaluate_model(result.model, ops, data, data.test_idx).accuracy;
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

RunSummary aggregate_accuracies(std::span<const double> accuracies) {
  require(!accuracies.empty(), ErrorCode::EmptyList, "no runs to aggregate");
  RunSummary s;
  s.runs = accuracies.size();
  double sum = 0.0;
  for (double a : accuracies) sum += a;
  s.mean_accuracy = sum / static_cast<double>(s.runs);
  if (s.runs > 1) {
    double sq = 0.0;
    for (double a : accuracies) sq += (a - s.mean_accuracy) * (a - s.mean_accuracy);
    s.std_accuracy = std::sqrt(sq / static_cast<double>(s.runs - 1));
  }
  return s;
}

RunSummary aggregate_runs(std::span<const RunMetrics> runs) {
  std::vector<double> acc;
  acc.reserve(runs.size());
  for (const RunMetrics& r : runs) acc.push_back(r.test_accuracy);
  return aggregate_accuracies(acc);
}

std::vector<RunMetrics> run_many(const Dataset& data, const TrainConfig& cfg, std::size_t threads) {
  cfg.validate();
  std::vector<RunMetrics> out(cfg.num_runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t r = next++; r < cfg.num_runs; r = next++) {
      try {
        TrainConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed + r;
        out[r] = train_model(data, run_cfg).metrics;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, cfg.num_runs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace tagcn
