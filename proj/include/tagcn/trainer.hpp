#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tagcn/data.hpp"
#include "tagcn/graph.hpp"
#include "tagcn/nn.hpp"

namespace tagcn {

struct TrainConfig {
  LayerKind layer_kind = LayerKind::TAGCN;
  ShiftKind shift_kind = ShiftKind::SymNormalized;  // operator used by TAGCN layers
  double learning_rate = 0.01;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::size_t max_epochs = 300;
  std::size_t early_stop_window = 45;
  double dropout_rate = 0.5;
  double weight_decay = 5e-4;  // L2 penalty on the first layer's weights
  std::size_t hidden_units = 16;
  std::size_t filter_size = 2;
  bool include_k0 = true;
  std::uint64_t seed = 0;
  std::size_t num_runs = 10;

  /// Throws InvalidArgument or InvalidRate.
  void validate() const;
};

struct AdamMoments {
  std::vector<double> m;
  std::vector<double> v;
};

/// One bias-corrected Adam update at step t >= 1. The L2 term
/// weight_decay * p is added to the gradient before the moments are updated.
/// Empty moments are zero-initialized. Throws ShapeMismatch or InvalidArgument.
void adam_step(std::span<double> params, std::span<const double> grads, AdamMoments& moments, std::size_t t,
               const TrainConfig& cfg, double weight_decay);

/// True when the last validation loss exceeds the mean of the `window` losses
/// before it. Never true while fewer than window + 1 losses are recorded.
bool early_stop_check(std::span<const double> history, std::size_t window);

struct RunMetrics {
  std::uint64_t seed = 0;
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  std::vector<double> val_accuracy;
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;  // 0 means the initial parameters were kept
  double best_val_accuracy = 0.0;
  double test_accuracy = 0.0;
  double wall_seconds = 0.0;
  bool early_stopped = false;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

struct TrainResult {
  Model model;
  RunMetrics metrics;
};

/// Full-batch training on the train split with early stopping on validation
/// loss. The parameters with the best validation accuracy (ties go to the
/// lower validation loss) are restored before measuring test accuracy.
TrainResult train_model(const Dataset& data, const TrainConfig& cfg, const EpochCallback& on_epoch = {});

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Eval-mode loss and accuracy of `model` over the vertices in `mask`.
Evaluation evaluate_model(const Model& model, const GraphOperators& ops, const Dataset& data,
                          std::span<const std::size_t> mask);

struct RunSummary {
  std::size_t runs = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample standard deviation, 0 for one run
};

/// Throws EmptyList.
RunSummary aggregate_accuracies(std::span<const double> accuracies);
RunSummary aggregate_runs(std::span<const RunMetrics> runs);

/// cfg.num_runs independent runs with seeds cfg.seed, cfg.seed + 1, ...
/// spread over up to `threads` workers. Results are ordered by seed and do not
/// depend on the thread count.
std::vector<RunMetrics> run_many(const Dataset& data, const TrainConfig& cfg, std::size_t threads = 1);

}  // namespace tagcn
