#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tagcn/checkpoint.hpp"
#include "tagcn/data.hpp"
#include "tagcn/error.hpp"
#include "tagcn/filters.hpp"
#include "tagcn/spectral.hpp"
#include "tagcn/theory.hpp"
#include "tagcn/trainer.hpp"

using json = nlohmann::ordered_json;
using namespace tagcn;

namespace {

std::string resolve_dataset(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name)) return name;
  if (const char* dir = std::getenv("TAGCN_DATA_DIR")) {
    fs::path p = fs::path(dir) / name;
    if (fs::is_regular_file(p)) return p.string();
    p += ".tagcn";
    if (fs::is_regular_file(p)) return p.string();
  }
  fail(ErrorCode::IoError, "dataset '" + name + "' not found (checked the path and TAGCN_DATA_DIR)");
}

Dataset open_dataset(const std::string& name, bool row_normalize) {
  Dataset d = load_dataset(resolve_dataset(name));
  if (row_normalize) row_normalize_features(d);
  return d;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path);
  out << text;
  require(static_cast<bool>(out), ErrorCode::IoError, "failed writing " + path);
}

void emit(const json& j) { std::cout << j.dump() << '\n' << std::flush; }

json complex_array(std::span<const Complex> values) {
  json out = json::array();
  for (const Complex& c : values) out.push_back({c.real(), c.imag()});
  return out;
}

json config_json(const TrainConfig& c) {
  return {{"layer", std::string(to_string(c.layer_kind))},
          {"shift", std::string(to_string(c.shift_kind))},
          {"filter_size", c.filter_size},
          {"include_k0", c.include_k0},
          {"hidden_units", c.hidden_units},
          {"learning_rate", c.learning_rate},
          {"adam_beta1", c.adam_beta1},
          {"adam_beta2", c.adam_beta2},
          {"adam_eps", c.adam_eps},
          {"max_epochs", c.max_epochs},
          {"early_stop_window", c.early_stop_window},
          {"dropout_rate", c.dropout_rate},
          {"weight_decay", c.weight_decay},
          {"seed", c.seed},
          {"num_runs", c.num_runs}};
}

// Conventions the training protocol leaves open, stated so every run is auditable.
json extrapolations_json(const TrainConfig& c) {
  return {{"dropout_rate", c.dropout_rate},
          {"weight_decay", c.weight_decay},
          {"weight_decay_scope", "first-layer weights"},
          {"max_epochs", c.max_epochs},
          {"adam_eps", c.adam_eps},
          {"early_stop_rule", "stop when validation loss exceeds the mean of the previous window"},
          {"model_selection", "best validation accuracy, ties to lower validation loss"},
          {"initialization", "Glorot uniform, zero bias"}};
}

json header_json(const std::string& command, const std::string& dataset, const TrainConfig& c, bool row_normalize) {
  return {{"type", "header"},
          {"command", command},
          {"dataset", dataset},
          {"row_normalize", row_normalize},
          {"config", config_json(c)},
          {"extrapolations", extrapolations_json(c)}};
}

json metrics_json(const RunMetrics& m) {
  return {{"type", "run"},
          {"seed", m.seed},
          {"epochs_run", m.epochs_run},
          {"best_epoch", m.best_epoch},
          {"early_stopped", m.early_stopped},
          {"best_val_accuracy", m.best_val_accuracy},
          {"test_accuracy", m.test_accuracy},
          {"wall_seconds", m.wall_seconds}};
}

void print_header_text(const json& header) {
  std::cerr << "# " << header["command"].get<std::string>() << " " << header["dataset"].get<std::string>() << "\n";
  for (const auto& [k, v] : header["config"].items()) std::cerr << "#   " << k << " = " << v.dump() << "\n";
  std::cerr << "# conventions not fixed by the protocol:\n";
  for (const auto& [k, v] : header["extrapolations"].items()) std::cerr << "#   " << k << " = " << v.dump() << "\n";
}

struct TrainFlags {
  TrainConfig cfg;
  std::string layer = "tagcn";
  std::string shift = "sym";
  bool no_k0 = false;
  bool row_normalize = false;
  bool json_lines = false;
  std::size_t threads = 1;
};

void add_train_flags(CLI::App* sub, TrainFlags& f, bool multi_run) {
  sub->add_option("--filter-size", f.cfg.filter_size, "Polynomial degree K")->check(CLI::Range(0, 16));
  sub->add_option("--hidden", f.cfg.hidden_units, "Hidden units")->check(CLI::Range(1, 4096));
  sub->add_option("--lr", f.cfg.learning_rate, "Adam learning rate")->check(CLI::PositiveNumber);
  sub->add_option("--dropout", f.cfg.dropout_rate, "Dropout rate in [0, 1)")->check(CLI::Range(0.0, 0.999999));
  sub->add_option("--weight-decay", f.cfg.weight_decay, "L2 penalty on first-layer weights")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--epochs", f.cfg.max_epochs, "Maximum epochs")->check(CLI::Range(0, 1000000));
  sub->add_option("--window", f.cfg.early_stop_window, "Early-stopping window")->check(CLI::Range(1, 1000000));
  sub->add_option("--seed", f.cfg.seed, "Random seed")->required();
  sub->add_option("--layer", f.layer, "Layer kind")->check(CLI::IsMember({"tagcn", "gcn", "cheb", "dcnn"}));
  sub->add_option("--shift", f.shift, "Operator for TAGCN layers")
      ->check(CLI::IsMember({"raw", "sym", "gcn", "rw"}));
  sub->add_flag("--no-k0", f.no_k0, "Drop the degree-0 term of TAGCN filters");
  sub->add_flag("--row-normalize", f.row_normalize, "Scale feature rows to unit sum");
  sub->add_flag("--json", f.json_lines, "Stream JSON lines on stdout");
  if (multi_run) {
    sub->add_option("--runs", f.cfg.num_runs, "Number of seeds")->check(CLI::Range(1, 100000));
    sub->add_option("--threads", f.threads, "Worker threads")->check(CLI::Range(1, 256));
  }
}

void finish_flags(TrainFlags& f) {
  f.cfg.layer_kind = parse_layer_kind(f.layer);
  f.cfg.shift_kind = parse_shift_kind(f.shift);
  f.cfg.include_k0 = !f.no_k0;
  f.cfg.validate();
}

int cmd_train(TrainFlags& f, const std::string& dataset, const std::string& out, const std::string& metrics_out) {
  finish_flags(f);
  f.cfg.num_runs = 1;
  const Dataset d = open_dataset(dataset, f.row_normalize);
  const json header = header_json("train", dataset, f.cfg, f.row_normalize);
  if (f.json_lines) emit(header);
  else print_header_text(header);

  EpochCallback cb;
  if (f.json_lines) {
    cb = [&](const EpochRecord& r) {
      emit({{"type", "epoch"},
            {"seed", f.cfg.seed},
            {"epoch", r.epoch},
            {"train_loss", r.train_loss},
            {"val_loss", r.val_loss},
            {"val_accuracy", r.val_accuracy}});
    };
  }
  TrainResult result = train_model(d, f.cfg, cb);
  json summary = metrics_json(result.metrics);
  summary["type"] = "summary";
  if (f.json_lines) {
    emit(summary);
  } else {
    std::printf("test accuracy %.4f (best epoch %zu of %zu)\n", result.metrics.test_accuracy,
                result.metrics.best_epoch, result.metrics.epochs_run);
  }

  if (!out.empty()) {
    Checkpoint ckpt{result.model, f.cfg.shift_kind, {}};
    ckpt.metadata["dataset"] = dataset;
    ckpt.metadata["seed"] = std::to_string(f.cfg.seed);
    ckpt.metadata["row_normalize"] = f.row_normalize ? "true" : "false";
    save_checkpoint(ckpt, out);
  }
  if (!metrics_out.empty()) {
    json full = summary;
    full["header"] = header;
    full["train_loss"] = result.metrics.train_loss;
    full["val_loss"] = result.metrics.val_loss;
    full["val_accuracy"] = result.metrics.val_accuracy;
    write_text(metrics_out, full.dump(1) + "\n");
  }
  return 0;
}

int cmd_eval(const std::string& checkpoint, const std::string& dataset, const std::string& split,
             const std::string& out) {
  const Checkpoint ckpt = load_checkpoint(checkpoint);
  const auto it = ckpt.metadata.find("row_normalize");
  const bool row_normalize = it != ckpt.metadata.end() && it->second == "true";
  const Dataset d = open_dataset(dataset, row_normalize);
  const auto kinds = ckpt.model.kinds();
  const GraphOperators ops = GraphOperators::build(d.graph, kinds, ckpt.shift_kind);
  const auto& mask = split == "train" ? d.train_idx : split == "val" ? d.val_idx : d.test_idx;
  const Evaluation e = evaluate_model(ckpt.model, ops, d, mask);
  const json j = {{"type", "eval"}, {"dataset", dataset}, {"split", split}, {"vertices", mask.size()},
                  {"loss", e.loss},   {"accuracy", e.accuracy}};
  emit(j);
  if (!out.empty()) write_text(out, j.dump(1) + "\n");
  return 0;
}

std::vector<double> parse_coeffs(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == item.size() && !item.empty() && std::isfinite(v), ErrorCode::InvalidArgument,
            "coefficient list must be comma-separated numbers, got '" + text + "'");
    out.push_back(v);
  }
  require(!out.empty(), ErrorCode::InvalidArgument, "at least one coefficient is required");
  return out;
}

int cmd_spectrum(std::size_t cyclic, const std::string& dataset, std::size_t nodes, std::uint64_t seed,
                 std::string shift, const std::string& coeffs_text, const std::string& out) {
  const int sources = (cyclic > 0) + !dataset.empty() + (nodes > 0);
  require(sources == 1, ErrorCode::InvalidArgument, "give exactly one of --cyclic, --dataset or --nodes");
  const auto coeffs = parse_coeffs(coeffs_text);

  Graph g;
  std::string source;
  if (cyclic > 0) {
    require(cyclic >= 2, ErrorCode::InvalidArgument, "cyclic graphs need at least two vertices");
    g = make_cyclic_graph(cyclic);
    source = "cyclic";
    if (shift.empty()) shift = "raw";
  } else if (!dataset.empty()) {
    g = open_dataset(dataset, false).graph;
    source = dataset;
  } else {
    g = random_connected_graph(nodes, seed);
    source = "random";
  }
  if (shift.empty()) shift = "sym";
  const ShiftOperator s = normalize(g, parse_shift_kind(shift));
  const SpectralDecomposition dec = spectral_decompose(s);
  const auto response = spectral_filter_response(coeffs, dec);

  // A cyclic shift's eigenvalues are listed as exp(-j 2 pi n / N), n = 0..N-1;
  // any other spectrum is listed by decreasing real part.
  const std::size_t n = dec.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (cyclic > 0) {
    auto frequency = [&](std::size_t i) {
      const double idx = std::round(-std::arg(dec.eigenvalues[i]) * static_cast<double>(n) / (2.0 * std::numbers::pi));
      const long long m = static_cast<long long>(idx) % static_cast<long long>(n);
      return m < 0 ? m + static_cast<long long>(n) : m;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frequency(a) < frequency(b); });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Complex x = dec.eigenvalues[a], y = dec.eigenvalues[b];
      return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
    });
  }
  std::vector<Complex> eig, resp;
  for (std::size_t i : order) {
    eig.push_back(dec.eigenvalues[i]);
    resp.push_back(response[i]);
  }
  const json j = {{"type", "spectrum"},
                  {"source", source},
                  {"nodes", n},
                  {"shift", shift},
                  {"coefficients", coeffs},
                  {"eigenvalues", complex_array(eig)},
                  {"response", complex_array(resp)},
                  {"reconstruction_residual", reconstruction_residual(dec, s.matrix)}};
  emit(j);
  if (!out.empty()) write_text(out, j.dump(1) + "\n");
  return 0;
}

int cmd_theorem1(std::size_t nodes, std::size_t layers, std::uint64_t seed, double gain, double first_gain, int power,
                 const std::string& out) {
  const Graph g = random_connected_graph(nodes, seed);
  const ShiftOperator s = normalize(g, ShiftKind::SymNormalized);
  MonomialStackSpec spec = MonomialStackSpec::uniform(layers, gain, power);
  spec.gains[0] = first_gain;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(nodes);
  for (double& v : x) v = unif(rng);

  const ConvergenceReport r = convergence_report(spec, s, x);
  const json j = {{"type", "theorem1"},
                  {"nodes", nodes},
                  {"layers", layers},
                  {"seed", seed},
                  {"gain", gain},
                  {"first_gain", first_gain},
                  {"power", power},
                  {"admissible", spec.admissible()},
                  {"cosine_per_layer", r.cosine_to_v1_per_layer},
                  {"final_cosine", r.cosine_to_v1_per_layer.back()},
                  {"final_residual", r.final_residual},
                  {"output_norm", r.output_norm},
                  {"projection_coefficient", r.projection_coefficient},
                  {"magnitude_ratio", r.magnitude_ratio},
                  {"gain_product", r.gain_product},
                  {"dominant_vector", r.dominant_vector}};
  emit(j);
  if (!out.empty()) write_text(out, j.dump(1) + "\n");
  return 0;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    require(!item.empty() && item.find_first_not_of("0123456789") == std::string::npos, ErrorCode::InvalidArgument,
            "block sizes must be comma-separated positive integers, got '" + text + "'");
    out.push_back(std::stoull(item));
  }
  return out;
}

int cmd_gen_sbm(SbmConfig cfg, const std::string& blocks, const std::string& signal, const std::string& out) {
  cfg.block_sizes = parse_sizes(blocks);
  cfg.signal = parse_sbm_signal(signal);
  const Dataset d = generate_sbm(cfg);
  write_dataset(d, out);
  emit({{"type", "gen-sbm"},
        {"path", out},
        {"nodes", d.num_nodes},
        {"edges", d.edges.size()},
        {"features", d.feature_dim()},
        {"classes", d.num_classes},
        {"signal", std::string(to_string(cfg.signal))},
        {"seed", cfg.seed},
        {"train", d.train_idx.size()},
        {"val", d.val_idx.size()},
        {"test", d.test_idx.size()},
        {"self_loops_added", d.stats.self_loops_added}});
  return 0;
}

int cmd_validate(const std::string& dataset, const std::string& reference, const std::string& out) {
  const Dataset d = open_dataset(dataset, false);
  std::optional<std::string_view> ref;
  if (!reference.empty()) ref = reference;
  const SplitReport r = validate_splits(d, ref);
  json j = {{"type", "validate-data"},
            {"dataset", dataset},
            {"nodes", d.num_nodes},
            {"edge_records", d.stats.edge_records},
            {"undirected_edges", d.stats.undirected_edges},
            {"self_loops_added", d.stats.self_loops_added},
            {"features", d.feature_dim()},
            {"classes", d.num_classes},
            {"train", r.train},
            {"val", r.val},
            {"test", r.test},
            {"label_rate", r.label_rate}};
  bool ok = true;
  if (r.reference) {
    j["reference"] = {{"name", r.reference->name},
                      {"nodes", r.reference->nodes},
                      {"edges", r.reference->edges},
                      {"classes", r.reference->classes},
                      {"features", r.reference->features},
                      {"label_rate", r.reference->label_rate}};
    j["shape_matches"] = r.shape_matches;
    j["label_rate_matches"] = r.label_rate_matches;
    j["val_size_matches"] = r.val_size_matches;
    ok = r.shape_matches && r.label_rate_matches && r.val_size_matches;
  }
  j["ok"] = ok;
  emit(j);
  if (!out.empty()) write_text(out, j.dump(1) + "\n");
  require(ok, ErrorCode::StatMismatch, "dataset statistics differ from the '" + reference + "' reference");
  return 0;
}

int cmd_reproduce(TrainFlags& f, const std::string& dataset, const std::string& out) {
  finish_flags(f);
  const Dataset d = open_dataset(dataset, f.row_normalize);
  const json header = header_json("reproduce", dataset, f.cfg, f.row_normalize);
  if (f.json_lines) emit(header);
  else print_header_text(header);

  const auto runs = run_many(d, f.cfg, f.threads);
  const RunSummary s = aggregate_runs(runs);
  json accuracies = json::array();
  for (const RunMetrics& m : runs) {
    accuracies.push_back(m.test_accuracy);
    if (f.json_lines) emit(metrics_json(m));
  }
  const json summary = {{"type", "reproduce"},
                        {"dataset", dataset},
                        {"runs", s.runs},
                        {"mean_accuracy", s.mean_accuracy},
                        {"std_accuracy", s.std_accuracy},
                        {"accuracies", accuracies}};
  if (f.json_lines) emit(summary);
  else std::printf("%s: %.1f ± %.1f (%zu runs)\n", dataset.c_str(), 100.0 * s.mean_accuracy, 100.0 * s.std_accuracy, s.runs);
  if (!out.empty()) {
    json full = summary;
    full["header"] = header;
    write_text(out, full.dump(1) + "\n");
  }
  return 0;
}

int report_error(const std::string& kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology-adaptive graph convolution toolkit"};
  app.require_subcommand(1);

  TrainFlags train_flags;
  std::string train_dataset, train_out, train_metrics;
  auto* train = app.add_subcommand("train", "Train one model");
  train->add_option("--dataset", train_dataset, "Dataset file or name under TAGCN_DATA_DIR")->required();
  train->add_option("--out", train_out, "Checkpoint path");
  train->add_option("--metrics", train_metrics, "Write full per-epoch metrics as JSON");
  add_train_flags(train, train_flags, false);

  std::string eval_ckpt, eval_dataset, eval_split = "test", eval_out;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  eval->add_option("--checkpoint", eval_ckpt, "Checkpoint path")->required();
  eval->add_option("--dataset", eval_dataset, "Dataset file or name")->required();
  eval->add_option("--split", eval_split, "Split to score")->check(CLI::IsMember({"train", "val", "test"}));
  eval->add_option("--out", eval_out, "Also write the result here");

  std::size_t spec_cyclic = 0, spec_nodes = 0;
  std::uint64_t spec_seed = 0;
  std::string spec_dataset, spec_shift, spec_coeffs = "0,1", spec_out;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and polynomial filter response");
  spectrum->add_option("--cyclic", spec_cyclic, "Directed cycle on N vertices")->check(CLI::Range(2, 512));
  spectrum->add_option("--dataset", spec_dataset, "Dataset file or name (at most 512 vertices)");
  spectrum->add_option("--nodes", spec_nodes, "Random connected graph on N vertices")->check(CLI::Range(3, 512));
  spectrum->add_option("--seed", spec_seed, "Seed for --nodes");
  spectrum->add_option("--shift", spec_shift, "Operator (default raw for --cyclic, sym otherwise)")
      ->check(CLI::IsMember({"raw", "sym", "gcn", "rw", "laplacian"}));
  spectrum->add_option("--coeffs", spec_coeffs, "Filter coefficients g_0,g_1,...");
  spectrum->add_option("--out", spec_out, "Also write the result here");

  std::size_t th_nodes = 12, th_layers = 200;
  std::uint64_t th_seed = 0;
  double th_gain = 1.0, th_first_gain = 1.0;
  int th_power = 1;
  std::string th_out;
  auto* theorem = app.add_subcommand("theorem1", "Deep monomial stack convergence report");
  theorem->add_option("--nodes", th_nodes, "Vertices of the random graph")->check(CLI::Range(3, 512));
  theorem->add_option("--layers", th_layers, "Stack depth")->check(CLI::Range(1, 100000));
  theorem->add_option("--seed", th_seed, "Seed for graph and input");
  theorem->add_option("--gain", th_gain, "Gain of layers 2..L");
  theorem->add_option("--first-gain", th_first_gain, "Gain of layer 1");
  theorem->add_option("--power", th_power, "Shift power per layer")->check(CLI::Range(1, 64));
  theorem->add_option("--out", th_out, "Also write the result here");

  SbmConfig sbm;
  std::string sbm_blocks = "200,200", sbm_signal = "two_hop", sbm_out;
  auto* gen = app.add_subcommand("gen-sbm", "Write a planted-partition dataset");
  gen->add_option("--out", sbm_out, "Dataset path")->required();
  gen->add_option("--seed", sbm.seed, "Seed");
  gen->add_option("--blocks", sbm_blocks, "Block sizes, comma-separated");
  gen->add_option("--p-in", sbm.p_in, "Within-block edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--p-out", sbm.p_out, "Cross-block edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--features", sbm.feature_dim, "Feature dimension")->check(CLI::Range(1, 100000));
  gen->add_option("--signal", sbm_signal, "Where the class signal lives")
      ->check(CLI::IsMember({"direct", "two_hop"}));
  gen->add_option("--strength", sbm.signal_strength, "Signal amplitude");
  gen->add_option("--noise", sbm.noise_std, "Feature noise standard deviation")->check(CLI::NonNegativeNumber);
  gen->add_option("--train-per-class", sbm.train_per_class, "Training vertices per class");
  gen->add_option("--val", sbm.val_size, "Validation vertices");

  std::string val_dataset, val_reference, val_out;
  auto* validate = app.add_subcommand("validate-data", "Check a dataset and its splits");
  validate->add_option("--dataset", val_dataset, "Dataset file or name")->required();
  validate->add_option("--reference", val_reference, "Compare with published statistics")
      ->check(CLI::IsMember({"cora", "citeseer", "pubmed"}));
  validate->add_option("--out", val_out, "Also write the report here");

  TrainFlags repro_flags;
  std::string repro_dataset, repro_out;
  auto* reproduce = app.add_subcommand("reproduce", "Multi-seed protocol with the published hyperparameters");
  reproduce->add_option("dataset,--dataset", repro_dataset, "Dataset file or name")->required();
  reproduce->add_option("--out", repro_out, "Write the summary JSON here");
  add_train_flags(reproduce, repro_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", e.what(), 2);
  }

  try {
    if (*train) return cmd_train(train_flags, train_dataset, train_out, train_metrics);
    if (*eval) return cmd_eval(eval_ckpt, eval_dataset, eval_split, eval_out);
    if (*spectrum)
      return cmd_spectrum(spec_cyclic, spec_dataset, spec_nodes, spec_seed, spec_shift, spec_coeffs, spec_out);
    if (*theorem) return cmd_theorem1(th_nodes, th_layers, th_seed, th_gain, th_first_gain, th_power, th_out);
    if (*gen) return cmd_gen_sbm(sbm, sbm_blocks, sbm_signal, sbm_out);
    if (*validate) return cmd_validate(val_dataset, val_reference, val_out);
    if (*reproduce) return cmd_reproduce(repro_flags, repro_dataset, repro_out);
  } catch (const Error& e) {
    return report_error(std::string(to_string(e.code())), e.what(), 1);
  } catch (const std::exception& e) {
    return report_error("InternalError", e.what(), 3);
  }
  return 0;
}
