#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "tagcn/data.hpp"
#include "tagcn/error.hpp"

namespace tagcn {

std::string_view to_string(SbmSignal s) {
  return s == SbmSignal::Direct ? "direct" : "two_hop";
}

SbmSignal parse_sbm_signal(std::string_view name) {
  if (name == "direct") return SbmSignal::Direct;
  if (name == "two_hop" || name == "two-hop") return SbmSignal::TwoHop;
  fail(ErrorCode::InvalidArgument, "unknown SBM signal '" + std::string(name) + "'");
}

namespace {

std::vector<std::vector<double>> class_directions(std::size_t classes, std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> mu(classes, std::vector<double>(dim));
  for (auto& m : mu)
    for (double& v : m) v = gauss(rng);
  if (classes > 1) {
    std::vector<double> mean(dim, 0.0);
    for (const auto& m : mu)
      for (std::size_t j = 0; j < dim; ++j) mean[j] += m[j];
    for (auto& m : mu)
      for (std::size_t j = 0; j < dim; ++j) m[j] -= mean[j] / static_cast<double>(classes);
  }
  for (auto& m : mu) {
    double norm = 0.0;
    for (double v : m) norm += v * v;
    norm = std::sqrt(norm);
    require(norm > 0.0, ErrorCode::InvalidArgument, "degenerate class direction");
    for (double& v : m) v /= norm;
  }
  return mu;
}

}  // namespace

Dataset generate_sbm(const SbmConfig& cfg) {
  require(!cfg.block_sizes.empty(), ErrorCode::InvalidArgument, "SBM needs at least one block");
  for (std::size_t b : cfg.block_sizes) require(b > 0, ErrorCode::InvalidArgument, "SBM blocks must be non-empty");
  require(cfg.p_in >= 0.0 && cfg.p_in <= 1.0 && cfg.p_out >= 0.0 && cfg.p_out <= 1.0, ErrorCode::InvalidArgument,
          "edge probabilities must lie in [0, 1]");
  require(cfg.feature_dim > 0, ErrorCode::InvalidArgument, "feature_dim must be positive");
  require(std::isfinite(cfg.signal_strength) && std::isfinite(cfg.noise_std) && cfg.noise_std >= 0.0,
          ErrorCode::InvalidArgument, "signal strength and noise must be finite, noise nonnegative");

  const std::size_t classes = cfg.block_sizes.size();
  const std::size_t n = std::accumulate(cfg.block_sizes.begin(), cfg.block_sizes.end(), std::size_t{0});
  for (std::size_t b : cfg.block_sizes)
    require(cfg.train_per_class < b, ErrorCode::InvalidArgument, "train_per_class must be smaller than every block");
  require(cfg.train_per_class * classes + cfg.val_size < n, ErrorCode::InvalidArgument,
          "train and validation sets leave no test vertices");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Dataset d;
  d.num_nodes = n;
  d.num_classes = classes;
  d.labels.resize(n);
  {
    std::size_t v = 0;
    for (std::size_t c = 0; c < classes; ++c)
      for (std::size_t k = 0; k < cfg.block_sizes[c]; ++k) d.labels[v++] = static_cast<int>(c);
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = d.labels[i] == d.labels[j] ? cfg.p_in : cfg.p_out;
      if (unif(rng) < p) edges.push_back({i, j, 1.0});
    }
  }
  auto built = build_dataset_graph(std::move(edges), n);
  d.edges = std::move(built.edges);
  d.graph = std::move(built.graph);
  d.stats = built.stats;

  const auto mu = class_directions(classes, cfg.feature_dim, rng);
  std::normal_distribution<double> noise(0.0, 1.0);
  d.features = Matrix(n, cfg.feature_dim);
  for (double& v : d.features.values()) v = cfg.noise_std * noise(rng);

  if (cfg.signal == SbmSignal::Direct) {
    for (std::size_t i = 0; i < n; ++i) {
      auto row = d.features.row(i);
      for (std::size_t j = 0; j < cfg.feature_dim; ++j) row[j] += cfg.signal_strength * mu[d.labels[i]][j];
    }
  } else {
    std::vector<std::vector<std::size_t>> nbrs(n);
    for (const Edge& e : d.edges) {
      if (e.src == e.dst) continue;
      nbrs[e.src].push_back(e.dst);
      nbrs[e.dst].push_back(e.src);
    }
    std::vector<std::size_t> mark(n, n);  // mark[v] == i when v is within distance 1 of i
    std::vector<std::size_t> seen(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      mark[i] = i;
      for (std::size_t u : nbrs[i]) mark[u] = i;
      std::vector<std::size_t> two_hop;
      for (std::size_t u : nbrs[i]) {
        for (std::size_t w : nbrs[u]) {
          if (mark[w] == i || seen[w] == i) continue;
          seen[w] = i;
          two_hop.push_back(w);
        }
      }
      if (two_hop.empty()) continue;
      std::sort(two_hop.begin(), two_hop.end());
      const double scale = cfg.signal_strength / std::sqrt(static_cast<double>(two_hop.size()));
      for (std::size_t w : two_hop) {
        auto row = d.features.row(w);
        for (std::size_t j = 0; j < cfg.feature_dim; ++j) row[j] += scale * mu[d.labels[i]][j];
      }
    }
  }

  std::vector<std::size_t> rest;
  std::size_t start = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    std::vector<std::size_t> members(cfg.block_sizes[c]);
    std::iota(members.begin(), members.end(), start);
    start += cfg.block_sizes[c];
    std::shuffle(members.begin(), members.end(), rng);
    d.train_idx.insert(d.train_idx.end(), members.begin(), members.begin() + cfg.train_per_class);
    rest.insert(rest.end(), members.begin() + cfg.train_per_class, members.end());
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  d.val_idx.assign(rest.begin(), rest.begin() + cfg.val_size);
  d.test_idx.assign(rest.begin() + cfg.val_size, rest.end());
  std::sort(d.train_idx.begin(), d.train_idx.end());
  std::sort(d.val_idx.begin(), d.val_idx.end());
  std::sort(d.test_idx.begin(), d.test_idx.end());
  return d;
}

}  // namespace tagcn
