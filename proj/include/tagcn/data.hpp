#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagcn/graph.hpp"
#include "tagcn/matrix.hpp"

namespace tagcn {

/// Counts gathered while assembling a dataset graph.
struct GraphStats {
  std::size_t edge_records = 0;       // E lines as written
  std::size_t undirected_edges = 0;   // distinct unordered pairs
  std::size_t stored_entries = 0;     // nonzeros of the symmetric adjacency
  std::size_t self_loops_added = 0;   // unit loops given to isolated vertices
};

/// Node features, labels and Planetoid-style splits over an undirected graph.
struct Dataset {
  std::size_t num_nodes = 0;
  std::size_t num_classes = 0;
  /// Distinct undirected edges with src <= dst, sorted; the serialized form.
  std::vector<Edge> edges;
  Graph graph;
  Matrix features;          // N x D, densified
  std::vector<int> labels;  // -1 when unlabeled
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> val_idx;
  std::vector<std::size_t> test_idx;
  GraphStats stats;

  std::size_t feature_dim() const noexcept { return features.cols(); }
  double label_rate() const noexcept {
    return num_nodes == 0 ? 0.0 : static_cast<double>(train_idx.size()) / static_cast<double>(num_nodes);
  }
};

/// Canonicalizes an undirected edge list (src <= dst, sorted, duplicates
/// merged) and builds the symmetric graph. Vertices with no edge receive a unit
/// self-loop so every normalization stays defined; the count is reported.
/// Conflicting weights for the same pair raise DuplicateEdge.
struct DatasetGraph {
  std::vector<Edge> edges;
  Graph graph;
  GraphStats stats;
};
DatasetGraph build_dataset_graph(std::vector<Edge> edges, std::size_t num_nodes);

/// Parses the text format described in docs/dataset-format.md.
/// Throws FormatError (with a line number), SplitOverlap or LabelOutOfRange.
Dataset parse_dataset(std::string_view text);
Dataset load_dataset(const std::string& path);

/// Canonical serialization; parse_dataset(serialize_dataset(d)) reproduces d
/// and serializing a canonical file reproduces its bytes.
std::string serialize_dataset(const Dataset& d);
void write_dataset(const Dataset& d, const std::string& path);

/// Rows scaled to unit sum (all-zero rows untouched).
void row_normalize_features(Dataset& d);

/// Published statistics of the citation benchmarks.
struct ReferenceStats {
  std::string name;
  std::size_t nodes;
  std::size_t edges;
  std::size_t classes;
  std::size_t features;
  double label_rate;
};
std::optional<ReferenceStats> reference_stats(std::string_view name);

struct SplitReport {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
  double label_rate = 0.0;
  std::optional<ReferenceStats> reference;
  bool label_rate_matches = true;
  bool shape_matches = true;
  bool val_size_matches = true;
};

/// Checks split disjointness, non-empty train and test sets, and labels of
/// every split member. With a reference, also compares N, classes, features,
/// label rate (to 3 decimals) and the 500-node validation set.
/// Throws SplitOverlap, EmptySplit, LabelOutOfRange, IndexOutOfRange.
SplitReport validate_splits(const Dataset& d, std::optional<std::string_view> reference = std::nullopt);

enum class SbmSignal { Direct, TwoHop };
std::string_view to_string(SbmSignal s);
SbmSignal parse_sbm_signal(std::string_view name);

struct SbmConfig {
  std::vector<std::size_t> block_sizes{200, 200};
  double p_in = 0.015;
  double p_out = 0.015;
  std::size_t feature_dim = 16;
  SbmSignal signal = SbmSignal::TwoHop;
  std::uint64_t seed = 0;
  double signal_strength = 3.0;
  double noise_std = 0.5;
  std::size_t train_per_class = 20;
  std::size_t val_size = 100;
};

/// Planted-partition graph with labelled blocks.
///
/// Class c owns a direction mu_c (centred across classes, unit length). With
/// `Direct`, x_i = noise + strength * mu_{c(i)}. With `TwoHop`, every vertex i
/// adds strength * mu_{c(i)} / sqrt(|T(i)|) to the features of each vertex in
/// T(i), its set of vertices at exactly distance two; a vertex's own features
/// and its neighbours' features then carry no direct trace of its class.
Dataset generate_sbm(const SbmConfig& cfg);

}  // namespace tagcn
