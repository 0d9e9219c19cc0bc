#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "tagcn/data.hpp"
#include "tagcn/error.hpp"

namespace tagcn {
namespace {

constexpr std::string_view kMagic = "TAGCN-DATASET";
constexpr std::string_view kVersion = "v1";

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::size_t line_no) : line_no_(line_no) {}

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::FormatError, "line " + std::to_string(line_no_) + ": " + what);
  }

  std::size_t index(std::string_view tok) const {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size()) error("expected a nonnegative integer, got '" + std::string(tok) + "'");
    return v;
  }

  long long integer(std::string_view tok) const {
    long long v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size()) error("expected an integer, got '" + std::string(tok) + "'");
    return v;
  }

  double real(std::string_view tok) const {
    double v = 0.0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size() || !std::isfinite(v))
      error("expected a finite number, got '" + std::string(tok) + "'");
    return v;
  }

  std::size_t line() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

DatasetGraph build_dataset_graph(std::vector<Edge> edges, std::size_t num_nodes) {
  require(num_nodes > 0, ErrorCode::InvalidArgument, "dataset needs at least one vertex");
  for (Edge& e : edges) {
    if (e.src >= num_nodes || e.dst >= num_nodes)
      fail(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) + ") out of range");
    if (e.src > e.dst) std::swap(e.src, e.dst);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });

  DatasetGraph out;
  out.stats.edge_records = edges.size();
  for (const Edge& e : edges) {
    if (!out.edges.empty() && out.edges.back().src == e.src && out.edges.back().dst == e.dst) {
      if (out.edges.back().weight != e.weight) {
        fail(ErrorCode::DuplicateEdge, "edge {" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                                           "} listed with conflicting weights");
      }
      continue;
    }
    out.edges.push_back(e);
  }
  out.stats.undirected_edges = out.edges.size();

  std::vector<bool> touched(num_nodes, false);
  for (const Edge& e : out.edges) touched[e.src] = touched[e.dst] = true;
  std::vector<Edge> graph_edges = out.edges;
  for (std::size_t i = 0; i < num_nodes; ++i) {
    if (!touched[i]) {
      graph_edges.push_back({i, i, 1.0});
      ++out.stats.self_loops_added;
    }
  }
  out.graph = build_graph(graph_edges, num_nodes, /*directed=*/false);
  out.stats.stored_entries = out.graph.num_stored_edges();
  return out;
}

Dataset parse_dataset(std::string_view text) {
  Dataset d;
  std::size_t declared_edges = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::map<std::pair<std::size_t, std::size_t>, double> features;
  std::vector<bool> labelled;
  std::vector<int> split_of;  // -1 when in no split

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') {
      if (nl == text.size()) break;
      continue;
    }
    LineParser p(line_no);

    if (!have_header) {
      if (tok.size() != 6 || tok[0] != kMagic || tok[1] != kVersion)
        p.error("expected header 'TAGCN-DATASET v1 <N> <num_edges> <D> <num_classes>'");
      d.num_nodes = p.index(tok[2]);
      declared_edges = p.index(tok[3]);
      const std::size_t dim = p.index(tok[4]);
      d.num_classes = p.index(tok[5]);
      if (d.num_nodes == 0) p.error("dataset needs at least one vertex");
      if (d.num_classes == 0) p.error("dataset needs at least one class");
      d.features = Matrix(d.num_nodes, dim);
      d.labels.assign(d.num_nodes, -1);
      labelled.assign(d.num_nodes, false);
      split_of.assign(d.num_nodes, -1);
      have_header = true;
      continue;
    }

    auto node = [&](std::string_view t) {
      const std::size_t v = p.index(t);
      if (v >= d.num_nodes) p.error("vertex " + std::to_string(v) + " out of range");
      return v;
    };

    if (tok[0] == "E") {
      if (tok.size() != 4) p.error("edge records are 'E src dst weight'");
      edges.push_back({node(tok[1]), node(tok[2]), p.real(tok[3])});
    } else if (tok[0] == "X") {
      if (tok.size() != 4) p.error("feature records are 'X node idx value'");
      const std::size_t v = node(tok[1]);
      const std::size_t idx = p.index(tok[2]);
      if (idx >= d.features.cols()) p.error("feature index " + std::to_string(idx) + " out of range");
      if (!features.emplace(std::make_pair(v, idx), p.real(tok[3])).second)
        p.error("feature (" + std::to_string(v) + ", " + std::to_string(idx) + ") given twice");
    } else if (tok[0] == "Y") {
      if (tok.size() != 3) p.error("label records are 'Y node label'");
      const std::size_t v = node(tok[1]);
      const long long label = p.integer(tok[2]);
      if (label < 0 || static_cast<std::size_t>(label) >= d.num_classes)
        fail(ErrorCode::LabelOutOfRange, "line " + std::to_string(line_no) + ": label " + std::to_string(label) +
                                             " outside [0, " + std::to_string(d.num_classes) + ")");
      if (labelled[v]) p.error("vertex " + std::to_string(v) + " labelled twice");
      labelled[v] = true;
      d.labels[v] = static_cast<int>(label);
    } else if (tok[0] == "SPLIT") {
      if (tok.size() != 3) p.error("split records are 'SPLIT train|val|test node'");
      int which = -1;
      std::vector<std::size_t>* target = nullptr;
      if (tok[1] == "train") {
        which = 0;
        target = &d.train_idx;
      } else if (tok[1] == "val") {
        which = 1;
        target = &d.val_idx;
      } else if (tok[1] == "test") {
        which = 2;
        target = &d.test_idx;
      } else {
        p.error("unknown split '" + std::string(tok[1]) + "'");
      }
      const std::size_t v = node(tok[2]);
      if (split_of[v] == which) p.error("vertex " + std::to_string(v) + " listed twice in one split");
      if (split_of[v] != -1)
        fail(ErrorCode::SplitOverlap, "line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                                          " belongs to two splits");
      split_of[v] = which;
      target->push_back(v);
    } else {
      p.error("unknown record type '" + std::string(tok[0]) + "'");
    }
    if (nl == text.size()) break;
  }
  if (!have_header) fail(ErrorCode::FormatError, "missing dataset header");
  if (edges.size() != declared_edges) {
    fail(ErrorCode::FormatError, "header declares " + std::to_string(declared_edges) + " edges, found " +
                                     std::to_string(edges.size()));
  }
  for (const auto& [key, value] : features) d.features(key.first, key.second) = value;

  auto built = build_dataset_graph(std::move(edges), d.num_nodes);
  d.edges = std::move(built.edges);
  d.graph = std::move(built.graph);
  d.stats = built.stats;

  for (const auto* split : {&d.train_idx, &d.val_idx, &d.test_idx})
    for (std::size_t v : *split)
      require(d.labels[v] >= 0, ErrorCode::LabelOutOfRange,
              "split member " + std::to_string(v) + " has no label");
  return d;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot read dataset " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

std::string serialize_dataset(const Dataset& d) {
  std::string out;
  out.reserve(64 + d.edges.size() * 24);
  out += std::string(kMagic) + " " + std::string(kVersion) + " " + std::to_string(d.num_nodes) + " " +
         std::to_string(d.edges.size()) + " " + std::to_string(d.feature_dim()) + " " +
         std::to_string(d.num_classes) + "\n";
  for (const Edge& e : d.edges)
    out += "E " + std::to_string(e.src) + " " + std::to_string(e.dst) + " " + format_real(e.weight) + "\n";
  for (std::size_t i = 0; i < d.features.rows(); ++i) {
    auto row = d.features.row(i);
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0.0) out += "X " + std::to_string(i) + " " + std::to_string(j) + " " + format_real(row[j]) + "\n";
  }
  for (std::size_t i = 0; i < d.labels.size(); ++i)
    if (d.labels[i] >= 0) out += "Y " + std::to_string(i) + " " + std::to_string(d.labels[i]) + "\n";
  const std::pair<const char*, const std::vector<std::size_t>*> splits[] = {
      {"train", &d.train_idx}, {"val", &d.val_idx}, {"test", &d.test_idx}};
  for (const auto& [name, idx] : splits)
    for (std::size_t v : *idx) out += "SPLIT " + std::string(name) + " " + std::to_string(v) + "\n";
  return out;
}

void write_dataset(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write dataset " + path);
  out << serialize_dataset(d);
  require(static_cast<bool>(out), ErrorCode::IoError, "failed writing " + path);
}

void row_normalize_features(Dataset& d) {
  for (std::size_t i = 0; i < d.features.rows(); ++i) {
    auto row = d.features.row(i);
    double s = 0.0;
    for (double v : row) s += v;
    if (s == 0.0) continue;
    for (double& v : row) v /= s;
  }
}

std::optional<ReferenceStats> reference_stats(std::string_view name) {
  static const ReferenceStats table[] = {
      {"cora", 2708, 5429, 7, 1433, 0.052},
      {"citeseer", 3327, 4732, 6, 3703, 0.036},
      {"pubmed", 19717, 44338, 3, 500, 0.003},
  };
  for (const auto& r : table)
    if (r.name == name) return r;
  return std::nullopt;
}

SplitReport validate_splits(const Dataset& d, std::optional<std::string_view> reference) {
  SplitReport r;
  r.train = d.train_idx.size();
  r.val = d.val_idx.size();
  r.test = d.test_idx.size();
  r.label_rate = d.label_rate();
  require(r.train > 0, ErrorCode::EmptySplit, "training split is empty");
  require(r.test > 0, ErrorCode::EmptySplit, "test split is empty");

  std::vector<int> owner(d.num_nodes, -1);
  int which = 0;
  for (const auto* split : {&d.train_idx, &d.val_idx, &d.test_idx}) {
    for (std::size_t v : *split) {
      require(v < d.num_nodes, ErrorCode::IndexOutOfRange, "split member out of range");
      require(owner[v] == -1, ErrorCode::SplitOverlap, "vertex " + std::to_string(v) + " appears in two splits");
      owner[v] = which;
      const int label = d.labels.at(v);
      require(label >= 0 && static_cast<std::size_t>(label) < d.num_classes, ErrorCode::LabelOutOfRange,
              "split member " + std::to_string(v) + " has label " + std::to_string(label));
    }
    ++which;
  }

  if (reference) {
    r.reference = reference_stats(*reference);
    require(r.reference.has_value(), ErrorCode::InvalidArgument,
            "no reference statistics for '" + std::string(*reference) + "'");
    const auto& ref = *r.reference;
    r.shape_matches = d.num_nodes == ref.nodes && d.num_classes == ref.classes && d.feature_dim() == ref.features;
    r.label_rate_matches = std::round(r.label_rate * 1000.0) == std::round(ref.label_rate * 1000.0);
    r.val_size_matches = r.val == 500;
  }
  return r;
}

}  // namespace tagcn
