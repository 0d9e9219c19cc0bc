#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "tagcn/data.hpp"
#include "tagcn/error.hpp"
#include "tagcn/filters.hpp"

using namespace tagcn;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kTiny = std::string(TAGCN_TEST_FIXTURES) + "/tiny.tagcn";

const std::string kHeader = "TAGCN-DATASET v1 3 2 1 2\n";
const std::string kBody = "E 0 1 1\nE 1 2 1\nY 0 0\nY 1 1\nY 2 0\nSPLIT train 0\nSPLIT test 1\n";

ErrorCode parse_code(const std::string& text, std::string* message = nullptr) {
  try {
    parse_dataset(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::InvalidArgument;
}

oracle::Dense dense(const Matrix& m) {
  oracle::Dense d(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) d[i].assign(m.row(i).begin(), m.row(i).end());
  return d;
}

}  // namespace

TEST_SUITE("data") {
  TEST_CASE("hand-written fixture loads field by field") {
    const Dataset d = load_dataset(kTiny);
    CHECK(d.num_nodes == 4);
    CHECK(d.num_classes == 2);
    CHECK(d.feature_dim() == 3);
    CHECK(d.edges.size() == 4);
    CHECK(d.graph.adjacency().at(2, 0) == 0.5);
    CHECK(d.graph.adjacency().at(0, 2) == 0.5);
    CHECK(d.graph.adjacency().is_symmetric());
    CHECK(d.features(2, 1) == -3.0);
    CHECK(d.features(3, 2) == 1e-7);
    CHECK(d.features(0, 1) == 0.0);
    CHECK(d.labels == std::vector<int>{0, 1, 0, 1});
    CHECK(d.train_idx == std::vector<std::size_t>{0, 1});
    CHECK(d.val_idx == std::vector<std::size_t>{2});
    CHECK(d.test_idx == std::vector<std::size_t>{3});
    CHECK(d.label_rate() == 0.5);
    CHECK(d.stats.self_loops_added == 0);
  }

  TEST_CASE("canonical files round-trip byte for byte") {
    const std::string text = read_file(kTiny);
    CHECK(serialize_dataset(parse_dataset(text)) == text);
    SbmConfig c;
    c.seed = 12;
    const std::string sbm = serialize_dataset(generate_sbm(c));
    CHECK(serialize_dataset(parse_dataset(sbm)) == sbm);
  }

  TEST_CASE("non-canonical input is canonicalized") {
    const std::string messy =
        "# comment\nTAGCN-DATASET v1 3 3 1 2\r\nE 1 0 1\nE 0 1 1\nE 2 1 4\n\nX 2 0 0\nY 0 0\nY 2 1\n"
        "SPLIT test 2\nSPLIT train 0\n";
    const Dataset d = parse_dataset(messy);
    CHECK(d.stats.edge_records == 3);
    CHECK(d.stats.undirected_edges == 2);
    CHECK(serialize_dataset(d) ==
          "TAGCN-DATASET v1 3 2 1 2\nE 0 1 1\nE 1 2 4\nY 0 0\nY 2 1\nSPLIT train 0\nSPLIT test 2\n");
  }

  TEST_CASE("symmetrization is idempotent") {
    const std::vector<Edge> once{{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.0}};
    const std::vector<Edge> twice{{0, 1, 1.0}, {1, 0, 1.0}, {2, 1, 2.0}, {1, 2, 2.0}, {3, 2, 1.0}};
    const auto a = build_dataset_graph(once, 4);
    const auto b = build_dataset_graph(twice, 4);
    CHECK(a.graph.adjacency().to_dense() == b.graph.adjacency().to_dense());
    const auto c = build_dataset_graph(b.edges, 4);
    CHECK(c.graph.adjacency().to_dense() == b.graph.adjacency().to_dense());
    CHECK_THROWS_AS(build_dataset_graph(std::vector<Edge>{{0, 1, 1.0}, {1, 0, 2.0}}, 2), Error);
  }

  TEST_CASE("isolated vertices receive a unit self-loop") {
    const auto g = build_dataset_graph(std::vector<Edge>{{0, 1, 1.0}}, 4);
    CHECK(g.stats.self_loops_added == 2);
    CHECK(g.graph.adjacency().at(2, 2) == 1.0);
    CHECK(g.graph.adjacency().at(3, 3) == 1.0);
    CHECK(g.edges.size() == 1);
  }

  TEST_CASE("format errors carry line numbers") {
    std::string msg;
    CHECK(parse_code("TAGCN-DATASET v2 3 2 1 2\n" + kBody, &msg) == ErrorCode::FormatError);
    CHECK(msg.find("line 1") != std::string::npos);
    CHECK(parse_code(kHeader + "E 0 1 1\nE 1 x 1\n", &msg) == ErrorCode::FormatError);
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(parse_code(kHeader + kBody + "Q 1 2\n") == ErrorCode::FormatError);
    CHECK(parse_code(kHeader + "E 0 1 1\n" + "Y 0 0\nSPLIT train 0\nSPLIT test 1\nY 1 0\n") == ErrorCode::FormatError);
    CHECK(parse_code(kHeader + kBody + "X 0 1 1\n") == ErrorCode::FormatError);
    CHECK(parse_code(kHeader + kBody + "X 0 0 inf\n") == ErrorCode::FormatError);
    CHECK(parse_code(kHeader + kBody + "Y 0 1\n") == ErrorCode::FormatError);
    CHECK(parse_code(kHeader + kBody + "E 0 7 1\n") == ErrorCode::FormatError);
    CHECK(parse_code("") == ErrorCode::FormatError);
  }

  TEST_CASE("split and label errors") {
    CHECK(parse_code(kHeader + kBody + "SPLIT val 0\n") == ErrorCode::SplitOverlap);
    CHECK(parse_code(kHeader + "E 0 1 1\nE 1 2 1\nY 0 2\n") == ErrorCode::LabelOutOfRange);
    CHECK(parse_code(kHeader + "E 0 1 1\nE 1 2 1\nY 0 0\nSPLIT train 0\nSPLIT test 2\n") ==
          ErrorCode::LabelOutOfRange);
    const Dataset no_test = parse_dataset(kHeader + "E 0 1 1\nE 1 2 1\nY 0 0\nSPLIT train 0\n");
    try {
      validate_splits(no_test);
      FAIL("expected EmptySplit");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptySplit);
    }
    Dataset overlap = parse_dataset(kHeader + kBody);
    overlap.test_idx.push_back(0);
    try {
      validate_splits(overlap);
      FAIL("expected SplitOverlap");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SplitOverlap);
    }
  }

  TEST_CASE("reference statistics") {
    const auto cora = reference_stats("cora");
    REQUIRE(cora.has_value());
    CHECK(cora->nodes == 2708);
    CHECK(cora->edges == 5429);
    CHECK(cora->classes == 7);
    CHECK(cora->features == 1433);
    CHECK(cora->label_rate == 0.052);
    CHECK(reference_stats("citeseer")->features == 3703);
    CHECK(reference_stats("pubmed")->nodes == 19717);
    CHECK_FALSE(reference_stats("imagenet").has_value());

    const Dataset tiny = load_dataset(kTiny);
    const auto r = validate_splits(tiny, "cora");
    CHECK_FALSE(r.shape_matches);
    CHECK_FALSE(r.label_rate_matches);
    CHECK_FALSE(r.val_size_matches);
  }

  TEST_CASE("row normalization") {
    Dataset d = load_dataset(kTiny);
    row_normalize_features(d);
    CHECK(d.features(3, 0) + d.features(3, 2) == doctest::Approx(1.0));
    CHECK(d.features(2, 1) == 1.0);
  }

  TEST_CASE("planted partition extremes") {
    SbmConfig c;
    c.block_sizes = {6, 7};
    c.p_in = 1.0;
    c.p_out = 0.0;
    c.train_per_class = 2;
    c.val_size = 3;
    const Dataset d = generate_sbm(c);
    CHECK(d.edges.size() == 6 * 5 / 2 + 7 * 6 / 2);
    for (const Edge& e : d.edges) CHECK(d.labels[e.src] == d.labels[e.dst]);
    CHECK(d.train_idx.size() == 4);
    CHECK(d.val_idx.size() == 3);
    CHECK(d.test_idx.size() == 6);
    validate_splits(d);

    SbmConfig bad = c;
    bad.p_in = 1.5;
    CHECK_THROWS_AS(generate_sbm(bad), Error);
    bad = c;
    bad.block_sizes = {6, 0};
    CHECK_THROWS_AS(generate_sbm(bad), Error);
    bad = c;
    bad.val_size = 9;
    CHECK_THROWS_AS(generate_sbm(bad), Error);
  }

  TEST_CASE("generator is deterministic per seed") {
    SbmConfig c;
    c.seed = 77;
    CHECK(serialize_dataset(generate_sbm(c)) == serialize_dataset(generate_sbm(c)));
    SbmConfig other = c;
    other.seed = 78;
    CHECK(serialize_dataset(generate_sbm(c)) != serialize_dataset(generate_sbm(other)));
  }

  TEST_CASE("edge counts stay within five standard deviations of the expectation") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SbmConfig c;
      c.block_sizes = {150, 100, 50};
      c.p_in = 0.05;
      c.p_out = 0.01;
      c.seed = seed;
      c.train_per_class = 5;
      c.val_size = 20;
      const Dataset d = generate_sbm(c);
      double within = 0.0, across = 0.0;
      for (std::size_t a = 0; a < 3; ++a) {
        const double na = static_cast<double>(c.block_sizes[a]);
        within += na * (na - 1) / 2;
        for (std::size_t b = a + 1; b < 3; ++b) across += na * static_cast<double>(c.block_sizes[b]);
      }
      std::size_t in_edges = 0, out_edges = 0;
      for (const Edge& e : d.edges) (d.labels[e.src] == d.labels[e.dst] ? in_edges : out_edges)++;
      CHECK(std::abs(in_edges - within * c.p_in) <= 5 * std::sqrt(within * c.p_in * (1 - c.p_in)));
      CHECK(std::abs(out_edges - across * c.p_out) <= 5 * std::sqrt(across * c.p_out * (1 - c.p_out)));
    }
  }

  TEST_CASE("two-hop signal is invisible to raw and one-hop features but visible after two hops") {
    double raw = 0.0, one = 0.0, two = 0.0;
    const int seeds = 10;
    for (int seed = 0; seed < seeds; ++seed) {
      SbmConfig c;
      c.seed = static_cast<std::uint64_t>(seed);
      const Dataset d = generate_sbm(c);
      const ShiftOperator s = normalize(d.graph, ShiftKind::SymNormalized);
      const Matrix ax = spmm(s, d.features);
      const Matrix a2x = spmm(s, ax);
      // L2 weight 1 / |train| per sample, the usual unit-strength ridge penalty
      const double l2 = 1.0 / static_cast<double>(d.train_idx.size());
      raw += oracle::logistic_accuracy(dense(d.features), d.labels, d.train_idx, d.test_idx, 3000, 0.1, l2) / seeds;
      one += oracle::logistic_accuracy(dense(ax), d.labels, d.train_idx, d.test_idx, 3000, 0.1, l2) / seeds;
      two += oracle::logistic_accuracy(dense(a2x), d.labels, d.train_idx, d.test_idx, 3000, 0.1, l2) / seeds;
    }
    MESSAGE("logistic accuracy raw " << raw << " A " << one << " A^2 " << two);
    CHECK(std::abs(raw - 0.5) < 0.06);
    CHECK(std::abs(one - 0.5) < 0.06);
    CHECK(two >= raw + 0.1);
  }

  TEST_CASE("direct signal is linearly separable") {
    SbmConfig c;
    c.block_sizes = {100, 100};
    c.signal = SbmSignal::Direct;
    c.val_size = 40;
    const Dataset d = generate_sbm(c);
    CHECK(oracle::logistic_accuracy(dense(d.features), d.labels, d.train_idx, d.test_idx) >= 0.95);
    CHECK(parse_sbm_signal("two_hop") == SbmSignal::TwoHop);
    CHECK(to_string(SbmSignal::Direct) == "direct");
  }
}
