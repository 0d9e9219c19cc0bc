#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tagcn/error.hpp"
#include "tagcn/filters.hpp"
#include "tagcn/graph.hpp"

using namespace tagcn;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::vector<double> repeated_spmv(const CsrMatrix& m, std::size_t src, int k) {
  std::vector<double> x(m.n, 0.0);
  x[src] = 1.0;
  for (int i = 0; i < k; ++i) x = spmv(m, x);
  return x;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("edge weight lands at A[dst][src]") {
    const std::vector<Edge> edges{{0, 1, 2.0}, {1, 2, 3.0}, {2, 0, 4.0}};
    const Graph g = build_graph(edges, 3, true);
    CHECK(g.adjacency().at(1, 0) == 2.0);
    CHECK(g.adjacency().at(0, 1) == 0.0);
    CHECK(g.adjacency().at(0, 2) == 4.0);
    CHECK(g.num_stored_edges() == 3);

    const Graph u = build_graph(edges, 3, false);
    CHECK(u.adjacency().is_symmetric());
    CHECK(u.num_stored_edges() == 6);
  }

  TEST_CASE("construction errors") {
    CHECK(code_of([] { build_graph(std::vector<Edge>{{0, 3, 1.0}}, 3, true); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([] { build_graph(std::vector<Edge>{{0, 1, 1.0}, {0, 1, 2.0}, {1, 2, 1.0}}, 3, true); }) ==
          ErrorCode::DuplicateEdge);
    CHECK(code_of([] { build_graph(std::vector<Edge>{{0, 1, 1.0}, {1, 0, 1.0}}, 2, false); }) ==
          ErrorCode::DuplicateEdge);
    CHECK(code_of([] { build_graph(std::vector<Edge>{{0, 1, 1.0}}, 3, true); }) == ErrorCode::IsolatedVertex);
    CHECK(code_of([] { build_graph(std::vector<Edge>{{0, 1, std::nan("")}}, 2, true); }) ==
          ErrorCode::NonFiniteValue);
    CHECK(code_of([] {
            CsrMatrix m;
            m.n = 2;
            m.row_offsets = {0, 1, 1};
            m.col_indices = {1};
            m.values = {1.0};
            Graph(m, false);
          }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("worked example: the length-3 weight sum from vertex 2 to vertex 1 is 18") {
    const Graph g = fixture::graph_from_dense(fixture::worked_example_matrix(), true);
    const auto e = enumerate_paths(g, 1, 0, 3);
    CHECK(e.weight_sum == 18.0);
    CHECK(e.num_paths == 6);
    std::vector<std::vector<std::size_t>> expected{{1, 0, 1, 0}, {1, 0, 3, 0}, {1, 0, 4, 0},
                                                   {1, 2, 1, 0}, {1, 3, 1, 0}, {1, 3, 4, 0}};
    auto got = e.paths;
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
    CHECK(repeated_spmv(g.adjacency(), 1, 3)[0] == 18.0);
    CHECK(oracle::power(fixture::worked_example_matrix(), 3)[0][1] == 18.0);
  }

  TEST_CASE("path sums equal matrix powers and brute-force enumeration") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + trial % 7;
      const auto a = fixture::random_integer_digraph(n, 5, 0.35, rng);
      const Graph g = fixture::graph_from_dense(a, true);
      for (int k = 0; k <= 4; ++k) {
        const auto ak = oracle::power(a, k);
        for (std::size_t src = 0; src < n; ++src) {
          const auto col = repeated_spmv(g.adjacency(), src, k);
          for (std::size_t dst = 0; dst < n; ++dst) {
            REQUIRE(col[dst] == ak[dst][src]);
            REQUIRE(path_weight_sum(g, src, dst, k) == ak[dst][src]);
            REQUIRE(oracle::brute_force_paths(a, src, dst, k) == ak[dst][src]);
          }
        }
      }
    }
  }

  TEST_CASE("path enumeration limits") {
    const Graph g = make_cyclic_graph(4);
    CHECK(path_weight_sum(g, 0, 0, 0) == 1.0);
    CHECK(path_weight_sum(g, 0, 1, 0) == 0.0);
    CHECK(path_weight_sum(g, 0, 3, 3) == 1.0);
    CHECK(code_of([&] { path_weight_sum(g, 0, 1, kMaxEnumeratedPathLength + 1); }) == ErrorCode::PathLengthTooLarge);
    CHECK(code_of([&] { path_weight_sum(g, 0, 9, 1); }) == ErrorCode::IndexOutOfRange);
  }

  TEST_CASE("normalizations match dense formulas") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const Graph g = random_connected_graph(5 + trial, 100 + trial);
      const auto a = fixture::to_dense(g.adjacency());
      const std::size_t n = a.size();
      std::vector<double> d(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (double v : a[i]) d[i] += v;

      const auto sym = fixture::to_dense(normalize(g, ShiftKind::SymNormalized).matrix);
      const auto expect_sym = oracle::sym_normalized(a);
      auto a_loop = a;
      for (std::size_t i = 0; i < n; ++i) a_loop[i][i] += 1.0;
      const auto gcn = fixture::to_dense(normalize(g, ShiftKind::GcnRenormalized).matrix);
      const auto expect_gcn = oracle::sym_normalized(a_loop);
      const auto rw = fixture::to_dense(normalize(g, ShiftKind::RandomWalk).matrix);
      const auto lap = fixture::to_dense(normalize(g, ShiftKind::Laplacian).matrix);
      const auto raw = fixture::to_dense(normalize(g, ShiftKind::Raw).matrix);
      for (std::size_t i = 0; i < n; ++i) {
        double rw_sum = 0.0, lap_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(sym[i][j] == doctest::Approx(expect_sym[i][j]).epsilon(1e-14));
          CHECK(gcn[i][j] == doctest::Approx(expect_gcn[i][j]).epsilon(1e-14));
          CHECK(rw[i][j] == doctest::Approx(a[i][j] / d[i]).epsilon(1e-14));
          CHECK(lap[i][j] == doctest::Approx((i == j ? d[i] : 0.0) - a[i][j]).epsilon(1e-14));
          CHECK(raw[i][j] == a[i][j]);
          rw_sum += rw[i][j];
          lap_sum += lap[i][j];
        }
        CHECK(rw_sum == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(lap_sum) < 1e-12);
      }
    }
  }

  TEST_CASE("normalization errors") {
    const Graph directed = make_cyclic_graph(5);
    CHECK(code_of([&] { normalize(directed, ShiftKind::Laplacian); }) == ErrorCode::DirectedLaplacian);
    const Graph neg = build_graph(std::vector<Edge>{{0, 1, -1.0}, {1, 2, 1.0}}, 3, false);
    CHECK(code_of([&] { normalize(neg, ShiftKind::SymNormalized); }) == ErrorCode::NegativeWeight);
    CHECK(normalize(neg, ShiftKind::Raw).matrix.at(1, 0) == -1.0);
    const Graph cancel = build_graph(std::vector<Edge>{{0, 1, 1.0}, {0, 2, -1.0}, {1, 2, 1.0}}, 3, false);
    CHECK(code_of([&] { normalize(cancel, ShiftKind::RandomWalk); }) == ErrorCode::NegativeWeight);
  }

  TEST_CASE("sparse products agree with dense ones") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 3 + trial % 6;
      const auto a = fixture::random_integer_digraph(n, 4, 0.4, rng);
      const Graph g = fixture::graph_from_dense(a, true);
      const auto x = fixture::random_vector(n, rng);
      CHECK(oracle::max_abs_diff(spmv(g.adjacency(), x), oracle::matvec(a, x)) < 1e-12);
      CHECK(oracle::max_abs_diff(spmv_transposed(g.adjacency(), x), oracle::matvec(oracle::transpose(a), x)) < 1e-12);
      Matrix xm(n, 3);
      for (double& v : xm.values()) v = std::uniform_real_distribution<double>(-1, 1)(rng);
      const Matrix y = spmm(g.adjacency(), xm);
      const Matrix yt = spmm_transposed(g.adjacency(), xm);
      for (std::size_t c = 0; c < 3; ++c) {
        const auto col = xm.col(c);
        CHECK(oracle::max_abs_diff(y.col(c), oracle::matvec(a, col)) < 1e-12);
        CHECK(oracle::max_abs_diff(yt.col(c), oracle::matvec(oracle::transpose(a), col)) < 1e-12);
      }
      CHECK(fixture::to_dense(transpose(g.adjacency())) == oracle::transpose(a));
    }
  }

  TEST_CASE("spmv is bit-reproducible") {
    const Graph g = random_connected_graph(40, 5);
    std::mt19937_64 rng(1);
    const auto x = fixture::random_vector(40, rng);
    CHECK(spmv(g.adjacency(), x) == spmv(g.adjacency(), x));
  }

  TEST_CASE("strong connectivity") {
    CHECK(is_strongly_connected(make_cyclic_graph(6).adjacency()));
    const Graph chain = build_graph(std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}}, 3, true);
    CHECK_FALSE(is_strongly_connected(chain.adjacency()));
    CHECK(is_strongly_connected(random_connected_graph(12, 4).adjacency()));
  }

  TEST_CASE("relabelling permutes matrix powers") {
    std::mt19937_64 rng(19);
    const auto a = fixture::random_integer_digraph(6, 3, 0.4, rng);
    const Graph g = fixture::graph_from_dense(a, true);
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = relabel(g, perm);
    for (std::size_t s = 0; s < 6; ++s)
      for (std::size_t d = 0; d < 6; ++d)
        CHECK(path_weight_sum(g, s, d, 3) == path_weight_sum(h, perm[s], perm[d], 3));
  }

  TEST_CASE("random connected graphs are connected, non-bipartite and seeded") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const std::size_t n = 3 + seed % 20;
      RandomGraphOptions opts;
      opts.edge_prob = seed % 3 == 0 ? 0.0 : 0.2;
      const Graph g = random_connected_graph(n, seed, opts);
      CHECK(g.adjacency().is_symmetric());
      CHECK(is_strongly_connected(g.adjacency()));
      const auto a = fixture::to_dense(g.adjacency());
      const auto a3 = oracle::power(a, static_cast<int>(2 * (n / 2) + 1));
      double odd_closed = 0.0;
      for (std::size_t i = 0; i < n; ++i) odd_closed += a3[i][i];
      CHECK(odd_closed > 0.0);
      CHECK(fixture::to_dense(random_connected_graph(n, seed, opts).adjacency()) == a);
    }
  }
}
