#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tagcn/error.hpp"
#include "tagcn/filters.hpp"
#include "tagcn/spectral.hpp"

using namespace tagcn;

namespace {

double max_deviation(const std::vector<Complex>& spectral, const std::vector<double>& vertex) {
  double m = 0.0;
  for (std::size_t i = 0; i < vertex.size(); ++i) m = std::max(m, std::abs(spectral[i] - vertex[i]));
  return m;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("symmetric decomposition reconstructs the operator") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ShiftOperator s = normalize(random_connected_graph(6 + seed * 2, seed), ShiftKind::SymNormalized);
      const auto d = spectral_decompose(s);
      CHECK(reconstruction_residual(d, s.matrix) < 1e-12);
      CHECK(biorthogonality_residual(d) < 1e-12);
      for (const Complex& l : d.eigenvalues) {
        CHECK(l.imag() == 0.0);
        CHECK(std::abs(l.real()) <= 1.0 + 1e-12);
      }
    }
  }

  TEST_CASE("vertex-domain and spectral filtering agree") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 4 + trial;
      const ShiftOperator s = normalize(random_connected_graph(n, 1000 + trial), ShiftKind::SymNormalized);
      const auto d = spectral_decompose(s);
      const auto coeffs = fixture::random_vector(1 + trial % 4, rng);
      const auto x = fixture::random_vector(n, rng);
      CHECK(max_deviation(apply_spectral_filter(coeffs, d, x), apply_poly_filter(coeffs, s, x)) <= 1e-8);
    }
  }

  TEST_CASE("non-symmetric diagonalizable shift") {
    std::mt19937_64 rng(31);
    const ShiftOperator s = normalize(make_cyclic_graph(8), ShiftKind::Raw);
    const auto d = spectral_decompose(s);
    CHECK(reconstruction_residual(d, s.matrix) < 1e-10);
    CHECK(biorthogonality_residual(d) < 1e-10);
    const std::vector<double> coeffs{1.0, -0.5, 0.25};
    const auto x = fixture::random_vector(8, rng);
    CHECK(max_deviation(apply_spectral_filter(coeffs, d, x), apply_poly_filter(coeffs, s, x)) <= 1e-8);

    const auto resp = spectral_filter_response(std::vector<double>{1.0, 1.0}, d);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::abs(resp[i] - (1.0 + d.eigenvalues[i])) < 1e-14);
  }

  TEST_CASE("Fourier transform of a right eigenvector is an indicator") {
    const ShiftOperator s = normalize(random_connected_graph(7, 2), ShiftKind::SymNormalized);
    const auto d = spectral_decompose(s);
    std::vector<double> v(7);
    for (std::size_t i = 0; i < 7; ++i) v[i] = d.right_vectors(i, 3).real();
    const auto f = graph_fourier_transform(d, v);
    for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(f[i] - (i == 3 ? 1.0 : 0.0)) < 1e-12);
  }

  TEST_CASE("defective and oversized operators are rejected") {
    // 0 -> 1 -> 2 is nilpotent: a single Jordan block.
    const Graph chain = build_graph(std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}}, 3, true);
    try {
      spectral_decompose(normalize(chain, ShiftKind::Raw));
      FAIL("expected NotDiagonalizable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotDiagonalizable);
    }
    try {
      spectral_decompose(normalize(make_cyclic_graph(kMaxDenseEigenSize + 1), ShiftKind::Raw));
      FAIL("expected TooLarge");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooLarge);
    }
  }
}
