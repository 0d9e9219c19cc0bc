#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tagcn/graph.hpp"

namespace tagcn {

using Complex = std::complex<double>;

/// Dense row-major complex matrix, used only by the spectral routines.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Complex& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  Complex operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// A = right * diag(eigenvalues) * left. Rows of `left` are the left
/// eigenvectors (the graph Fourier transform); columns of `right` are the
/// right eigenvectors (its inverse).
struct SpectralDecomposition {
  std::vector<Complex> eigenvalues;
  ComplexMatrix right_vectors;
  ComplexMatrix left_vectors;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

inline constexpr std::size_t kMaxDenseEigenSize = 512;
inline constexpr double kDiagonalizableTolerance = 1e-6;

/// Dense eigendecomposition of the shift. Symmetric operators use a
/// self-adjoint solver so eigenvalues come out real and vectors orthonormal.
/// Throws TooLarge above kMaxDenseEigenSize vertices and NotDiagonalizable
/// when the reconstruction residual exceeds kDiagonalizableTolerance.
SpectralDecomposition spectral_decompose(const ShiftOperator& s);

/// max |right * diag(lambda) * left - A|.
double reconstruction_residual(const SpectralDecomposition& d, const CsrMatrix& a);
/// max |left * right - I|.
double biorthogonality_residual(const SpectralDecomposition& d);

/// h(lambda_i) = sum_k g_k lambda_i^k for every eigenvalue.
std::vector<Complex> spectral_filter_response(std::span<const double> coeffs,
                                              const SpectralDecomposition& d);

/// Graph Fourier transform F x.
std::vector<Complex> graph_fourier_transform(const SpectralDecomposition& d, std::span<const double> x);

/// F^-1 diag(h(lambda)) F x: polynomial filtering carried out in the spectrum.
std::vector<Complex> apply_spectral_filter(std::span<const double> coeffs, const SpectralDecomposition& d,
                                           std::span<const double> x);

}  // namespace tagcn

namespace tagcn {

/// All eigenvalues of a dense copy of `a` (general solver). TooLarge above
/// kMaxDenseEigenSize.
std::vector<Complex> dense_eigenvalues(const CsrMatrix& a);

}  // namespace tagcn
