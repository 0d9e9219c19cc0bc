#include "tagcn/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "tagcn/error.hpp"

namespace tagcn {
namespace {

Eigen::MatrixXd to_eigen(const CsrMatrix& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.n), static_cast<Eigen::Index>(a.n));
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t p = a.row_offsets[i]; p < a.row_offsets[i + 1]; ++p)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a.col_indices[p])) = a.values[p];
  return m;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
  return out;
}

}  // namespace

SpectralDecomposition spectral_decompose(const ShiftOperator& s) {
  const std::size_t n = s.num_nodes();
  require(n <= kMaxDenseEigenSize, ErrorCode::TooLarge,
          "dense eigendecomposition is limited to " + std::to_string(kMaxDenseEigenSize) + " vertices");
  const Eigen::MatrixXd a = to_eigen(s.matrix);

  SpectralDecomposition d;
  if (s.matrix.is_symmetric()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    require(solver.info() == Eigen::Success, ErrorCode::NotDiagonalizable, "symmetric eigensolver failed");
    const Eigen::MatrixXcd v = solver.eigenvectors().cast<Complex>();
    d.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    d.right_vectors = from_eigen(v);
    d.left_vectors = from_eigen(v.adjoint());
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
    require(solver.info() == Eigen::Success, ErrorCode::NotDiagonalizable, "eigensolver failed");
    const Eigen::MatrixXcd v = solver.eigenvectors();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(v);
    require(lu.isInvertible(), ErrorCode::NotDiagonalizable, "eigenvector matrix is singular");
    d.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    d.right_vectors = from_eigen(v);
    d.left_vectors = from_eigen(lu.inverse());
  }

  const double residual = reconstruction_residual(d, s.matrix);
  require(residual <= kDiagonalizableTolerance, ErrorCode::NotDiagonalizable,
          "operator is not diagonalizable (reconstruction residual " + std::to_string(residual) + ")");
  return d;
}

double reconstruction_residual(const SpectralDecomposition& d, const CsrMatrix& a) {
  const std::size_t n = d.size();
  require(a.n == n, ErrorCode::DimensionMismatch, "decomposition size mismatch");
  const Matrix dense = a.to_dense();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += d.right_vectors(i, k) * d.eigenvalues[k] * d.left_vectors(k, j);
      worst = std::max(worst, std::abs(acc - dense(i, j)));
    }
  }
  return worst;
}

double biorthogonality_residual(const SpectralDecomposition& d) {
  const std::size_t n = d.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += d.left_vectors(i, k) * d.right_vectors(k, j);
      worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::vector<Complex> spectral_filter_response(std::span<const double> coeffs, const SpectralDecomposition& d) {
  std::vector<Complex> h(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    Complex power = 1.0;
    for (double g : coeffs) {
      h[i] += g * power;
      power *= d.eigenvalues[i];
    }
  }
  return h;
}

std::vector<Complex> graph_fourier_transform(const SpectralDecomposition& d, std::span<const double> x) {
  require(x.size() == d.size(), ErrorCode::DimensionMismatch, "signal length mismatch");
  std::vector<Complex> xf(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) xf[i] += d.left_vectors(i, j) * x[j];
  return xf;
}

std::vector<Complex> apply_spectral_filter(std::span<const double> coeffs, const SpectralDecomposition& d,
                                           std::span<const double> x) {
  auto xf = graph_fourier_transform(d, x);
  const auto h = spectral_filter_response(coeffs, d);
  for (std::size_t i = 0; i < xf.size(); ++i) xf[i] *= h[i];
  std::vector<Complex> y(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t k = 0; k < d.size(); ++k) y[i] += d.right_vectors(i, k) * xf[k];
  return y;
}

}  // namespace tagcn

namespace tagcn {

std::vector<Complex> dense_eigenvalues(const CsrMatrix& a) {
  require(a.n <= kMaxDenseEigenSize, ErrorCode::TooLarge, "dense eigenvalue computation is size-limited");
  const Eigen::MatrixXd m = to_eigen(a);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  require(solver.info() == Eigen::Success, ErrorCode::NotDiagonalizable, "eigensolver failed");
  std::vector<Complex> out(a.n);
  for (std::size_t i = 0; i < a.n; ++i) out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace tagcn
