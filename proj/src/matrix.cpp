#include "tagcn/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "tagcn/error.hpp"

namespace tagcn {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::span<const double> values) {
  Matrix m(values.size(), 1);
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

std::vector<double> Matrix::col(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::set_col(std::size_t c, std::span<const double> values) {
  require(values.size() == rows_, ErrorCode::DimensionMismatch, "set_col: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorCode::DimensionMismatch, "matmul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      // Sparse bag-of-words inputs are mostly zeros.
      if (aik == 0.0) continue;
      auto src = b.row(k);
      for (std::size_t j = 0; j < n; ++j) dst[j] += aik * src[j];
    }
  }
  return out;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorCode::DimensionMismatch, "matmul_tn: row counts differ");
  Matrix out(a.cols(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto src = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      if (aki == 0.0) continue;
      auto dst = out.row(i);
      for (std::size_t j = 0; j < n; ++j) dst[j] += aki * src[j];
    }
  }
  return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), ErrorCode::DimensionMismatch, "matmul_nt: column counts differ");
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ar = a.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      auto br = b.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < ar.size(); ++k) acc += ar[k] * br[k];
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

void add_inplace(Matrix& target, const Matrix& other) {
  require(target.same_shape(other), ErrorCode::DimensionMismatch, "add: shape mismatch");
  auto t = target.values();
  auto o = other.values();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += o[i];
}

void axpy_inplace(Matrix& target, double alpha, const Matrix& other) {
  require(target.same_shape(other), ErrorCode::DimensionMismatch, "axpy: shape mismatch");
  auto t = target.values();
  auto o = other.values();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += alpha * o[i];
}

void scale_inplace(Matrix& target, double alpha) {
  for (double& v : target.values()) v *= alpha;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  require(a.same_shape(b), ErrorCode::DimensionMismatch, "hadamard: shape mismatch");
  Matrix out(a.rows(), a.cols());
  auto av = a.values();
  auto bv = b.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] * bv[i];
  return out;
}

std::vector<double> column_sums(const Matrix& m) {
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < sums.size(); ++c) sums[c] += row[c];
  }
  return sums;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.same_shape(b), ErrorCode::DimensionMismatch, "max_abs_diff: shape mismatch");
  double worst = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) worst = std::max(worst, std::abs(av[i] - bv[i]));
  return worst;
}

double frobenius_norm(const Matrix& m) {
  double acc = 0.0;
  for (double v : m.values()) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace tagcn
