#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tagcn/graph.hpp"
#include "tagcn/matrix.hpp"

namespace tagcn {

/// Learnable coefficients g[c][f][k] of a bank of polynomial graph filters,
/// plus one bias per output feature.
///
/// With `include_k0` false the degree-0 term is dropped (the path-sum form of
/// the layer, which starts at paths of length one); the k = 0 coefficients are
/// then ignored by every consumer.
class PolyFilterParams {
 public:
  PolyFilterParams(std::size_t in_features, std::size_t out_features, std::size_t filter_size,
                   bool include_k0 = true);

  std::size_t in_features() const noexcept { return in_; }
  std::size_t out_features() const noexcept { return out_; }
  std::size_t filter_size() const noexcept { return k_; }
  bool include_k0() const noexcept { return include_k0_; }
  std::size_t first_degree() const noexcept { return include_k0_ ? 0 : 1; }

  double& coeff(std::size_t c, std::size_t f, std::size_t k) { return coeffs_[index(c, f, k)]; }
  double coeff(std::size_t c, std::size_t f, std::size_t k) const { return coeffs_[index(c, f, k)]; }

  std::span<double> coeffs() noexcept { return coeffs_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> bias() noexcept { return bias_; }
  std::span<const double> bias() const noexcept { return bias_; }

  /// The C x F slice at degree k.
  Matrix weight_block(std::size_t k) const;
  void set_weight_block(std::size_t k, const Matrix& w);

  /// Coefficients g[c][f][0..K] as one polynomial.
  std::vector<double> polynomial(std::size_t c, std::size_t f) const;

 private:
  std::size_t index(std::size_t c, std::size_t f, std::size_t k) const noexcept {
    return (c * out_ + f) * (k_ + 1) + k;
  }

  std::size_t in_;
  std::size_t out_;
  std::size_t k_;
  bool include_k0_;
  std::vector<double> coeffs_;
  std::vector<double> bias_;
};

/// sum_k g_k A^k x, evaluated by repeated shifts of a running vector.
std::vector<double> apply_poly_filter(std::span<const double> coeffs, const ShiftOperator& s,
                                      std::span<const double> x);

/// Y = sum_k (A^k X) W_k + 1 b^T for an N x C input.
Matrix layer_forward(const PolyFilterParams& p, const ShiftOperator& s, const Matrix& x);

using SignalOperator = std::function<std::vector<double>(std::span<const double>)>;

/// max-norm of A(Gx) - G(Ax) for an arbitrary linear operator G.
double shift_invariance_residual(const SignalOperator& filter, const ShiftOperator& s,
                                 std::span<const double> x);
/// Same, with G the polynomial filter defined by `coeffs`.
double shift_invariance_residual(std::span<const double> coeffs, const ShiftOperator& s,
                                 std::span<const double> x);

struct PowerIterationResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration on the dominant eigenpair. The eigenvalue estimate is the
/// Rayleigh quotient; convergence means successive unit iterates differ by
/// less than `tolerance` in the 2-norm.
PowerIterationResult power_iteration(const CsrMatrix& m, int max_iterations, double tolerance,
                                     std::span<const double> start = {});

/// (2 / lambda_max) L - I. Without an explicit lambda_max it is estimated by
/// 100 power-iteration steps at tolerance 1e-8.
ShiftOperator rescale_laplacian(const ShiftOperator& laplacian,
                                std::optional<double> lambda_max = std::nullopt);

/// sum_k theta_k T_k(L) x via T_k = 2 L T_{k-1} - T_{k-2}, T_0 = I, T_1 = L.
std::vector<double> chebyshev_apply(std::span<const double> theta, const ShiftOperator& scaled_laplacian,
                                    std::span<const double> x);

/// Directed N-cycle with unit weights: edge i -> i+1 (mod N), so that the
/// shift maps (x_0, ..., x_{N-1}) to (x_{N-1}, x_0, ..., x_{N-2}).
Graph make_cyclic_graph(std::size_t n);

enum class LayerKind { TAGCN, GCN, Cheb, DCNN };

/// Weight accounting for one layer with C inputs and F outputs.
struct ParameterCount {
  std::size_t filter_weights = 0;         // every learnable filter coefficient
  std::size_t filter_weights_table = 0;   // the per-layer comparison convention
  std::size_t bias = 0;
  std::size_t total() const noexcept { return filter_weights + bias; }
};

/// For TAGCN the comparison convention excludes the degree-0 term, giving
/// K*C*F (2*C*F at K = 2). GCN has a single C x F block; ChebNet has K+1
/// blocks; DCNN has one gain per (hop, input feature).
ParameterCount count_parameters(LayerKind kind, std::size_t in_features, std::size_t out_features,
                                std::size_t filter_size, bool include_k0 = true);

}  // namespace tagcn
