#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tagcn/graph.hpp"

namespace tagcn {

/// A depth-L stack of single-feature layers y <- relu(g_l * A^{k_l} y).
struct MonomialStackSpec {
  std::vector<double> gains;
  std::vector<int> powers;

  std::size_t depth() const noexcept { return gains.size(); }
  /// Checks shapes, powers >= 1 and finite gains (InvalidArgument).
  void validate() const;
  /// True when every gain past the first layer is strictly positive; otherwise
  /// a nonnegative operator drives the stack to the zero vector.
  bool admissible() const noexcept;

  static MonomialStackSpec uniform(std::size_t depth, double gain = 1.0, int power = 1);
};

/// Output of the full monomial stack.
std::vector<double> deep_monomial_forward(const MonomialStackSpec& spec, const ShiftOperator& s,
                                          std::span<const double> x);

/// Output of every layer, outputs[l] being the l+1-th layer's output.
std::vector<std::vector<double>> deep_monomial_trace(const MonomialStackSpec& spec, const ShiftOperator& s,
                                                     std::span<const double> x);

inline constexpr double kDominantTolerance = 1e-10;
inline constexpr double kDegenerateGap = 1e-8;

/// Unit dominant eigenvector of a strongly connected nonnegative operator,
/// oriented so its first nonzero entry is positive.
/// Throws NotStronglyConnected, NegativeWeight or DegenerateDominantEigenvalue.
std::vector<double> dominant_eigenvector(const ShiftOperator& s);

/// <y1, v1> v1.
std::vector<double> dominant_projection(const ShiftOperator& s, std::span<const double> y1);

struct ConvergenceReport {
  std::vector<double> cosine_to_v1_per_layer;
  double final_residual = 0.0;   // || y_L / |y_L| - v1 ||_2
  double projection_coefficient = 0.0;  // <y_1, v1>
  double magnitude_ratio = 0.0;  // |y_L| / |<y_1, v1> v1|
  double output_norm = 0.0;      // |y_L|, exactly 0 after a collapse
  double gain_product = 1.0;     // prod_{l >= 2} g_l
  std::vector<double> dominant_vector;
};

/// Tracks how fast the stack output direction approaches v1.
/// Throws ZeroProjection when <y_1, v1> vanishes (|.| <= 1e-12).
ConvergenceReport convergence_report(const MonomialStackSpec& spec, const ShiftOperator& s,
                                     std::span<const double> x);

}  // namespace tagcn
