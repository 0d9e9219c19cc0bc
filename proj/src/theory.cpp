#include "tagcn/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tagcn/error.hpp"
#include "tagcn/filters.hpp"
#include "tagcn/spectral.hpp"

namespace tagcn {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

constexpr int kMaxDominantIterations = 500000;

}  // namespace

void MonomialStackSpec::validate() const {
  require(!gains.empty(), ErrorCode::InvalidArgument, "monomial stack needs at least one layer");
  require(gains.size() == powers.size(), ErrorCode::InvalidArgument, "gains and powers differ in length");
  for (double g : gains) require(std::isfinite(g), ErrorCode::NonFiniteValue, "gains must be finite");
  for (int k : powers) require(k >= 1, ErrorCode::InvalidArgument, "monomial powers must be >= 1");
}

bool MonomialStackSpec::admissible() const noexcept {
  return std::all_of(gains.begin() + (gains.empty() ? 0 : 1), gains.end(), [](double g) { return g > 0.0; });
}

MonomialStackSpec MonomialStackSpec::uniform(std::size_t depth, double gain, int power) {
  return {std::vector<double>(depth, gain), std::vector<int>(depth, power)};
}

std::vector<std::vector<double>> deep_monomial_trace(const MonomialStackSpec& spec, const ShiftOperator& s,
                                                     std::span<const double> x) {
  spec.validate();
  require(x.size() == s.num_nodes(), ErrorCode::DimensionMismatch, "stack input length mismatch");
  std::vector<std::vector<double>> outputs;
  outputs.reserve(spec.depth());
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t l = 0; l < spec.depth(); ++l) {
    for (int k = 0; k < spec.powers[l]; ++k) y = spmv(s, y);
    for (double& v : y) {
      const double z = spec.gains[l] * v;
      v = z > 0.0 ? z : 0.0;
    }
    outputs.push_back(y);
  }
  return outputs;
}

std::vector<double> deep_monomial_forward(const MonomialStackSpec& spec, const ShiftOperator& s,
                                          std::span<const double> x) {
  spec.validate();
  require(x.size() == s.num_nodes(), ErrorCode::DimensionMismatch, "stack input length mismatch");
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t l = 0; l < spec.depth(); ++l) {
    for (int k = 0; k < spec.powers[l]; ++k) y = spmv(s, y);
    for (double& v : y) {
      const double z = spec.gains[l] * v;
      v = z > 0.0 ? z : 0.0;
    }
  }
  return y;
}

std::vector<double> dominant_eigenvector(const ShiftOperator& s) {
  const CsrMatrix& m = s.matrix;
  for (double w : m.values)
    require(w >= 0.0, ErrorCode::NegativeWeight, "dominant projection needs a nonnegative operator");
  require(is_strongly_connected(m), ErrorCode::NotStronglyConnected, "operator graph is not strongly connected");

  if (m.n <= kMaxDenseEigenSize && m.n > 1) {
    auto ev = dense_eigenvalues(m);
    std::vector<double> mags(ev.size());
    std::transform(ev.begin(), ev.end(), mags.begin(), [](Complex z) { return std::abs(z); });
    std::sort(mags.begin(), mags.end(), std::greater<>());
    if (mags[0] - mags[1] < kDegenerateGap) {
      fail(ErrorCode::DegenerateDominantEigenvalue,
           "top eigenvalue magnitudes " + std::to_string(mags[0]) + " and " + std::to_string(mags[1]) +
               " are not separated");
    }
  }

  std::vector<double> start(m.n, 1.0);
  auto result = power_iteration(m, kMaxDominantIterations, kDominantTolerance, start);
  require(result.converged, ErrorCode::DegenerateDominantEigenvalue,
          "power iteration did not converge to a dominant eigenvector");
  auto& v = result.eigenvector;
  const auto first = std::find_if(v.begin(), v.end(), [](double e) { return e != 0.0; });
  if (first != v.end() && *first < 0.0)
    for (double& e : v) e = -e;
  return v;
}

std::vector<double> dominant_projection(const ShiftOperator& s, std::span<const double> y1) {
  require(y1.size() == s.num_nodes(), ErrorCode::DimensionMismatch, "projection input length mismatch");
  auto v = dominant_eigenvector(s);
  const double c = dot(y1, v);
  for (double& e : v) e *= c;
  return v;
}

ConvergenceReport convergence_report(const MonomialStackSpec& spec, const ShiftOperator& s,
                                     std::span<const double> x) {
  spec.validate();
  require(x.size() == s.num_nodes(), ErrorCode::DimensionMismatch, "stack input length mismatch");
  ConvergenceReport report;
  report.dominant_vector = dominant_eigenvector(s);
  const auto& v1 = report.dominant_vector;

  std::vector<double> y(x.begin(), x.end());
  report.cosine_to_v1_per_layer.reserve(spec.depth());
  for (std::size_t l = 0; l < spec.depth(); ++l) {
    for (int k = 0; k < spec.powers[l]; ++k) y = spmv(s, y);
    for (double& e : y) {
      const double z = spec.gains[l] * e;
      e = z > 0.0 ? z : 0.0;
    }
    if (l == 0) {
      report.projection_coefficient = dot(y, v1);
      require(std::abs(report.projection_coefficient) > 1e-12, ErrorCode::ZeroProjection,
              "first-layer output has no component along the dominant eigenvector");
    } else {
      report.gain_product *= spec.gains[l];
    }
    const double ny = norm2(y);
    report.cosine_to_v1_per_layer.push_back(ny > 0.0 ? dot(y, v1) / ny : 0.0);
  }

  const double ny = norm2(y);
  double residual = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = (ny > 0.0 ? y[i] / ny : 0.0) - v1[i];
    residual += d * d;
  }
  report.final_residual = std::sqrt(residual);
  report.output_norm = ny;
  report.magnitude_ratio = ny / std::abs(report.projection_coefficient);
  return report;
}

}  // namespace tagcn
