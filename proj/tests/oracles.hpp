#pragma once

// Reference implementations kept deliberately naive and independent of the
// library code they check.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense zeros(std::size_t n, std::size_t m) { return Dense(n, std::vector<double>(m, 0.0)); }

inline Dense identity(std::size_t n) {
  Dense r = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1.0;
  return r;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  Dense r = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < b.size(); ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

inline Dense power(const Dense& a, int k) {
  Dense r = identity(a.size());
  for (int i = 0; i < k; ++i) r = matmul(r, a);
  return r;
}

inline std::vector<double> matvec(const Dense& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

inline Dense transpose(const Dense& a) {
  Dense r = zeros(a.empty() ? 0 : a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

// Sum over every vertex sequence src = v0, ..., vk = dst of prod A[v_t][v_{t-1}],
// visiting all n^(k-1) interior choices.
inline double brute_force_paths(const Dense& a, std::size_t src, std::size_t dst, int k) {
  const std::size_t n = a.size();
  std::function<double(std::size_t, int)> walk = [&](std::size_t at, int left) -> double {
    if (left == 0) return at == dst ? 1.0 : 0.0;
    double total = 0.0;
    for (std::size_t next = 0; next < n; ++next) {
      if (a[next][at] == 0.0) continue;
      total += a[next][at] * walk(next, left - 1);
    }
    return total;
  };
  return walk(src, k);
}

// y[n] = sum_k g_k x[(n - k) mod N].
inline std::vector<double> circular_convolution(const std::vector<double>& g, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < g.size(); ++k) y[i] += g[k] * x[(i + n * (k / n + 1) - k) % n];
  return y;
}

inline std::vector<double> poly_apply(const Dense& a, const std::vector<double>& g, const std::vector<double>& x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto ak = matvec(power(a, static_cast<int>(k)), x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += g[k] * ak[i];
  }
  return y;
}

inline Dense sym_normalized(const Dense& a) {
  const std::size_t n = a.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (double v : a[i]) d[i] += v;
  Dense r = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][j] / std::sqrt(d[i] * d[j]);
  return r;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::max(std::sqrt(na), std::sqrt(nb));
  return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

// Central differences of f over every entry of params (restored afterwards).
inline std::vector<double> numeric_gradient(std::vector<double*> params, const std::function<double()>& f,
                                            double eps = 1e-5) {
  std::vector<double> g;
  g.reserve(params.size());
  for (double* p : params) {
    const double saved = *p;
    *p = saved + eps;
    const double up = f();
    *p = saved - eps;
    const double down = f();
    *p = saved;
    g.push_back((up - down) / (2.0 * eps));
  }
  return g;
}

// Binary logistic regression by full-batch gradient descent on standardized
// features; returns accuracy on the evaluation rows.
inline double logistic_accuracy(const Dense& x, const std::vector<int>& y, const std::vector<std::size_t>& train,
                                const std::vector<std::size_t>& eval, int iterations = 3000, double lr = 0.1,
                                double l2 = 1e-3) {
  const std::size_t d = x[0].size();
  std::vector<double> mean(d, 0.0), sd(d, 0.0);
  for (std::size_t i : train)
    for (std::size_t j = 0; j < d; ++j) mean[j] += x[i][j] / static_cast<double>(train.size());
  for (std::size_t i : train)
    for (std::size_t j = 0; j < d; ++j) sd[j] += (x[i][j] - mean[j]) * (x[i][j] - mean[j]) / static_cast<double>(train.size());
  for (double& s : sd) s = s > 0.0 ? std::sqrt(s) : 1.0;
  auto feat = [&](std::size_t i, std::size_t j) { return (x[i][j] - mean[j]) / sd[j]; };

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> gw(d, 0.0);
    double gb = 0.0;
    for (std::size_t i : train) {
      double z = b;
      for (std::size_t j = 0; j < d; ++j) z += w[j] * feat(i, j);
      const double err = 1.0 / (1.0 + std::exp(-z)) - static_cast<double>(y[i]);
      for (std::size_t j = 0; j < d; ++j) gw[j] += err * feat(i, j) / static_cast<double>(train.size());
      gb += err / static_cast<double>(train.size());
    }
    for (std::size_t j = 0; j < d; ++j) w[j] -= lr * (gw[j] + l2 * w[j]);
    b -= lr * gb;
  }
  std::size_t correct = 0;
  for (std::size_t i : eval) {
    double z = b;
    for (std::size_t j = 0; j < d; ++j) z += w[j] * feat(i, j);
    correct += (z > 0.0) == (y[i] == 1);
  }
  return static_cast<double>(correct) / static_cast<double>(eval.size());
}

}  // namespace oracle
