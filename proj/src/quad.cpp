// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ttm/quad.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ttm/error.hpp"
#include "ttm/specfun.hpp"

namespace ttm::quad {

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

TruncatedGaussian TruncatedGaussian::normalized(double a, double b, Support support) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("truncated Gaussian: a must be positive");
  if (!std::isfinite(b)) throw DomainError("truncated Gaussian: b must be finite");
  TruncatedGaussian w;
  w.a = a;
  w.b = b;
  w.support = support;
  const double full = std::sqrt(a / (2.0 * std::numbers::pi));
  // 1 + erf(b sqrt(a/2)) written as erfc(-b sqrt(a/2)) to keep digits for b < 0
  w.c = support == Support::full_line ? full
                                      : 2.0 * full / specfun::erfc(-b * std::sqrt(0.5 * a));
  return w;
}

double TruncatedGaussian::density(double z) const {
  if (support == Support::half_line && z < 0.0) return 0.0;
  const double d = z - b;
  return c * std::exp(-0.5 * a * d * d);
}

// Gauss-Legendre ----------------------------------------------------------

QuadratureRule gauss_legendre(int m, double lo, double hi) {
  if (m < 1) throw DomainError("gauss_legendre: m must be >= 1");
  if (!(hi > lo)) throw DomainError("gauss_legendre: empty interval");
  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const int n_roots = (m + 1) / 2;
  for (int i = 0; i < n_roots; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (m == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[m - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[m - 1 - i] = half * w;
  }
  rule.total_mass = hi - lo;
  return rule;
}

// Golub-Welsch ------------------------------------------------------------

namespace {

void validate(const RecurrenceCoefficients& rc) {
  if (rc.alpha.empty()) throw DomainError("recurrence coefficients: empty");
  if (rc.alpha.size() != rc.beta.size())
    throw DomainError("recurrence coefficients: alpha and beta lengths differ");
  for (std::size_t k = 0; k < rc.beta.size(); ++k) {
    if (!(rc.beta[k] > 0.0) || !std::isfinite(rc.beta[k]) || !std::isfinite(rc.alpha[k]))
      throw DomainError("recurrence coefficients: beta_" + std::to_string(k) + " must be positive");
  }
}

// Newton correction pi_m(x) / pi_m'(x) for the monic polynomial of degree m.
double newton_step(const RecurrenceCoefficients& rc, double x) {
  const std::size_t m = rc.size();
  double p_prev = 0.0, p = 1.0;
  double d_prev = 0.0, d = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double shift = x - rc.alpha[k];
    const double b = k == 0 ? 0.0 : rc.beta[k];
    const double p_next = shift * p - b * p_prev;
    const double d_next = p + shift * d - b * d_prev;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
    const double mag = std::max(std::abs(p), std::abs(d));
    if (mag > 1e150) {
      p /= mag, p_prev /= mag, d /= mag, d_prev /= mag;
    }
  }
  return p / d;
}

// 1 / sum_k phat_k(x)^2 over the orthonormal polynomials of degree < m.
double christoffel(const RecurrenceCoefficients& rc, double x) {
  const std::size_t m = rc.size();
  double p_prev = 0.0, p = 1.0;
  double sum = 1.0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double p_next =
        ((x - rc.alpha[k]) * p - (k == 0 ? 0.0 : std::sqrt(rc.beta[k])) * p_prev) /
        std::sqrt(rc.beta[k + 1]);
    p_prev = p;
    p = p_next;
    sum += p * p;
  }
  return 1.0 / sum;
}

}  // namespace

QuadratureRule golub_welsch(const RecurrenceCoefficients& rc) {
  validate(rc);
  const std::size_t m = rc.size();
  QuadratureRule rule;
  rule.total_mass = rc.beta[0];
  if (m == 1) {
    rule.nodes = {rc.alpha[0]};
    rule.weights = {rc.beta[0]};
    return rule;
  }

  Eigen::VectorXd diag(m), sub(m - 1);
  for (std::size_t k = 0; k < m; ++k) diag[k] = rc.alpha[k];
  for (std::size_t k = 1; k < m; ++k) sub[k - 1] = std::sqrt(rc.beta[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("golub_welsch: Jacobi eigensolver failed");

  const Eigen::VectorXd& eig = solver.eigenvalues();
  const double scale = std::max(eig.cwiseAbs().maxCoeff(), std::sqrt(sub.cwiseAbs2().maxCoeff()));
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double x = eig[i];
    for (int iter = 0; iter < 3; ++iter) {
      const double dx = newton_step(rc, x);
      if (!std::isfinite(dx) || std::abs(dx) > 1e-8 * scale) break;
      x -= dx;
      if (std::abs(dx) <= 1e-17 * scale) break;
    }
    rule.nodes[i] = x;
  }
  std::sort(rule.nodes.begin(), rule.nodes.end());
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1]))
      throw NumericError("golub_welsch: nodes not strictly increasing");
    rule.weights[i] = rc.beta[0] * christoffel(rc, rule.nodes[i]);
    if (!(rule.weights[i] > 0.0)) throw NumericError("golub_welsch: non-positive weight");
  }
  return rule;
}

QuadratureRule gauss_hermite_rescaled(int m, double a) {
  if (m < 1) throw DomainError("gauss_hermite_rescaled: m must be >= 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gauss_hermite_rescaled: a must be positive");
  RecurrenceCoefficients rc;
  rc.alpha.assign(m, 0.0);
  rc.beta.resize(m);
  rc.beta[0] = 1.0;
  for (int k = 1; k < m; ++k) rc.beta[k] = k / a;
  QuadratureRule rule = golub_welsch(rc);
  // the measure is even: enforce exact mirror symmetry
  for (int i = 0; i < m / 2; ++i) {
    const int j = m - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[j] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  rule.total_mass = 1.0;
  return rule;
}

// Discretized Stieltjes ---------------------------------------------------

namespace {

RecurrenceCoefficients discrete_stieltjes(const std::vector<double>& x, const std::vector<double>& w,
                                          int m) {
  const std::size_t n = x.size();
  RecurrenceCoefficients rc;
  rc.alpha.resize(m);
  rc.beta.resize(m);
  double mass = 0.0;
  for (double wj : w) mass += wj;
  rc.beta[0] = mass;

  // basis[k] holds the orthonormal polynomial of degree k sampled at x
  std::vector<std::vector<double>> basis;
  basis.reserve(m);
  basis.emplace_back(n, 1.0 / std::sqrt(mass));
  std::vector<double> u(n);
  for (int k = 0; k < m; ++k) {
    const std::vector<double>& v = basis[k];
    double alpha = 0.0;
    for (std::size_t j = 0; j < n; ++j) alpha += w[j] * x[j] * v[j] * v[j];
    rc.alpha[k] = alpha;
    if (k + 1 == m) break;
    const double sb = k == 0 ? 0.0 : std::sqrt(rc.beta[k]);
    for (std::size_t j = 0; j < n; ++j) u[j] = (x[j] - alpha) * v[j] - (k == 0 ? 0.0 : sb * basis[k - 1][j]);
    // two passes of Gram-Schmidt against the whole basis keep the discrete
    // polynomials orthogonal to rounding at high degree
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        double dot = 0.0;
        for (std::size_t j = 0; j < n; ++j) dot += w[j] * u[j] * b[j];
        for (std::size_t j = 0; j < n; ++j) u[j] -= dot * b[j];
      }
    }
    double norm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) norm2 += w[j] * u[j] * u[j];
    rc.beta[k + 1] = norm2;
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<double> next(n);
    for (std::size_t j = 0; j < n; ++j) next[j] = u[j] * inv;
    basis.push_back(std::move(next));
  }
  return rc;
}

}  // namespace

RecurrenceCoefficients stieltjes_recurrence(const TruncatedGaussian& weight, int m,
                                            const StieltjesOptions& options) {
  if (m < 1) throw DomainError("stieltjes_recurrence: m must be >= 1");
  if (!(weight.a > 0.0) || !std::isfinite(weight.a))
    throw DomainError("stieltjes_recurrence: a must be positive");
  if (!(weight.c > 0.0) || !std::isfinite(weight.c) || !std::isfinite(weight.b))
    throw DomainError("stieltjes_recurrence: invalid normalization or center");

  const double sigma = 1.0 / std::sqrt(weight.a);
  // 12 standard deviations beyond the region where the degree-m orthonormal
  // polynomials still carry weight
  const double reach = (12.0 + std::sqrt(4.0 * m + 2.0)) * sigma;
  double lo, hi;
  if (weight.support == Support::half_line) {
    lo = 0.0;
    hi = std::max(weight.b, 0.0) + reach;
  } else {
    lo = weight.b - reach;
    hi = weight.b + reach;
  }

  const QuadratureRule panel = gauss_legendre(options.panel_points);
  auto coefficients = [&](int panels) {
    std::vector<double> x, w;
    x.reserve(static_cast<std::size_t>(panels) * panel.size());
    w.reserve(x.capacity());
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double left = lo + p * width;
      for (std::size_t i = 0; i < panel.size(); ++i) {
        const double z = left + 0.5 * width * (panel.nodes[i] + 1.0);
        x.push_back(z);
        w.push_back(0.5 * width * panel.weights[i] * weight.density(z));
      }
    }
    return discrete_stieltjes(x, w, m);
  };

  int panels = std::max(8, static_cast<int>(std::ceil((hi - lo) / sigma)));
  RecurrenceCoefficients current = coefficients(panels);
  double change = std::numeric_limits<double>::infinity();
  while (2 * panels <= options.max_panels) {
    panels *= 2;
    RecurrenceCoefficients refined = coefficients(panels);
    change = 0.0;
    for (int k = 0; k < m; ++k) {
      change = std::max(change, std::abs(refined.alpha[k] - current.alpha[k]) /
                                    (std::abs(refined.alpha[k]) + sigma));
      change = std::max(change, std::abs(refined.beta[k] - current.beta[k]) / refined.beta[k]);
    }
    current = std::move(refined);
    if (change <= options.tol) return current;
  }
  throw ConvergenceError("stieltjes_recurrence: coefficients did not stabilize, residual " +
                             std::to_string(change),
                         change);
}

QuadratureRule half_line_gaussian_rule(double a, double b, int m) {
  QuadratureRule rule = golub_welsch(stieltjes_recurrence(TruncatedGaussian::normalized(a, b), m));
  rule.total_mass = 1.0;
  return rule;
}

// Tensor products ---------------------------------------------------------

TensorRule::TensorRule(QuadratureRule base, int dimension, std::size_t budget)
    : base_(std::move(base)), dimension_(dimension) {
  if (dimension < 1) throw DomainError("tensor_product: dimension must be >= 1");
  if (base_.size() == 0) throw DomainError("tensor_product: empty base rule");
  const std::size_t m0 = base_.size();
  std::size_t total = 1;
  for (int d = 0; d < dimension; ++d) {
    if (total > budget / m0) {
      throw ResourceError("tensor_product: m0^Ly = " + std::to_string(m0) + "^" +
                          std::to_string(dimension) + " exceeds budget " + std::to_string(budget));
    }
    total *= m0;
  }
  nodes_.resize(total * static_cast<std::size_t>(dimension));
  weights_.resize(total);
  std::vector<std::size_t> idx(dimension, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double w = 1.0;
    for (int d = 0; d < dimension; ++d) {
      nodes_[flat * dimension + d] = base_.nodes[idx[d]];
      w *= base_.weights[idx[d]];
    }
    weights_[flat] = w;
    for (int d = dimension - 1; d >= 0; --d) {
      if (++idx[d] < m0) break;
      idx[d] = 0;
    }
  }
}

std::vector<std::size_t> TensorRule::multi_index(std::size_t flat) const {
  std::vector<std::size_t> idx(dimension_);
  const std::size_t m0 = base_.size();
  for (int d = dimension_ - 1; d >= 0; --d) {
    idx[d] = flat % m0;
    flat /= m0;
  }
  return idx;
}

double TensorRule::total_mass() const { return std::pow(base_.total_mass, dimension_); }

TensorRule tensor_product(const QuadratureRule& base, int dimension, std::size_t budget) {
  return TensorRule(base, dimension, budget);
}

}  // namespace ttm::quad
