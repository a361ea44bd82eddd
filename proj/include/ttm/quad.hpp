// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ttm::quad {

/// Nodes and strictly positive weights with sum_i w_i f(z_i) ~ int f dnu.
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // same length, all > 0
  double total_mass = 0.0;      // int dnu of the underlying measure

  std::size_t size() const noexcept { return nodes.size(); }
  double integrate(const std::function<double(double)>& f) const;
};

/// Three-term recurrence of the monic orthogonal polynomials,
///   pi_{k+1}(z) = (z - alpha_k) pi_k(z) - beta_k pi_{k-1}(z),
/// with beta_0 holding the total mass of the measure.
struct RecurrenceCoefficients {
  std::vector<double> alpha;
  std::vector<double> beta;

  std::size_t size() const noexcept { return alpha.size(); }
};

enum class Support { half_line, full_line };

/// Density c * exp(-a (z - b)^2 / 2) on [0, inf) (or on R for full_line).
struct TruncatedGaussian {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
  Support support = Support::half_line;

  /// Chooses c so that the measure has unit mass.
  static TruncatedGaussian normalized(double a, double b, Support support = Support::half_line);
  double density(double z) const;
};

/// Gauss rule for the normalized Gaussian exp(-a q^2/2) / sqrt(2 pi / a).
QuadratureRule gauss_hermite_rescaled(int m, double a);

/// Gauss-Legendre rule on [lo, hi] (Lebesgue measure).
QuadratureRule gauss_legendre(int m, double lo = -1.0, double hi = 1.0);

struct StieltjesOptions {
  double tol = 1e-14;       // relative stabilization of the coefficients
  int panel_points = 24;    // Gauss-Legendre points per panel
  int max_panels = 1 << 14;
};

/// First m recurrence coefficients of the measure, from a discretized
/// Stieltjes procedure on a refined composite Gauss-Legendre grid.
RecurrenceCoefficients stieltjes_recurrence(const TruncatedGaussian& weight, int m,
                                            const StieltjesOptions& options = {});

/// Nodes are the eigenvalues of the Jacobi matrix (diag alpha_k, offdiag
/// sqrt(beta_k)), polished by Newton on the characteristic polynomial;
/// weights are beta_0 times the squared first eigenvector component
/// (evaluated through the Christoffel function).
QuadratureRule golub_welsch(const RecurrenceCoefficients& rc);

/// Gauss rule on [0, inf) for the normalized truncated Gaussian.
QuadratureRule half_line_gaussian_rule(double a, double b, int m);

inline constexpr std::size_t kDefaultTensorBudget = 4096;

/// Product rule over R^dimension. Multi-indices are enumerated
/// lexicographically with the last coordinate varying fastest.
class TensorRule {
 public:
  TensorRule(QuadratureRule base, int dimension, std::size_t budget = kDefaultTensorBudget);

  const QuadratureRule& base() const noexcept { return base_; }
  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return weights_.size(); }

  std::span<const double> node(std::size_t flat) const {
    return {nodes_.data() + flat * static_cast<std::size_t>(dimension_),
            static_cast<std::size_t>(dimension_)};
  }
  double weight(std::size_t flat) const { return weights_[flat]; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Per-axis base indices of a flat index.
  std::vector<std::size_t> multi_index(std::size_t flat) const;
  double total_mass() const;

 private:
  QuadratureRule base_;
  int dimension_;
  std::vector<double> nodes_;  // size() x dimension, row-major
  std::vector<double> weights_;
};

TensorRule tensor_product(const QuadratureRule& base, int dimension,
                          std::size_t budget = kDefaultTensorBudget);

// Adaptive quadrature ------------------------------------------------------

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) bisection on a finite interval.
/// Throws ConvergenceError if the error target is not met within max_intervals.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                  double rel_tol = 1e-13, double abs_tol = 0.0,
                                  int max_intervals = 4000);

}  // namespace ttm::quad
