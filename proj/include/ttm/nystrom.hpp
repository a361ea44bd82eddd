// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <span>

#include "ttm/quad.hpp"

namespace ttm::nystrom {

/// log k(z, z') for scalar nodes. Must be symmetric in its arguments.
using LogKernel = std::function<double(double, double)>;
/// log k(q, q') for vector nodes (one entry per tensor coordinate).
using LogKernelVec = std::function<double(std::span<const double>, std::span<const double>)>;

/// Symmetric, entrywise positive matrix  T_ij = k(z_i, z_j) sqrt(w_i w_j).
struct NystromMatrix {
  Eigen::MatrixXd entries;
  double min_entry = 0.0;

  Eigen::Index order() const noexcept { return entries.rows(); }
};

/// Entries are exp(log k + (log w_i + log w_j)/2); only the upper triangle is
/// evaluated, the lower one is its mirror image.
NystromMatrix assemble(const LogKernel& log_kernel, const quad::QuadratureRule& rule);
NystromMatrix assemble(const LogKernelVec& log_kernel, const quad::TensorRule& rule);

/// Wraps a dense symmetric matrix; validates symmetry and finiteness.
NystromMatrix from_dense(Eigen::MatrixXd entries);

struct PowerOptions {
  double tol = 1e-14;
  int max_iter = 10000;
  // iterations without a halving of the best residual before switching to
  // the dense symmetric eigensolver
  int stall_window = 200;
};

struct DominantEig {
  double lambda1 = 0.0;
  Eigen::VectorXd vector;  // unit 2-norm, componentwise positive
  double residual = 0.0;   // ||T v - lambda1 v|| / lambda1
  int iterations = 0;
  bool dense_fallback = false;
};

/// Perron eigenpair by power iteration from the all-ones vector with a
/// Rayleigh-quotient estimate.
DominantEig dominant_eigenvalue(const NystromMatrix& matrix, const PowerOptions& options = {});

/// det(I - mu T) via LU with partial pivoting.
double fredholm_det(const NystromMatrix& matrix, double mu);

}  // namespace ttm::nystrom
