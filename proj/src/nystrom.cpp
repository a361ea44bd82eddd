// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ttm/nystrom.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ttm/error.hpp"

namespace ttm::nystrom {

namespace {

template <class LogEntry>
NystromMatrix fill_symmetric(Eigen::Index n, const std::vector<double>& log_w, LogEntry&& log_k) {
  NystromMatrix out;
  out.entries.resize(n, n);
  double min_entry = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double lk = log_k(i, j);
      if (!std::isfinite(lk)) {
        throw AssemblyError("assemble: non-finite kernel value at node pair (" + std::to_string(i) +
                                ", " + std::to_string(j) + ")",
                            static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
      const double e = std::exp(lk + 0.5 * (log_w[i] + log_w[j]));
      if (!std::isfinite(e)) {
        throw AssemblyError("assemble: entry overflows at node pair (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")",
                            static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
      out.entries(i, j) = e;
      out.entries(j, i) = e;
      min_entry = std::min(min_entry, e);
    }
  }
  out.min_entry = min_entry;
  return out;
}

std::vector<double> log_weights(const std::vector<double>& w) {
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0)) throw DomainError("assemble: quadrature weights must be positive");
    out[i] = std::log(w[i]);
  }
  return out;
}

double relative_residual(const Eigen::MatrixXd& t, const Eigen::VectorXd& v, double lambda) {
  return (t * v - lambda * v).norm() / lambda;
}

}  // namespace

NystromMatrix assemble(const LogKernel& log_kernel, const quad::QuadratureRule& rule) {
  if (rule.size() == 0) throw DomainError("assemble: empty quadrature rule");
  const auto n = static_cast<Eigen::Index>(rule.size());
  return fill_symmetric(n, log_weights(rule.weights), [&](Eigen::Index i, Eigen::Index j) {
    return log_kernel(rule.nodes[i], rule.nodes[j]);
  });
}

NystromMatrix assemble(const LogKernelVec& log_kernel, const quad::TensorRule& rule) {
  if (rule.size() == 0) throw DomainError("assemble: empty tensor rule");
  const auto n = static_cast<Eigen::Index>(rule.size());
  return fill_symmetric(n, log_weights(rule.weights()), [&](Eigen::Index i, Eigen::Index j) {
    return log_kernel(rule.node(static_cast<std::size_t>(i)), rule.node(static_cast<std::size_t>(j)));
  });
}

NystromMatrix from_dense(Eigen::MatrixXd entries) {
  if (entries.rows() == 0 || entries.rows() != entries.cols())
    throw DomainError("from_dense: matrix must be square and nonempty");
  if (!entries.allFinite()) throw DomainError("from_dense: non-finite entry");
  const double scale = entries.cwiseAbs().maxCoeff();
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > 1e-13 * scale)
    throw DomainError("from_dense: matrix is not symmetric");
  NystromMatrix out;
  out.min_entry = entries.minCoeff();
  out.entries = std::move(entries);
  return out;
}

DominantEig dominant_eigenvalue(const NystromMatrix& matrix, const PowerOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("dominant_eigenvalue: tol must be positive");
  if (options.max_iter < 1) throw DomainError("dominant_eigenvalue: max_iter must be >= 1");
  const Eigen::MatrixXd& t = matrix.entries;
  const Eigen::Index n = t.rows();
  if (n == 0) throw DomainError("dominant_eigenvalue: empty matrix");

  DominantEig out;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  Eigen::VectorXd tv(n);
  double best = std::numeric_limits<double>::infinity();
  int last_improvement = 0;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    tv.noalias() = t * v;
    const double lambda = v.dot(tv);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw NumericError("dominant_eigenvalue: Rayleigh quotient is not positive");
    const double residual = (tv - lambda * v).norm() / lambda;
    out.lambda1 = lambda;
    out.residual = residual;
    out.iterations = iter;
    if (residual <= options.tol) {
      out.vector = v;
      return out;
    }
    if (residual < 0.5 * best) {
      best = residual;
      last_improvement = iter;
    }
    v = tv / tv.norm();
    if (iter - last_improvement > options.stall_window) break;
  }

  if (out.iterations >= options.max_iter) {
    throw ConvergenceError("dominant_eigenvalue: max_iter exceeded, last residual " +
                               std::to_string(out.residual),
                           out.residual);
  }

  // residual plateau: take the top eigenpair of the dense decomposition and
  // push it back into the open positive cone with one multiplication
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
  if (solver.info() != Eigen::Success) throw NumericError("dominant_eigenvalue: dense eigensolver failed");
  Eigen::VectorXd w = solver.eigenvectors().col(n - 1).cwiseAbs();
  w = t * w;
  w /= w.norm();
  const double lambda = w.dot(t * w);
  out.lambda1 = lambda;
  out.vector = w;
  out.residual = relative_residual(t, w, lambda);
  out.dense_fallback = true;
  if (out.residual > options.tol) {
    throw ConvergenceError("dominant_eigenvalue: residual plateau at " + std::to_string(out.residual),
                           out.residual);
  }
  return out;
}

double fredholm_det(const NystromMatrix& matrix, double mu) {
  const Eigen::Index n = matrix.order();
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - mu * matrix.entries;
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
  if (!std::isfinite(det)) throw NumericError("fredholm_det: determinant overflow");
  return det;
}

}  // namespace ttm::nystrom
