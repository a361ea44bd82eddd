// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ttm/models.hpp"

namespace ttm::thermo {

/// Central finite-difference first derivative. accuracy is the order of the
/// truncation error and must be 2, 4 or 6 (7-point stencil).
double fd_derivative(const std::function<double(double)>& f, double x, double h, int order = 1,
                     int accuracy = 6);

/// One-sided 7-point first derivative (error O(h^6)) using f(x), ..., f(x + 6h);
/// for points on the edge of a parameter domain.
double fd_derivative_forward(const std::function<double(double)>& f, double x, double h);

/// 1e-3 * max(1, |x|)
double default_step(double x);

struct ChainObservables {
  double stretch_sq = 0.0;  // <(q_l - q_{l+1})^2 / 2> = dF/dgamma
  double energy = 0.0;      // <e_l> = d(beta F)/dbeta
};

struct DnlsObservables {
  double density = 0.0;  // -dF/dmu
  double energy = 0.0;   // d(beta F)/dbeta + mu <rho>
};

/// Step sizes <= 0 select default_step of the differentiated parameter.
ChainObservables particle_chain_observables(const models::ParticleChainParams& p, double beta, int m,
                                            double h_gamma = 0.0, double h_beta = 0.0);
DnlsObservables dnls_observables(const models::DnlsParams& p, double beta, int m, double h_mu = 0.0,
                                 double h_beta = 0.0);
double cylinder_energy(const models::CylinderParams& p, double beta, int m0, double h_beta = 0.0);

// Sweeps ------------------------------------------------------------------

struct ObservableFlags {
  bool stretch_sq = false;
  bool energy = false;
  bool density = false;

  bool any() const { return stretch_sq || energy || density; }
};

/// Observables the model defines.
ObservableFlags supported_observables(const models::ModelSpec& model);

struct FdSteps {
  double h_beta = 0.0;  // <= 0: default
  double h_param = 0.0; // gamma for the chain, mu for DNLS
};

struct SweepSpec {
  models::ModelSpec model;
  std::vector<double> betas;
  int m = 20;
  ObservableFlags observables;
  FdSteps steps;
  int threads = 0;  // 0: hardware concurrency
};

struct SweepRow {
  double beta = 0.0;
  double free_energy = 0.0;
  std::optional<double> stretch_sq, energy, density;
};

struct SweepResult {
  models::ModelSpec model;
  int m = 0;
  ObservableFlags columns;
  FdSteps steps;
  std::vector<SweepRow> rows;
};

std::vector<double> beta_grid(double start, double stop, int count, bool log_spaced);

/// Rows come back in grid order regardless of the worker that produced them.
SweepResult run_sweep(const SweepSpec& spec);

void write_csv(const SweepResult& result, std::ostream& out);

// Convergence studies -----------------------------------------------------

enum class ReferenceKind { automatic, analytic, largest };

struct ConvergenceSpec {
  models::ModelSpec model;
  double beta = 1.0;
  std::vector<int> m_list;
  ReferenceKind reference = ReferenceKind::automatic;
  int m_ref = 0;  // for ReferenceKind::largest; 0 means max(m_list)
  int threads = 0;
};

struct ConvergenceRow {
  int m = 0;
  double free_energy = 0.0;
  double rel_error = 0.0;
};

struct ConvergenceResult {
  double reference_value = 0.0;
  bool analytic_reference = false;
  int m_ref = 0;
  std::vector<ConvergenceRow> rows;
};

ConvergenceResult run_convergence(const ConvergenceSpec& spec);

void write_csv(const ConvergenceResult& result, std::ostream& out);

/// 17 significant digits, locale independent.
std::string format_double(double value);

}  // namespace ttm::thermo
