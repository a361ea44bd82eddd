// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "ttm/nystrom.hpp"
#include "ttm/quad.hpp"

namespace ttm::models {

/// Particle chain with on-site potential
///   V_loc(q) = eta q^2/2 + mu3 q^3/6 + lambda q^4/24
/// and nearest-neighbour coupling gamma (q - q')^2 / 2.
struct ParticleChainParams {
  double eta = 1.0;
  double mu3 = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;

  void validate() const;
  double local_potential(double q) const;
};

/// Defocusing discrete nonlinear Schroedinger chain at chemical potential mu.
struct DnlsParams {
  double g = 1.0;
  double mu = 0.0;

  void validate() const;
};

/// Harmonic oscillators on a cylinder of circumference ly.
struct CylinderParams {
  double eta = 1.0;
  double ax = 0.0;
  double ay = 0.0;
  int ly = 1;

  void validate() const;
};

using ModelSpec = std::variant<ParticleChainParams, DnlsParams, CylinderParams>;

std::string model_name(const ModelSpec& model);

// Kernels (log space) -------------------------------------------------------

double particle_chain_log_kernel(const ParticleChainParams& p, double beta, double q, double qp);
nystrom::LogKernel particle_chain_kernel(const ParticleChainParams& p, double beta);

double dnls_log_kernel(double beta, double rho, double rhop);
nystrom::LogKernel dnls_kernel(double beta);

double cylinder_log_kernel(const CylinderParams& p, double beta, std::span<const double> q,
                           std::span<const double> qp);
nystrom::LogKernelVec cylinder_kernel(const CylinderParams& p, double beta);

// Quadrature rules for each model's weight function -------------------------

quad::QuadratureRule particle_chain_rule(const ParticleChainParams& p, double beta, int m);
quad::QuadratureRule dnls_rule(const DnlsParams& p, double beta, int m);
quad::TensorRule cylinder_rule(const CylinderParams& p, double beta, int m0,
                               std::size_t budget = quad::kDefaultTensorBudget);

/// log of the weight normalization c(mu, beta) of the DNLS measure.
double dnls_log_normalization(const DnlsParams& p, double beta);

// Free energies --------------------------------------------------------------

struct Solution {
  double free_energy = 0.0;
  double lambda1 = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::size_t order = 0;
  bool dense_fallback = false;
};

/// m is the number of quadrature points (per axis for the cylinder).
nystrom::NystromMatrix assemble_model(const ModelSpec& model, double beta, int m);
Solution solve(const ModelSpec& model, double beta, int m, const nystrom::PowerOptions& options = {});
double free_energy(const ModelSpec& model, double beta, int m);

double particle_chain_free_energy(const ParticleChainParams& p, double beta, int m);
double dnls_free_energy(const DnlsParams& p, double beta, int m);
double cylinder_free_energy(const CylinderParams& p, double beta, int m0);

// Factorized references ------------------------------------------------------

/// Exact free energy at gamma = 0, from one adaptive 1D integral of exp(-beta V_loc).
double reference_particle_chain_gamma0(const ParticleChainParams& p, double beta);

/// Exact per-site free energy at ax = 0 from the ring's Gaussian determinant.
double reference_cylinder_ax0(const CylinderParams& p, double beta);

/// The factorized reference when the model parameters admit one.
std::optional<double> reference_free_energy(const ModelSpec& model, double beta);

}  // namespace ttm::models
