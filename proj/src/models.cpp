// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ttm/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ttm/error.hpp"
#include "ttm/specfun.hpp"

namespace ttm::models {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("beta must be positive and finite, got " + std::to_string(beta));
}

void check_m(int m) {
  if (m < 1) throw DomainError("number of quadrature points must be >= 1, got " + std::to_string(m));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void ParticleChainParams::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("particle chain: eta must be positive");
  if (!std::isfinite(mu3) || !std::isfinite(lambda) || !std::isfinite(gamma))
    throw DomainError("particle chain: coefficients must be finite");
  if (lambda < 0.0) throw DomainError("particle chain: lambda must be non-negative");
  if (std::abs(lambda) < std::abs(mu3)) throw DomainError("particle chain: need |lambda| >= |mu3|");
  if (gamma < 0.0) throw DomainError("particle chain: gamma must be non-negative");
}

double ParticleChainParams::local_potential(double q) const {
  const double q2 = q * q;
  return 0.5 * eta * q2 + mu3 * q2 * q / 6.0 + lambda * q2 * q2 / 24.0;
}

void DnlsParams::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("dnls: g must be positive (defocusing)");
  if (!std::isfinite(mu)) throw DomainError("dnls: chemical potential must be finite");
}

void CylinderParams::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("cylinder: eta must be positive");
  if (!(ax >= 0.0) || !(ay >= 0.0) || !std::isfinite(ax) || !std::isfinite(ay))
    throw DomainError("cylinder: coupling coefficients must be non-negative");
  if (ly < 1) throw DomainError("cylinder: ly must be >= 1");
}

std::string model_name(const ModelSpec& model) {
  return std::visit(overloaded{[](const ParticleChainParams&) { return std::string("chain"); },
                               [](const DnlsParams&) { return std::string("dnls"); },
                               [](const CylinderParams&) { return std::string("cylinder"); }},
                    model);
}

// Kernels -----------------------------------------------------------------

double particle_chain_log_kernel(const ParticleChainParams& p, double beta, double q, double qp) {
  const double q2 = q * q, qp2 = qp * qp;
  const double d = q - qp;
  return -beta * (p.mu3 / 12.0 * (q2 * q + qp2 * qp) + p.lambda / 48.0 * (q2 * q2 + qp2 * qp2) +
                  0.5 * p.gamma * d * d);
}

nystrom::LogKernel particle_chain_kernel(const ParticleChainParams& p, double beta) {
  return [p, beta](double q, double qp) { return particle_chain_log_kernel(p, beta, q, qp); };
}

double dnls_log_kernel(double beta, double rho, double rhop) {
  if (!(rho >= 0.0) || !(rhop >= 0.0)) throw DomainError("dnls kernel: densities must be non-negative");
  return std::log(kTwoPi) + specfun::log_i0(beta * std::sqrt(rho * rhop)) - 0.5 * beta * (rho + rhop);
}

nystrom::LogKernel dnls_kernel(double beta) {
  return [beta](double rho, double rhop) { return dnls_log_kernel(beta, rho, rhop); };
}

double cylinder_log_kernel(const CylinderParams& p, double beta, std::span<const double> q,
                           std::span<const double> qp) {
  const std::size_t n = q.size();
  if (n != qp.size() || n != static_cast<std::size_t>(p.ly))
    throw DomainError("cylinder kernel: vectors must have length ly");
  double energy = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t next = (l + 1) % n;
    const double dx = q[l] - qp[l];
    const double dy = q[l] - q[next];
    const double dyp = qp[l] - qp[next];
    energy += 0.5 * p.ax * dx * dx + 0.25 * p.ay * (dy * dy + dyp * dyp);
  }
  return -beta * energy;
}

nystrom::LogKernelVec cylinder_kernel(const CylinderParams& p, double beta) {
  return [p, beta](std::span<const double> q, std::span<const double> qp) {
    return cylinder_log_kernel(p, beta, q, qp);
  };
}

// Rules -------------------------------------------------------------------

quad::QuadratureRule particle_chain_rule(const ParticleChainParams& p, double beta, int m) {
  p.validate();
  check_beta(beta);
  check_m(m);
  return quad::gauss_hermite_rescaled(m, beta * p.eta);
}

quad::QuadratureRule dnls_rule(const DnlsParams& p, double beta, int m) {
  p.validate();
  check_beta(beta);
  check_m(m);
  return quad::half_line_gaussian_rule(beta * p.g, p.mu / p.g, m);
}

quad::TensorRule cylinder_rule(const CylinderParams& p, double beta, int m0, std::size_t budget) {
  p.validate();
  check_beta(beta);
  check_m(m0);
  return quad::tensor_product(quad::gauss_hermite_rescaled(m0, beta * p.eta), p.ly, budget);
}

double dnls_log_normalization(const DnlsParams& p, double beta) {
  p.validate();
  check_beta(beta);
  const double a = beta * p.g;
  const double b = p.mu / p.g;
  const double tail = specfun::erfc(-b * std::sqrt(0.5 * a));
  if (!(tail > 0.0)) throw DomainError("dnls: chemical potential too negative for the weight normalization");
  return std::log(2.0 * std::sqrt(a / kTwoPi)) - std::log(tail);
}

// Free energies ---------------------------------------------------------------

nystrom::NystromMatrix assemble_model(const ModelSpec& model, double beta, int m) {
  return std::visit(
      overloaded{
          [&](const ParticleChainParams& p) {
            return nystrom::assemble(particle_chain_kernel(p, beta), particle_chain_rule(p, beta, m));
          },
          [&](const DnlsParams& p) { return nystrom::assemble(dnls_kernel(beta), dnls_rule(p, beta, m)); },
          [&](const CylinderParams& p) {
            return nystrom::assemble(cylinder_kernel(p, beta), cylinder_rule(p, beta, m));
          }},
      model);
}

Solution solve(const ModelSpec& model, double beta, int m, const nystrom::PowerOptions& options) {
  const nystrom::NystromMatrix t = assemble_model(model, beta, m);
  const nystrom::DominantEig eig = nystrom::dominant_eigenvalue(t, options);
  const double log_lambda = std::log(eig.lambda1);

  // -beta F for each model
  const double minus_beta_f = std::visit(
      overloaded{[&](const ParticleChainParams& p) {
                   return std::log(kTwoPi / beta) - 0.5 * std::log(p.eta) + log_lambda;
                 },
                 [&](const DnlsParams& p) {
                   return 0.5 * beta * p.mu * p.mu / p.g + log_lambda - dnls_log_normalization(p, beta);
                 },
                 [&](const CylinderParams& p) {
                   return std::log(kTwoPi / beta) - 0.5 * std::log(p.eta) + log_lambda / p.ly;
                 }},
      model);

  Solution s;
  s.free_energy = -minus_beta_f / beta;
  s.lambda1 = eig.lambda1;
  s.residual = eig.residual;
  s.iterations = eig.iterations;
  s.order = static_cast<std::size_t>(t.order());
  s.dense_fallback = eig.dense_fallback;
  return s;
}

double free_energy(const ModelSpec& model, double beta, int m) { return solve(model, beta, m).free_energy; }

double particle_chain_free_energy(const ParticleChainParams& p, double beta, int m) {
  return free_energy(ModelSpec{p}, beta, m);
}

double dnls_free_energy(const DnlsParams& p, double beta, int m) { return free_energy(ModelSpec{p}, beta, m); }

double cylinder_free_energy(const CylinderParams& p, double beta, int m0) {
  return free_energy(ModelSpec{p}, beta, m0);
}

// References --------------------------------------------------------------

double reference_particle_chain_gamma0(const ParticleChainParams& p, double beta) {
  p.validate();
  check_beta(beta);
  if (p.gamma != 0.0) throw DomainError("reference_particle_chain_gamma0: requires gamma = 0");

  // beta V_loc(0) = 0; widen until both tails sit 60 units above the minimum
  auto bv = [&](double q) { return beta * p.local_potential(q); };
  double radius = 1.0;
  double floor = 0.0;
  for (int pass = 0; pass < 64; ++pass) {
    floor = 0.0;
    constexpr int kSamples = 4000;
    for (int i = 0; i <= kSamples; ++i) floor = std::min(floor, bv(-radius + 2.0 * radius * i / kSamples));
    if (bv(radius) - floor > 60.0 && bv(-radius) - floor > 60.0) break;
    radius *= 2.0;
  }
  auto integrand = [&](double q) { return std::exp(-(bv(q) - floor)); };
  const double left = quad::integrate_adaptive(integrand, -radius, 0.0, 1e-14).value;
  const double right = quad::integrate_adaptive(integrand, 0.0, radius, 1e-14).value;
  const double log_z1 = 0.5 * std::log(kTwoPi / beta) + std::log(left + right) - floor;
  return -log_z1 / beta;
}

double reference_cylinder_ax0(const CylinderParams& p, double beta) {
  p.validate();
  check_beta(beta);
  if (p.ax != 0.0) throw DomainError("reference_cylinder_ax0: requires ax = 0");
  double log_det = 0.0;
  for (int k = 0; k < p.ly; ++k)
    log_det += std::log(p.eta + p.ay * (2.0 - 2.0 * std::cos(kTwoPi * k / p.ly)));
  const double minus_beta_f = std::log(kTwoPi / beta) - 0.5 * log_det / p.ly;
  return -minus_beta_f / beta;
}

std::optional<double> reference_free_energy(const ModelSpec& model, double beta) {
  return std::visit(overloaded{[&](const ParticleChainParams& p) -> std::optional<double> {
                                 if (p.gamma == 0.0) return reference_particle_chain_gamma0(p, beta);
                                 return std::nullopt;
                               },
                               [&](const DnlsParams&) -> std::optional<double> { return std::nullopt; },
                               [&](const CylinderParams& p) -> std::optional<double> {
                                 if (p.ax == 0.0) return reference_cylinder_ax0(p, beta);
                                 return std::nullopt;
                               }},
                    model);
}

}  // namespace ttm::models
