// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ttm/thermo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "ttm/error.hpp"

namespace ttm::thermo {

namespace {

constexpr double kStencil2[] = {0.5};
constexpr double kStencil4[] = {2.0 / 3.0, -1.0 / 12.0};
constexpr double kStencil6[] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};

double beta_step(double beta, double h) {
  if (h <= 0.0) h = default_step(beta);
  // keep the whole stencil at positive temperature
  return std::min(h, beta / 6.0);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

template <class Work>
void parallel_for(std::size_t count, int threads, Work&& work) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    loop();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(loop);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Re-raise a point failure with the grid point it came from.
[[noreturn]] void rethrow_at(double beta, int m) {
  try {
    throw;
  } catch (const Error& e) {
    const std::string what = "at beta=" + format_double(beta) + ", m=" + std::to_string(m) + ": " + e.what();
    if (dynamic_cast<const DomainError*>(&e)) throw DomainError(what);
    if (const auto* c = dynamic_cast<const ConvergenceError*>(&e)) throw ConvergenceError(what, c->residual());
    if (dynamic_cast<const ResourceError*>(&e)) throw ResourceError(what);
    if (const auto* a = dynamic_cast<const AssemblyError*>(&e)) throw AssemblyError(what, a->row(), a->col());
    if (dynamic_cast<const NumericError*>(&e)) throw NumericError(what);
    throw Error(e.code(), what);
  }
}

}  // namespace

double default_step(double x) { return 1e-3 * std::max(1.0, std::abs(x)); }

double fd_derivative(const std::function<double(double)>& f, double x, double h, int order, int accuracy) {
  if (order != 1) throw DomainError("fd_derivative: only first derivatives are supported");
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("fd_derivative: step must be positive");
  std::span<const double> coeffs;
  switch (accuracy) {
    case 2: coeffs = kStencil2; break;
    case 4: coeffs = kStencil4; break;
    case 6: coeffs = kStencil6; break;
    default: throw DomainError("fd_derivative: accuracy must be 2, 4 or 6");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double offset = static_cast<double>(k + 1) * h;
    const double up = f(x + offset);
    const double down = f(x - offset);
    if (!std::isfinite(up) || !std::isfinite(down))
      throw NumericError("fd_derivative: non-finite function value near x=" + format_double(x));
    sum += coeffs[k] * (up - down);
  }
  return sum / h;
}

double fd_derivative_forward(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("fd_derivative_forward: step must be positive");
  static constexpr double kForward6[] = {-49.0 / 20.0, 6.0, -15.0 / 2.0, 20.0 / 3.0, -15.0 / 4.0, 6.0 / 5.0, -1.0 / 6.0};
  double sum = 0.0;
  for (int k = 0; k < 7; ++k) {
    const double v = f(x + k * h);
    if (!std::isfinite(v)) throw NumericError("fd_derivative_forward: non-finite function value near x=" + format_double(x));
    sum += kForward6[k] * v;
  }
  return sum / h;
}

ChainObservables particle_chain_observables(const models::ParticleChainParams& p, double beta, int m,
                                            double h_gamma, double h_beta) {
  p.validate();
  const double hb = beta_step(beta, h_beta);
  const double hg = h_gamma > 0.0 ? h_gamma : default_step(p.gamma);
  ChainObservables out;
  auto f_of_gamma = [&](double gamma) {
    models::ParticleChainParams q = p;
    q.gamma = gamma;
    return models::particle_chain_free_energy(q, beta, m);
  };
  // the stencil must stay inside gamma >= 0
  out.stretch_sq = p.gamma >= 3.0 * hg ? fd_derivative(f_of_gamma, p.gamma, hg)
                                       : fd_derivative_forward(f_of_gamma, p.gamma, hg);
  out.energy = fd_derivative([&](double b) { return b * models::particle_chain_free_energy(p, b, m); },
                             beta, hb);
  return out;
}

DnlsObservables dnls_observables(const models::DnlsParams& p, double beta, int m, double h_mu,
                                 double h_beta) {
  p.validate();
  const double hb = beta_step(beta, h_beta);
  const double hm = h_mu > 0.0 ? h_mu : default_step(p.mu);
  DnlsObservables out;
  out.density = -fd_derivative(
      [&](double mu) { return models::dnls_free_energy(models::DnlsParams{p.g, mu}, beta, m); }, p.mu, hm);
  const double d_beta_f =
      fd_derivative([&](double b) { return b * models::dnls_free_energy(p, b, m); }, beta, hb);
  out.energy = d_beta_f + p.mu * out.density;
  return out;
}

double cylinder_energy(const models::CylinderParams& p, double beta, int m0, double h_beta) {
  p.validate();
  const double hb = beta_step(beta, h_beta);
  return fd_derivative([&](double b) { return b * models::cylinder_free_energy(p, b, m0); }, beta, hb);
}

ObservableFlags supported_observables(const models::ModelSpec& model) {
  return std::visit(overloaded{[](const models::ParticleChainParams&) { return ObservableFlags{true, true, false}; },
                               [](const models::DnlsParams&) { return ObservableFlags{false, true, true}; },
                               [](const models::CylinderParams&) { return ObservableFlags{false, true, false}; }},
                    model);
}

std::vector<double> beta_grid(double start, double stop, int count, bool log_spaced) {
  if (count < 1) throw DomainError("beta grid: count must be >= 1");
  if (!(start > 0.0) || !std::isfinite(start) || !std::isfinite(stop))
    throw DomainError("beta grid: start must be positive");
  if (count == 1) return {start};
  if (!(stop > start)) throw DomainError("beta grid: stop must exceed start");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    grid[i] = log_spaced ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                         : start + t * (stop - start);
  }
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.betas.empty()) throw DomainError("sweep: empty beta grid");
  for (std::size_t i = 0; i < spec.betas.size(); ++i) {
    if (!(spec.betas[i] > 0.0)) throw DomainError("sweep: beta values must be positive");
    if (i > 0 && !(spec.betas[i] > spec.betas[i - 1]))
      throw DomainError("sweep: beta grid must be strictly increasing");
  }
  if (spec.m < 1) throw DomainError("sweep: m must be >= 1");
  const ObservableFlags supported = supported_observables(spec.model);
  if ((spec.observables.stretch_sq && !supported.stretch_sq) ||
      (spec.observables.density && !supported.density) || (spec.observables.energy && !supported.energy))
    throw DomainError("sweep: observable not defined for model " + models::model_name(spec.model));

  SweepResult result;
  result.model = spec.model;
  result.m = spec.m;
  result.columns = spec.observables;
  result.steps = spec.steps;
  result.rows.resize(spec.betas.size());

  parallel_for(spec.betas.size(), spec.threads, [&](std::size_t i) {
    const double beta = spec.betas[i];
    SweepRow row;
    row.beta = beta;
    try {
      row.free_energy = models::free_energy(spec.model, beta, spec.m);
      const ObservableFlags& want = spec.observables;
      if (want.any()) {
        std::visit(overloaded{[&](const models::ParticleChainParams& p) {
                                const auto obs = particle_chain_observables(p, beta, spec.m, spec.steps.h_param,
                                                                            spec.steps.h_beta);
                                if (want.stretch_sq) row.stretch_sq = obs.stretch_sq;
                                if (want.energy) row.energy = obs.energy;
                              },
                              [&](const models::DnlsParams& p) {
                                const auto obs =
                                    dnls_observables(p, beta, spec.m, spec.steps.h_param, spec.steps.h_beta);
                                if (want.density) row.density = obs.density;
                                if (want.energy) row.energy = obs.energy;
                              },
                              [&](const models::CylinderParams& p) {
                                row.energy = cylinder_energy(p, beta, spec.m, spec.steps.h_beta);
                              }},
                   spec.model);
      }
    } catch (const Error&) {
      rethrow_at(beta, spec.m);
    }
    result.rows[i] = row;
  });
  return result;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << "beta,free_energy";
  if (result.columns.stretch_sq) out << ",stretch_sq";
  if (result.columns.energy) out << ",energy";
  if (result.columns.density) out << ",density";
  out << '\n';
  for (const SweepRow& row : result.rows) {
    out << format_double(row.beta) << ',' << format_double(row.free_energy);
    if (result.columns.stretch_sq) out << ',' << format_double(row.stretch_sq.value_or(NAN));
    if (result.columns.energy) out << ',' << format_double(row.energy.value_or(NAN));
    if (result.columns.density) out << ',' << format_double(row.density.value_or(NAN));
    out << '\n';
  }
}

ConvergenceResult run_convergence(const ConvergenceSpec& spec) {
  if (spec.m_list.empty()) throw DomainError("convergence: empty m list");
  for (int m : spec.m_list)
    if (m < 1) throw DomainError("convergence: m values must be >= 1");

  ConvergenceResult result;
  std::optional<double> analytic;
  if (spec.reference != ReferenceKind::largest) analytic = models::reference_free_energy(spec.model, spec.beta);
  if (spec.reference == ReferenceKind::analytic && !analytic)
    throw DomainError("convergence: no factorized reference for these parameters");

  if (analytic) {
    result.reference_value = *analytic;
    result.analytic_reference = true;
  } else {
    result.m_ref = spec.m_ref > 0 ? spec.m_ref : *std::max_element(spec.m_list.begin(), spec.m_list.end());
    try {
      result.reference_value = models::free_energy(spec.model, spec.beta, result.m_ref);
    } catch (const Error&) {
      rethrow_at(spec.beta, result.m_ref);
    }
  }

  result.rows.resize(spec.m_list.size());
  parallel_for(spec.m_list.size(), spec.threads, [&](std::size_t i) {
    const int m = spec.m_list[i];
    ConvergenceRow row;
    row.m = m;
    try {
      row.free_energy = models::free_energy(spec.model, spec.beta, m);
    } catch (const Error&) {
      rethrow_at(spec.beta, m);
    }
    row.rel_error = std::abs(row.free_energy - result.reference_value) / std::abs(result.reference_value);
    result.rows[i] = row;
  });
  return result;
}

void write_csv(const ConvergenceResult& result, std::ostream& out) {
  out << "m,rel_error\n";
  for (const ConvergenceRow& row : result.rows) out << row.m << ',' << format_double(row.rel_error) << '\n';
}

}  // namespace ttm::thermo
