// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ttm/ttm.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "ttm/error.hpp"
#include "ttm/models.hpp"
#include "ttm/quad.hpp"
#include "ttm/selftest.hpp"
#include "ttm/thermo.hpp"

struct ttm_model_s {
  ttm::models::ModelSpec spec;
};
struct ttm_rule_s {
  ttm::quad::QuadratureRule rule;
};
struct ttm_sweep_s {
  ttm::thermo::SweepResult result;
};
struct ttm_convergence_s {
  ttm::thermo::ConvergenceResult result;
};

namespace {

thread_local std::string g_last_error;

ttm_status fail(ttm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

ttm_status status_of(ttm::ErrorCode code) {
  switch (code) {
    case ttm::ErrorCode::domain: return TTM_ERR_DOMAIN;
    case ttm::ErrorCode::convergence: return TTM_ERR_CONVERGENCE;
    case ttm::ErrorCode::resource: return TTM_ERR_RESOURCE;
    case ttm::ErrorCode::assembly: return TTM_ERR_ASSEMBLY;
    case ttm::ErrorCode::numeric: return TTM_ERR_NUMERIC;
  }
  return TTM_ERR_INTERNAL;
}

// Runs body and translates any exception into a status code.
template <class Body>
ttm_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return TTM_OK;
  } catch (const ttm::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TTM_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(TTM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TTM_ERR_INTERNAL, "unknown exception");
  }
}

ttm_status null_argument(const char* what) {
  return fail(TTM_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

ttm_status copy_text(const std::string& text, char* buf, size_t size, size_t* needed) {
  if (needed) *needed = text.size();
  if (buf && size > 0) {
    const size_t n = std::min(size - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return TTM_OK;
}

template <class Writer>
ttm_status write_file(const char* path, Writer&& writer) {
  if (!path) return null_argument("path");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure(std::string("cannot open ") + path);
    writer(out);
    out.flush();
    if (!out) throw std::ios_base::failure(std::string("write failed: ") + path);
  });
}

ttm_status create_model(ttm::models::ModelSpec spec, ttm_model* out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    std::visit([](const auto& p) { p.validate(); }, spec);
    *out = new ttm_model_s{std::move(spec)};
  });
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

extern "C" {

const char* ttm_version(void) { return "0.1.0"; }

const char* ttm_last_error(void) { return g_last_error.c_str(); }

const char* ttm_status_string(ttm_status status) {
  switch (status) {
    case TTM_OK: return "ok";
    case TTM_ERR_DOMAIN: return "parameter domain error";
    case TTM_ERR_CONVERGENCE: return "convergence failure";
    case TTM_ERR_RESOURCE: return "resource limit exceeded";
    case TTM_ERR_ASSEMBLY: return "matrix assembly error";
    case TTM_ERR_NUMERIC: return "numeric failure";
    case TTM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TTM_ERR_IO: return "i/o error";
    case TTM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ttm_status ttm_model_create_chain(double eta, double mu3, double lambda, double gamma, ttm_model* out) {
  return create_model(ttm::models::ParticleChainParams{eta, mu3, lambda, gamma}, out);
}

ttm_status ttm_model_create_dnls(double g, double mu, ttm_model* out) {
  return create_model(ttm::models::DnlsParams{g, mu}, out);
}

ttm_status ttm_model_create_cylinder(double eta, double ax, double ay, int ly, ttm_model* out) {
  return create_model(ttm::models::CylinderParams{eta, ax, ay, ly}, out);
}

void ttm_model_destroy(ttm_model model) { delete model; }

ttm_status ttm_free_energy(ttm_model model, double beta, int m, double* free_energy, double* lambda1) {
  if (!model) return null_argument("model");
  if (!free_energy) return null_argument("free_energy");
  return guarded([&] {
    const auto s = ttm::models::solve(model->spec, beta, m);
    *free_energy = s.free_energy;
    if (lambda1) *lambda1 = s.lambda1;
  });
}

ttm_status ttm_reference_free_energy(ttm_model model, double beta, double* free_energy, int* available) {
  if (!model) return null_argument("model");
  if (!free_energy || !available) return null_argument("output pointer");
  return guarded([&] {
    const auto ref = ttm::models::reference_free_energy(model->spec, beta);
    *available = ref.has_value() ? 1 : 0;
    *free_energy = ref.value_or(kNaN);
  });
}

ttm_status ttm_observables(ttm_model model, double beta, int m, unsigned mask, double h_param, double h_beta,
                           double* stretch_sq, double* energy, double* density) {
  if (!model) return null_argument("model");
  return guarded([&] {
    ttm::thermo::SweepSpec spec;
    spec.model = model->spec;
    spec.betas = {beta};
    spec.m = m;
    spec.observables = {(mask & TTM_OBS_STRETCH_SQ) != 0, (mask & TTM_OBS_ENERGY) != 0,
                        (mask & TTM_OBS_DENSITY) != 0};
    spec.steps = {h_beta, h_param};
    spec.threads = 1;
    const auto result = ttm::thermo::run_sweep(spec);
    const auto& row = result.rows.front();
    if (stretch_sq) *stretch_sq = row.stretch_sq.value_or(kNaN);
    if (energy) *energy = row.energy.value_or(kNaN);
    if (density) *density = row.density.value_or(kNaN);
  });
}

ttm_status ttm_rule_gauss_hermite(int m, double a, ttm_rule* out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new ttm_rule_s{ttm::quad::gauss_hermite_rescaled(m, a)}; });
}

ttm_status ttm_rule_half_gaussian(double a, double b, int m, ttm_rule* out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new ttm_rule_s{ttm::quad::half_line_gaussian_rule(a, b, m)}; });
}

size_t ttm_rule_size(ttm_rule rule) { return rule ? rule->rule.size() : 0; }

ttm_status ttm_rule_copy(ttm_rule rule, double* nodes, double* weights) {
  if (!rule) return null_argument("rule");
  const auto& r = rule->rule;
  if (nodes) std::copy(r.nodes.begin(), r.nodes.end(), nodes);
  if (weights) std::copy(r.weights.begin(), r.weights.end(), weights);
  return TTM_OK;
}

void ttm_rule_destroy(ttm_rule rule) { delete rule; }

ttm_status ttm_beta_grid(double start, double stop, int count, int log_spaced, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto grid = ttm::thermo::beta_grid(start, stop, count, log_spaced != 0);
    std::copy(grid.begin(), grid.end(), out);
  });
}

ttm_status ttm_sweep_run(ttm_model model, const double* betas, size_t count, int m, unsigned observables,
                         double h_param, double h_beta, int threads, ttm_sweep* out) {
  if (!model) return null_argument("model");
  if (!out) return null_argument("out");
  if (!betas && count > 0) return null_argument("betas");
  *out = nullptr;
  return guarded([&] {
    ttm::thermo::SweepSpec spec;
    spec.model = model->spec;
    spec.betas.assign(betas, betas + count);
    spec.m = m;
    spec.observables = {(observables & TTM_OBS_STRETCH_SQ) != 0, (observables & TTM_OBS_ENERGY) != 0,
                        (observables & TTM_OBS_DENSITY) != 0};
    spec.steps = {h_beta, h_param};
    spec.threads = threads;
    *out = new ttm_sweep_s{ttm::thermo::run_sweep(spec)};
  });
}

size_t ttm_sweep_rows(ttm_sweep sweep) { return sweep ? sweep->result.rows.size() : 0; }

ttm_status ttm_sweep_row(ttm_sweep sweep, size_t row, double* beta, double* free_energy, double* stretch_sq,
                         double* energy, double* density) {
  if (!sweep) return null_argument("sweep");
  if (row >= sweep->result.rows.size()) return fail(TTM_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = sweep->result.rows[row];
  if (beta) *beta = r.beta;
  if (free_energy) *free_energy = r.free_energy;
  if (stretch_sq) *stretch_sq = r.stretch_sq.value_or(kNaN);
  if (energy) *energy = r.energy.value_or(kNaN);
  if (density) *density = r.density.value_or(kNaN);
  return TTM_OK;
}

ttm_status ttm_sweep_write_csv(ttm_sweep sweep, const char* path) {
  if (!sweep) return null_argument("sweep");
  const ttm_status st = write_file(path, [&](std::ostream& out) { ttm::thermo::write_csv(sweep->result, out); });
  return st == TTM_ERR_INTERNAL ? TTM_ERR_IO : st;
}

ttm_status ttm_sweep_csv(ttm_sweep sweep, char* buf, size_t size, size_t* needed) {
  if (!sweep) return null_argument("sweep");
  std::ostringstream out;
  ttm::thermo::write_csv(sweep->result, out);
  return copy_text(out.str(), buf, size, needed);
}

void ttm_sweep_destroy(ttm_sweep sweep) { delete sweep; }

ttm_status ttm_convergence_run(ttm_model model, double beta, const int* m_list, size_t count,
                               ttm_reference reference, int m_ref, int threads, ttm_convergence* out) {
  if (!model) return null_argument("model");
  if (!out) return null_argument("out");
  if (!m_list && count > 0) return null_argument("m_list");
  *out = nullptr;
  return guarded([&] {
    ttm::thermo::ConvergenceSpec spec;
    spec.model = model->spec;
    spec.beta = beta;
    spec.m_list.assign(m_list, m_list + count);
    switch (reference) {
      case TTM_REF_AUTO: spec.reference = ttm::thermo::ReferenceKind::automatic; break;
      case TTM_REF_ANALYTIC: spec.reference = ttm::thermo::ReferenceKind::analytic; break;
      case TTM_REF_LARGEST: spec.reference = ttm::thermo::ReferenceKind::largest; break;
      default: throw ttm::DomainError("unknown reference strategy");
    }
    spec.m_ref = m_ref;
    spec.threads = threads;
    *out = new ttm_convergence_s{ttm::thermo::run_convergence(spec)};
  });
}

size_t ttm_convergence_rows(ttm_convergence study) { return study ? study->result.rows.size() : 0; }

ttm_status ttm_convergence_row(ttm_convergence study, size_t row, int* m, double* free_energy, double* rel_error) {
  if (!study) return null_argument("study");
  if (row >= study->result.rows.size()) return fail(TTM_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = study->result.rows[row];
  if (m) *m = r.m;
  if (free_energy) *free_energy = r.free_energy;
  if (rel_error) *rel_error = r.rel_error;
  return TTM_OK;
}

ttm_status ttm_convergence_reference(ttm_convergence study, double* value, int* analytic, int* m_ref) {
  if (!study) return null_argument("study");
  if (value) *value = study->result.reference_value;
  if (analytic) *analytic = study->result.analytic_reference ? 1 : 0;
  if (m_ref) *m_ref = study->result.m_ref;
  return TTM_OK;
}

ttm_status ttm_convergence_write_csv(ttm_convergence study, const char* path) {
  if (!study) return null_argument("study");
  const ttm_status st = write_file(path, [&](std::ostream& out) { ttm::thermo::write_csv(study->result, out); });
  return st == TTM_ERR_INTERNAL ? TTM_ERR_IO : st;
}

void ttm_convergence_destroy(ttm_convergence study) { delete study; }

ttm_status ttm_selftest(unsigned flags, int* passed, char* buf, size_t size, size_t* needed) {
  if (!passed) return null_argument("passed");
  std::string text;
  const ttm_status st = guarded([&] {
    ttm::selftest::Options options;
    options.inject_specfun_fault = (flags & TTM_SELFTEST_INJECT_SPECFUN_FAULT) != 0;
    const auto report = ttm::selftest::run(options);
    *passed = report.passed() ? 1 : 0;
    text = report.to_string();
  });
  if (st != TTM_OK) return st;
  return copy_text(text, buf, size, needed);
}

}  // extern "C"
