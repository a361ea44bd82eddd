// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <memory>
#include <ostream>
#include <sstream>

#include "ttm/ttm.h"

namespace ttm::cli {

namespace {

struct ModelDeleter {
  void operator()(ttm_model m) const { ttm_model_destroy(m); }
};
struct SweepDeleter {
  void operator()(ttm_sweep s) const { ttm_sweep_destroy(s); }
};
struct ConvergenceDeleter {
  void operator()(ttm_convergence s) const { ttm_convergence_destroy(s); }
};
using ModelPtr = std::unique_ptr<ttm_model_s, ModelDeleter>;
using SweepPtr = std::unique_ptr<ttm_sweep_s, SweepDeleter>;
using ConvergencePtr = std::unique_ptr<ttm_convergence_s, ConvergenceDeleter>;

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void build_app(CLI::App& app, RunConfig& c) {
  app.add_option("command", c.command, "free-energy | convergence | observables | selftest")
      ->required()
      ->check(CLI::IsMember({"free-energy", "convergence", "observables", "selftest"}));
  app.add_option("--model", c.model, "chain | dnls | cylinder")->check(CLI::IsMember({"chain", "dnls", "cylinder"}));
  app.add_option("--beta-start", c.beta_start, "first inverse temperature");
  app.add_option("--beta-stop", c.beta_stop, "last inverse temperature");
  app.add_option("--beta-count", c.beta_count, "number of grid points");
  app.add_flag("--log-beta", c.log_beta, "logarithmically spaced beta grid");
  app.add_option("--m", c.m, "quadrature points (chain, dnls)");
  app.add_option("--m0", c.m0, "quadrature points per axis (cylinder)");
  app.add_option("--ly", c.ly, "cylinder circumference");
  app.add_option("--eta", c.eta, "quadratic on-site coefficient");
  app.add_option("--mu3", c.mu3, "cubic on-site coefficient");
  app.add_option("--lambda", c.lambda, "quartic on-site coefficient");
  app.add_option("--gamma", c.gamma, "nearest-neighbour coupling");
  app.add_option("--g", c.g, "DNLS nonlinearity (> 0)");
  app.add_option("--mu", c.mu, "DNLS chemical potential");
  app.add_option("--ax", c.ax, "cylinder coupling along the chain");
  app.add_option("--ay", c.ay, "cylinder coupling around the ring");
  app.add_option("--m-list", c.m_list, "comma-separated quadrature sizes (convergence)")->delimiter(',');
  app.add_option("--reference", c.reference, "auto | analytic | largest")
      ->check(CLI::IsMember({"auto", "analytic", "largest"}));
  app.add_option("--m-ref", c.m_ref, "reference size for --reference largest");
  app.add_option("--observables", c.observables, "comma-separated: stretch_sq, energy, density")
      ->delimiter(',')
      ->check(CLI::IsMember({"stretch_sq", "energy", "density"}));
  app.add_option("--h-beta", c.h_beta, "finite-difference step in beta");
  app.add_option("--h-param", c.h_param, "finite-difference step in gamma (chain) or mu (dnls)");
  app.add_option("--out", c.out, "output CSV path (default: stdout)");
  app.add_option("--threads", c.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--inject-fault", c.inject_fault)->group("");
  app.set_config("--config", "", "flat `key = value` configuration file");
}

int exit_for(ttm_status st) {
  switch (st) {
    case TTM_OK: return kSuccess;
    case TTM_ERR_DOMAIN:
    case TTM_ERR_RESOURCE:
    case TTM_ERR_INVALID_ARGUMENT: return kUsageError;
    default: return kNumericFailure;
  }
}

int report(ttm_status st, std::ostream& err) {
  err << "error: " << ttm_status_string(st) << ": " << ttm_last_error() << '\n';
  return exit_for(st);
}

ModelPtr make_model(const RunConfig& c, ttm_status& st) {
  ttm_model m = nullptr;
  if (c.model == "chain") st = ttm_model_create_chain(c.eta, c.mu3, c.lambda, c.gamma, &m);
  else if (c.model == "dnls") st = ttm_model_create_dnls(c.g, c.mu, &m);
  else st = ttm_model_create_cylinder(c.eta, c.ax, c.ay, c.ly, &m);
  return ModelPtr(m);
}

int points(const RunConfig& c) { return c.model == "cylinder" ? c.m0 : c.m; }

unsigned observable_mask(const RunConfig& c) {
  if (c.observables.empty()) {
    if (c.model == "chain") return TTM_OBS_STRETCH_SQ | TTM_OBS_ENERGY;
    if (c.model == "dnls") return TTM_OBS_ENERGY | TTM_OBS_DENSITY;
    return TTM_OBS_ENERGY;
  }
  unsigned mask = 0;
  for (const auto& o : c.observables) {
    if (o == "stretch_sq") mask |= TTM_OBS_STRETCH_SQ;
    if (o == "energy") mask |= TTM_OBS_ENERGY;
    if (o == "density") mask |= TTM_OBS_DENSITY;
  }
  return mask;
}

template <class Handle, class CsvFn, class FileFn>
int emit(const RunConfig& c, Handle handle, CsvFn to_text, FileFn to_file, std::ostream& out, std::ostream& err) {
  if (!c.out.empty()) {
    const ttm_status st = to_file(handle, c.out.c_str());
    return st == TTM_OK ? kSuccess : (report(st, err), kNumericFailure);
  }
  out << to_text(handle);
  return kSuccess;
}

std::string sweep_text(ttm_sweep s) {
  size_t needed = 0;
  ttm_sweep_csv(s, nullptr, 0, &needed);
  std::string text(needed + 1, '\0');
  ttm_sweep_csv(s, text.data(), text.size(), &needed);
  text.resize(needed);
  return text;
}

std::string convergence_text(ttm_convergence s) {
  std::ostringstream out;
  out << "m,rel_error\n";
  for (size_t i = 0; i < ttm_convergence_rows(s); ++i) {
    int m = 0;
    double err = 0.0;
    ttm_convergence_row(s, i, &m, nullptr, &err);
    out << m << ',' << number(err) << '\n';
  }
  return out.str();
}

int run_selftest(const RunConfig& c, std::ostream& out) {
  int passed = 0;
  std::string text(1 << 16, '\0');
  size_t needed = 0;
  const ttm_status st =
      ttm_selftest(c.inject_fault ? TTM_SELFTEST_INJECT_SPECFUN_FAULT : 0u, &passed, text.data(), text.size(), &needed);
  if (st != TTM_OK) {
    out << "selftest aborted: " << ttm_last_error() << '\n';
    return kNumericFailure;
  }
  text.resize(std::min(needed, text.size() - 1));
  out << text;
  return passed ? kSuccess : kNumericFailure;
}

int run_sweep(const RunConfig& c, ttm_model model, unsigned mask, std::ostream& out, std::ostream& err) {
  std::vector<double> betas(static_cast<std::size_t>(c.beta_count));
  const double stop = c.beta_count > 1 ? c.beta_stop : c.beta_start;
  ttm_status st = ttm_beta_grid(c.beta_start, stop, c.beta_count, c.log_beta ? 1 : 0, betas.data());
  if (st != TTM_OK) return report(st, err);
  ttm_sweep raw = nullptr;
  st = ttm_sweep_run(model, betas.data(), betas.size(), points(c), mask, c.h_param, c.h_beta, c.threads, &raw);
  SweepPtr sweep(raw);
  if (st != TTM_OK) return report(st, err);
  return emit(c, sweep.get(), sweep_text, ttm_sweep_write_csv, out, err);
}

int run_convergence(const RunConfig& c, ttm_model model, std::ostream& out, std::ostream& err) {
  std::vector<int> ms = c.m_list;
  if (ms.empty())
    for (int m = 2; m <= points(c); ++m) ms.push_back(m);
  ttm_reference ref = TTM_REF_AUTO;
  if (c.reference == "analytic") ref = TTM_REF_ANALYTIC;
  if (c.reference == "largest") ref = TTM_REF_LARGEST;
  ttm_convergence raw = nullptr;
  const ttm_status st = ttm_convergence_run(model, c.beta_start, ms.data(), ms.size(), ref, c.m_ref, c.threads, &raw);
  ConvergencePtr study(raw);
  if (st != TTM_OK) return report(st, err);
  return emit(c, study.get(), convergence_text, ttm_convergence_write_csv, out, err);
}

}  // namespace

std::string RunConfig::to_config_text() const {
  std::ostringstream s;
  auto join_ints = [](const std::vector<int>& v) {
    std::string r;
    for (std::size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + std::to_string(v[i]);
    return r;
  };
  auto join = [](const std::vector<std::string>& v) {
    std::string r;
    for (std::size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + v[i];
    return r;
  };
  s << "command = " << command << '\n';
  if (!model.empty()) s << "model = " << model << '\n';
  s << "beta-start = " << number(beta_start) << '\n'
    << "beta-stop = " << number(beta_stop) << '\n'
    << "beta-count = " << beta_count << '\n'
    << "log-beta = " << (log_beta ? "true" : "false") << '\n'
    << "m = " << m << '\n'
    << "m0 = " << m0 << '\n'
    << "ly = " << ly << '\n'
    << "eta = " << number(eta) << '\n'
    << "mu3 = " << number(mu3) << '\n'
    << "lambda = " << number(lambda) << '\n'
    << "gamma = " << number(gamma) << '\n'
    << "g = " << number(g) << '\n'
    << "mu = " << number(mu) << '\n'
    << "ax = " << number(ax) << '\n'
    << "ay = " << number(ay) << '\n';
  if (!m_list.empty()) s << "m-list = " << join_ints(m_list) << '\n';
  s << "reference = " << reference << '\n' << "m-ref = " << m_ref << '\n';
  if (!observables.empty()) s << "observables = " << join(observables) << '\n';
  s << "h-beta = " << number(h_beta) << '\n' << "h-param = " << number(h_param) << '\n';
  if (!out.empty()) s << "out = " << out << '\n';
  s << "threads = " << threads << '\n';
  return s.str();
}

bool parse_command_line(int argc, const char* const* argv, RunConfig& config, int& exit_code, std::ostream& out,
                        std::ostream& err) {
  CLI::App app("Free energy of one-dimensional classical chains via Nystrom-discretized transfer operators",
               "thermo-transfer");
  build_app(app, config);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err);
    if (exit_code != 0) exit_code = kUsageError;
    return false;
  }
  exit_code = kSuccess;
  return true;
}

std::string validate(const RunConfig& c) {
  if (c.command == "selftest") return {};
  if (c.model.empty()) return "--model is required";
  if (!(c.beta_start > 0.0)) return "--beta-start must be positive";
  if (c.beta_count < 1) return "--beta-count must be >= 1 (empty grid)";
  if (c.beta_count > 1 && !(c.beta_stop > c.beta_start)) return "--beta-stop must exceed --beta-start";
  if (c.m < 1 || c.m0 < 1) return "--m and --m0 must be >= 1";
  if (c.command == "convergence") {
    if (c.beta_count != 1) return "convergence runs at a single beta (--beta-count 1)";
    for (int m : c.m_list)
      if (m < 1) return "--m-list entries must be >= 1";
  }
  return {};
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (const std::string msg = validate(c); !msg.empty()) {
    err << "error: " << msg << '\n';
    return kUsageError;
  }
  if (c.command == "selftest") return run_selftest(c, out);

  ttm_status st = TTM_OK;
  ModelPtr model = make_model(c, st);
  if (st != TTM_OK) return report(st, err);
  if (c.command == "free-energy") return run_sweep(c, model.get(), 0u, out, err);
  if (c.command == "observables") return run_sweep(c, model.get(), observable_mask(c), out, err);
  return run_convergence(c, model.get(), out, err);
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  int code = 0;
  if (!parse_command_line(argc, argv, config, code, out, err)) return code;
  return run(config, out, err);
}

}  // namespace ttm::cli
