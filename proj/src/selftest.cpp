// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ttm/selftest.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "ttm/models.hpp"
#include "ttm/nystrom.hpp"
#include "ttm/quad.hpp"
#include "ttm/specfun.hpp"
#include "ttm/thermo.hpp"

namespace ttm::selftest {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { report_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++report_.checks;
    if (!ok) {
      report_.passed = false;
      report_.failures.push_back(what);
    }
  }
  void close(double rel_tol, double got, double want, const std::string& what) {
    const double err = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    std::ostringstream msg;
    msg << what << ": got " << thermo::format_double(got) << ", want " << thermo::format_double(want);
    check(err <= rel_tol, msg.str());
  }
  SuiteReport& report() { return report_; }

 private:
  SuiteReport report_;
};

void specfun_suite(Suite& s) {
  s.check(specfun::erf(0.0) == 0.0, "erf(0) == 0");
  for (double x : {0.1, 0.7, 1.9, 2.5, 4.0}) s.check(specfun::erf(-x) == -specfun::erf(x), "erf odd");
  s.close(1e-15, specfun::erf(1.0), 0.8427007929497149, "erf(1)");
  s.check(specfun::log_i0(0.0) == 0.0, "log_i0(0) == 0");
  s.close(1e-14, specfun::log_i0(1.0), std::log(1.2660658777520084), "log_i0(1)");
  const double x = specfun::kI0SeriesLimit;
  s.close(1e-13, specfun::detail::i0_scaled_asymptotic(x), specfun::detail::i0_scaled_series(x),
          "I0 branch continuity");
  double prev = 1.0;
  bool decreasing = true;
  for (double t = 0.25; t <= 60.0; t += 0.25) {
    const double v = specfun::i0_scaled(t);
    decreasing = decreasing && v < prev;
    prev = v;
  }
  s.check(decreasing, "e^{-x} I0(x) strictly decreasing");
  const double big = specfun::log_i0(700.0);
  s.check(std::isfinite(big), "log_i0(700) finite");
}

void quad_suite(Suite& s) {
  const auto gh = quad::gauss_hermite_rescaled(8, 5.0);
  s.close(1e-14, gh.integrate([](double q) { return q * q; }), 0.2, "Gauss-Hermite second moment");
  s.close(1e-13, gh.integrate([](double q) { return std::pow(q, 14); }), 135135.0 / std::pow(5.0, 7),
          "Gauss-Hermite 14th moment");
  const auto half = quad::half_line_gaussian_rule(1.0, 0.0, 12);
  double sum = 0.0;
  bool inside = true;
  for (std::size_t i = 0; i < half.size(); ++i) {
    sum += half.weights[i];
    inside = inside && half.nodes[i] > 0.0;
  }
  s.close(1e-13, sum, 1.0, "half-line rule mass");
  s.check(inside, "half-line nodes inside (0, inf)");
  s.close(1e-12, half.integrate([](double z) { return z; }), std::sqrt(2.0 / std::numbers::pi),
          "half-line first moment");
  const auto tr = quad::tensor_product(quad::gauss_hermite_rescaled(8, 1.0), 3);
  double tsum = 0.0;
  for (double w : tr.weights()) tsum += w;
  s.check(tr.size() == 512, "tensor size 8^3");
  s.close(1e-12, tsum, 1.0, "tensor weight sum");
}

void nystrom_suite(Suite& s) {
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  const auto t = nystrom::from_dense(a);
  const auto eig = nystrom::dominant_eigenvalue(t);
  s.close(1e-14, eig.lambda1, 3.0, "lambda1 of [[2,1],[1,2]]");
  s.check(std::abs(nystrom::fredholm_det(t, 1.0 / 3.0)) <= 1e-14, "det(I - T/3) == 0");
  for (int m : {5, 10, 20}) {
    const models::ModelSpec chain = models::ParticleChainParams{1.0, 0.2, 0.2, 1.0};
    const auto tm = models::assemble_model(chain, 5.0, m);
    const auto e = nystrom::dominant_eigenvalue(tm);
    s.check(e.vector.minCoeff() > 0.0, "Perron vector positive, m=" + std::to_string(m));
    s.check(std::abs(nystrom::fredholm_det(tm, 1.0 / e.lambda1)) <= 1e-12, "Fredholm root, m=" + std::to_string(m));
  }
}

void models_suite(Suite& s) {
  const models::ParticleChainParams p{1.0, 0.2, 0.2, 0.0};
  s.close(1e-12, models::particle_chain_free_energy(p, 5.0, 30), models::reference_particle_chain_gamma0(p, 5.0),
          "chain gamma=0 vs factorized reference");
  const models::CylinderParams c{1.0, 0.0, 0.2, 3};
  // the ring coupling stays in the kernel, so the tensor rule converges slowly
  s.close(5e-9, models::cylinder_free_energy(c, 5.0, 12), models::reference_cylinder_ax0(c, 5.0),
          "cylinder ax=0 vs ring determinant");
  const models::DnlsParams d{1.0, 1.0};
  s.close(1e-12, models::dnls_free_energy(d, 15.0, 16), models::dnls_free_energy(d, 15.0, 20),
          "dnls m=16 vs m=20 at beta=15");
  s.check(models::dnls_log_kernel(15.0, 2.0, 3.0) == models::dnls_log_kernel(15.0, 3.0, 2.0), "dnls kernel symmetric");
}

void thermo_suite(Suite& s) {
  s.close(1e-12, thermo::fd_derivative([](double x) { return x * x * x; }, 1.0, 0.1), 3.0, "stencil on x^3");
  // leading truncation term of the 7-point stencil is h^6 f'''''''(x) / 140
  const double h = 0.05;
  const double err = thermo::fd_derivative([](double x) { return std::exp(x); }, 0.0, h) - 1.0;
  s.close(1e-3, err, std::pow(h, 6) / 140.0, "stencil error on e^x");
  const auto obs = thermo::particle_chain_observables({1.0, 0.0, 0.0, 0.0}, 2.0, 4);
  s.close(1e-8, obs.energy, 0.5, "equipartition energy");
}

struct FaultGuard {
  explicit FaultGuard(bool on) : on_(on) {
    if (on_) specfun::detail::set_fault_injection(true);
  }
  ~FaultGuard() {
    if (on_) specfun::detail::set_fault_injection(false);
  }
  bool on_;
};

}  // namespace

bool Report::passed() const {
  for (const auto& suite : suites)
    if (!suite.passed) return false;
  return !suites.empty();
}

std::string Report::to_string() const {
  std::ostringstream out;
  for (const auto& suite : suites) {
    out << (suite.passed ? "PASS " : "FAIL ") << suite.name << " (" << suite.checks << " checks, "
        << std::fixed << std::setprecision(2) << suite.seconds * 1e3 << " ms)\n";
    for (const auto& f : suite.failures) out << "    " << f << '\n';
  }
  out << (passed() ? "selftest passed" : "selftest FAILED") << '\n';
  return out.str();
}

Report run(const Options& options) {
  FaultGuard guard(options.inject_specfun_fault);
  const std::pair<const char*, std::function<void(Suite&)>> suites[] = {
      {"specfun", specfun_suite}, {"quad", quad_suite},     {"operator", nystrom_suite},
      {"models", models_suite},   {"thermo", thermo_suite}};
  Report report;
  for (const auto& [name, body] : suites) {
    Suite suite(name);
    const auto start = std::chrono::steady_clock::now();
    try {
      body(suite);
    } catch (const std::exception& e) {
      suite.check(false, std::string("exception: ") + e.what());
    }
    suite.report().seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.suites.push_back(std::move(suite.report()));
  }
  return report;
}

}  // namespace ttm::selftest
