// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "ttm/ttm.h"

namespace {

std::string sweep_text(ttm_sweep s) {
  size_t needed = 0;
  REQUIRE(ttm_sweep_csv(s, nullptr, 0, &needed) == TTM_OK);
  std::string buf(needed + 1, '\0');
  REQUIRE(ttm_sweep_csv(s, buf.data(), buf.size(), &needed) == TTM_OK);
  buf.resize(needed);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(ttm_version()) == "0.1.0");
  CHECK(std::string(ttm_status_string(TTM_OK)).size() > 0);
  CHECK(std::string(ttm_status_string(TTM_ERR_RESOURCE)).size() > 0);
}

TEST_CASE("model handles and free energies") {
  ttm_model chain = nullptr;
  REQUIRE(ttm_model_create_chain(1.0, 0.2, 0.2, 0.0, &chain) == TTM_OK);
  double f = 0.0, l1 = 0.0, ref = 0.0;
  int available = 0;
  REQUIRE(ttm_free_energy(chain, 5.0, 30, &f, &l1) == TTM_OK);
  REQUIRE(ttm_reference_free_energy(chain, 5.0, &ref, &available) == TTM_OK);
  CHECK(available == 1);
  CHECK(std::fabs(f / ref - 1.0) <= 1e-12);
  CHECK(l1 > 0.0);
  REQUIRE(ttm_free_energy(chain, 5.0, 30, &f, nullptr) == TTM_OK);
  ttm_model_destroy(chain);
  ttm_model_destroy(nullptr);

  ttm_model dnls = nullptr;
  REQUIRE(ttm_model_create_dnls(1.0, 1.0, &dnls) == TTM_OK);
  REQUIRE(ttm_reference_free_energy(dnls, 5.0, &ref, &available) == TTM_OK);
  CHECK(available == 0);
  double s = 0.0, e = 0.0, d = 0.0;
  REQUIRE(ttm_observables(dnls, 2.0, 16, TTM_OBS_DENSITY | TTM_OBS_ENERGY, 0.0, 0.0, &s, &e, &d) == TTM_OK);
  CHECK(std::isnan(s));
  CHECK(d > 0.0);
  CHECK(std::isfinite(e));
  CHECK(ttm_observables(dnls, 2.0, 16, TTM_OBS_STRETCH_SQ, 0.0, 0.0, &s, &e, &d) == TTM_ERR_DOMAIN);
  ttm_model_destroy(dnls);
}

TEST_CASE("errors map to status codes with a message") {
  ttm_model m = nullptr;
  CHECK(ttm_model_create_chain(1.0, 0.5, 0.2, 0.0, &m) == TTM_ERR_DOMAIN);
  CHECK(m == nullptr);
  CHECK(std::string(ttm_last_error()).find("lambda") != std::string::npos);
  CHECK(ttm_model_create_dnls(1.0, 0.0, nullptr) == TTM_ERR_INVALID_ARGUMENT);
  double f = 0.0;
  CHECK(ttm_free_energy(nullptr, 1.0, 4, &f, nullptr) == TTM_ERR_INVALID_ARGUMENT);

  ttm_model cyl = nullptr;
  REQUIRE(ttm_model_create_cylinder(1.0, 0.1, 0.1, 3, &cyl) == TTM_OK);
  CHECK(ttm_free_energy(cyl, 1.0, 20, &f, nullptr) == TTM_ERR_RESOURCE);
  CHECK(std::string(ttm_last_error()).find("budget") != std::string::npos);
  CHECK(ttm_free_energy(cyl, -1.0, 4, &f, nullptr) == TTM_ERR_DOMAIN);
  ttm_model_destroy(cyl);
}

TEST_CASE("last error is per thread") {
  ttm_model m = nullptr;
  CHECK(ttm_model_create_dnls(-1.0, 0.0, &m) == TTM_ERR_DOMAIN);
  const std::string mine = ttm_last_error();
  std::string other;
  std::thread([&] {
    ttm_model x = nullptr;
    ttm_model_create_chain(0.0, 0.0, 0.0, 0.0, &x);
    other = ttm_last_error();
  }).join();
  CHECK(other != mine);
  CHECK(std::string(ttm_last_error()) == mine);
}

TEST_CASE("quadrature rules") {
  ttm_rule r = nullptr;
  REQUIRE(ttm_rule_gauss_hermite(8, 5.0, &r) == TTM_OK);
  REQUIRE(ttm_rule_size(r) == 8);
  std::vector<double> z(8), w(8);
  REQUIRE(ttm_rule_copy(r, z.data(), w.data()) == TTM_OK);
  double m2 = 0.0;
  for (int i = 0; i < 8; ++i) m2 += w[i] * z[i] * z[i];
  CHECK(std::fabs(m2 - 0.2) <= 1e-14);
  CHECK(ttm_rule_copy(r, nullptr, w.data()) == TTM_OK);
  ttm_rule_destroy(r);

  REQUIRE(ttm_rule_half_gaussian(1.0, 0.0, 12, &r) == TTM_OK);
  REQUIRE(ttm_rule_size(r) == 12);
  z.resize(12);
  CHECK(ttm_rule_copy(r, z.data(), nullptr) == TTM_OK);
  CHECK(z[0] > 0.0);
  CHECK(ttm_rule_copy(nullptr, z.data(), nullptr) == TTM_ERR_INVALID_ARGUMENT);
  ttm_rule_destroy(r);
  CHECK(ttm_rule_gauss_hermite(0, 1.0, &r) == TTM_ERR_DOMAIN);
  CHECK(ttm_rule_size(nullptr) == 0);
}

TEST_CASE("sweeps through the C interface") {
  ttm_model m = nullptr;
  REQUIRE(ttm_model_create_chain(1.0, 0.0, 0.0, 1.0, &m) == TTM_OK);
  double betas[4];
  REQUIRE(ttm_beta_grid(1.0, 4.0, 4, 0, betas) == TTM_OK);
  CHECK(betas[3] == 4.0);
  ttm_sweep s1 = nullptr, s2 = nullptr;
  REQUIRE(ttm_sweep_run(m, betas, 4, 16, TTM_OBS_ENERGY, 0.0, 0.0, 1, &s1) == TTM_OK);
  REQUIRE(ttm_sweep_run(m, betas, 4, 16, TTM_OBS_ENERGY, 0.0, 0.0, 3, &s2) == TTM_OK);
  REQUIRE(ttm_sweep_rows(s1) == 4);
  double beta = 0, f = 0, st = 0, e = 0, d = 0;
  REQUIRE(ttm_sweep_row(s1, 2, &beta, &f, &st, &e, &d) == TTM_OK);
  CHECK(beta == 3.0);
  CHECK(std::fabs(e - 1.0 / 3.0) <= 1e-8);
  CHECK(std::isnan(st));
  CHECK(ttm_sweep_row(s1, 4, &beta, &f, &st, &e, &d) == TTM_ERR_INVALID_ARGUMENT);

  const std::string text = sweep_text(s1);
  CHECK(text == sweep_text(s2));
  CHECK(text.rfind("beta,free_energy,energy\n", 0) == 0);

  char small[8];
  size_t needed = 0;
  REQUIRE(ttm_sweep_csv(s1, small, sizeof small, &needed) == TTM_OK);
  CHECK(needed == text.size());
  CHECK(std::string(small) == text.substr(0, 7));

  const auto path = std::filesystem::temp_directory_path() / "ttm_c_api_sweep.csv";
  REQUIRE(ttm_sweep_write_csv(s1, path.c_str()) == TTM_OK);
  CHECK(slurp(path) == text);
  std::filesystem::remove(path);
  CHECK(ttm_sweep_write_csv(s1, "/nonexistent-dir/x.csv") == TTM_ERR_IO);

  ttm_sweep_destroy(s1);
  ttm_sweep_destroy(s2);
  CHECK(ttm_sweep_run(m, betas, 0, 16, 0, 0.0, 0.0, 1, &s1) == TTM_ERR_DOMAIN);
  ttm_model_destroy(m);
}

TEST_CASE("convergence studies through the C interface") {
  ttm_model m = nullptr;
  REQUIRE(ttm_model_create_cylinder(1.0, 0.0, 0.2, 3, &m) == TTM_OK);
  const int ms[] = {2, 4, 6};
  ttm_convergence c = nullptr;
  REQUIRE(ttm_convergence_run(m, 5.0, ms, 3, TTM_REF_AUTO, 0, 1, &c) == TTM_OK);
  REQUIRE(ttm_convergence_rows(c) == 3);
  double value = 0.0;
  int analytic = 0, m_ref = -1;
  REQUIRE(ttm_convergence_reference(c, &value, &analytic, &m_ref) == TTM_OK);
  CHECK(analytic == 1);
  int mm = 0;
  double f = 0.0, e0 = 0.0, e2 = 0.0;
  REQUIRE(ttm_convergence_row(c, 0, &mm, &f, &e0) == TTM_OK);
  CHECK(mm == 2);
  REQUIRE(ttm_convergence_row(c, 2, &mm, &f, &e2) == TTM_OK);
  CHECK(e2 < e0);
  const auto path = std::filesystem::temp_directory_path() / "ttm_c_api_conv.csv";
  REQUIRE(ttm_convergence_write_csv(c, path.c_str()) == TTM_OK);
  CHECK(slurp(path).rfind("m,rel_error\n2,", 0) == 0);
  std::filesystem::remove(path);
  ttm_convergence_destroy(c);
  ttm_model_destroy(m);

  REQUIRE(ttm_model_create_dnls(1.0, 1.0, &m) == TTM_OK);
  CHECK(ttm_convergence_run(m, 5.0, ms, 3, TTM_REF_ANALYTIC, 0, 1, &c) == TTM_ERR_DOMAIN);
  ttm_model_destroy(m);
}

TEST_CASE("self test detects an injected fault") {
  int passed = 0;
  size_t needed = 0;
  REQUIRE(ttm_selftest(0, &passed, nullptr, 0, &needed) == TTM_OK);
  CHECK(passed == 1);
  CHECK(needed > 0);
  std::string report(needed + 1, '\0');
  REQUIRE(ttm_selftest(0, &passed, report.data(), report.size(), &needed) == TTM_OK);
  CHECK(report.find("PASS specfun") != std::string::npos);

  REQUIRE(ttm_selftest(TTM_SELFTEST_INJECT_SPECFUN_FAULT, &passed, nullptr, 0, &needed) == TTM_OK);
  CHECK(passed == 0);
  // the fault is switched off again afterwards
  REQUIRE(ttm_selftest(0, &passed, nullptr, 0, &needed) == TTM_OK);
  CHECK(passed == 1);
}
