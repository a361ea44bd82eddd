// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "ttm/error.hpp"
#include "ttm/quad.hpp"

using namespace ttm;
using quad::Support;

namespace {

// k-th moment of the normalized half-line weight by adaptive quadrature.
double half_line_moment(double a, double b, int k) {
  const auto w = quad::TruncatedGaussian::normalized(a, b);
  const double hi = std::max(b, 0.0) + (40.0 + 3.0 * std::sqrt(static_cast<double>(k))) / std::sqrt(a);
  return quad::integrate_adaptive([&](double z) { return std::pow(z, k) * w.density(z); }, 0.0, hi, 1e-15).value;
}

double rule_moment(const quad::QuadratureRule& r, int k) {
  return r.integrate([k](double z) { return std::pow(z, k); });
}

}  // namespace

TEST_CASE("gauss_hermite_rescaled small rules") {
  const auto r1 = quad::gauss_hermite_rescaled(1, 1.0);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(std::fabs(r1.weights[0] - 1.0) <= 1e-15);

  const auto r2 = quad::gauss_hermite_rescaled(2, 1.0);
  REQUIRE(r2.size() == 2);
  CHECK(std::fabs(r2.nodes[0] + 1.0) <= 1e-15);
  CHECK(std::fabs(r2.nodes[1] - 1.0) <= 1e-15);
  CHECK(std::fabs(r2.weights[0] - 0.5) <= 1e-15);
  CHECK(std::fabs(r2.weights[1] - 0.5) <= 1e-15);

  const auto r8 = quad::gauss_hermite_rescaled(8, 5.0);
  CHECK(std::fabs(rule_moment(r8, 2) - 0.2) <= 1e-14);
}

TEST_CASE("gauss_hermite_rescaled is exact through degree 2m-1") {
  for (double a : {0.3, 1.0, 5.0, 25.0}) {
    for (int m = 1; m <= 24; ++m) {
      const auto r = quad::gauss_hermite_rescaled(m, a);
      CHECK(std::fabs(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) - 1.0) <= 1e-13);
      for (int k = 0; k <= 2 * m - 1; ++k) {
        const double got = rule_moment(r, k);
        if (k % 2 == 1) {
          // symmetric rule: odd moments vanish up to roundoff on the scale of |z|^k
          CHECK(std::fabs(got) <= 1e-13 * std::sqrt(oracle::gaussian_moment(2 * k, a)));
        } else {
          CHECK(oracle::rel_diff(got, oracle::gaussian_moment(k, a)) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("gauss_hermite_rescaled nodes are symmetric and sorted") {
  const auto r = quad::gauss_hermite_rescaled(15, 2.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(r.nodes[i] == -r.nodes[r.size() - 1 - i]);
    CHECK(r.weights[i] == r.weights[r.size() - 1 - i]);
    CHECK(r.weights[i] > 0.0);
    if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
  }
}

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  const auto r = quad::gauss_legendre(6, -1.0, 2.0);
  for (int k = 0; k <= 11; ++k) {
    const double exact = (std::pow(2.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
    CHECK(std::fabs(rule_moment(r, k) - exact) <= 1e-13 * std::max(1.0, std::fabs(exact)));
  }
}

TEST_CASE("Stieltjes on the full-line Gaussian recovers the Hermite recurrence") {
  const quad::TruncatedGaussian w{1.0, 0.0, 1.0 / std::sqrt(2.0 * std::numbers::pi), Support::full_line};
  const auto rc = quad::stieltjes_recurrence(w, 20);
  REQUIRE(rc.size() == 20);
  CHECK(std::fabs(rc.beta[0] - 1.0) <= 1e-13);
  for (int k = 0; k < 20; ++k) {
    CHECK(std::fabs(rc.alpha[k]) <= 1e-12);
    if (k > 0) CHECK(oracle::rel_diff(rc.beta[k], k) <= 1e-12);
  }
}

TEST_CASE("Stieltjes on the half line") {
  const auto w = quad::TruncatedGaussian::normalized(1.0, 0.0);
  const auto rc = quad::stieltjes_recurrence(w, 6);
  const double alpha0 = std::sqrt(2.0 / std::numbers::pi);
  CHECK(std::fabs(rc.alpha[0] - alpha0) <= 1e-14);
  CHECK(std::fabs(rc.alpha[0] - half_line_moment(1.0, 0.0, 1)) <= 1e-14);
  CHECK(std::fabs(rc.beta[0] - 1.0) <= 1e-13);
  // beta_1 is the variance of the weight
  CHECK(oracle::rel_diff(rc.beta[1], 1.0 - alpha0 * alpha0) <= 1e-13);

  for (auto [a, b] : {std::pair{1.0, 0.0}, {15.0, 1.0}, {0.5, -2.0}, {3.0, 4.0}}) {
    const auto one = quad::stieltjes_recurrence(quad::TruncatedGaussian::normalized(a, b), 1);
    REQUIRE(one.size() == 1);
    CHECK(std::fabs(one.beta[0] - 1.0) <= 1e-13);
  }
}

TEST_CASE("Stieltjes reports non-convergence with its residual") {
  const auto w = quad::TruncatedGaussian::normalized(1.0, 0.0);
  quad::StieltjesOptions opts;
  opts.max_panels = 8;
  try {
    quad::stieltjes_recurrence(w, 30, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > opts.tol);
  }
  CHECK_THROWS_AS(quad::stieltjes_recurrence(w, 0), DomainError);
}

TEST_CASE("golub_welsch small Jacobi matrices") {
  const auto r1 = quad::golub_welsch({{0.0}, {1.0}});
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  const auto r2 = quad::golub_welsch({{0.0, 0.0}, {1.0, 1.0}});
  REQUIRE(r2.size() == 2);
  CHECK(std::fabs(r2.nodes[0] + 1.0) <= 1e-15);
  CHECK(std::fabs(r2.nodes[1] - 1.0) <= 1e-15);
  CHECK(std::fabs(r2.weights[0] - 0.5) <= 1e-15);
  CHECK(std::fabs(r2.weights[1] - 0.5) <= 1e-15);

  CHECK_THROWS_AS(quad::golub_welsch({{0.0, 0.0}, {1.0}}), DomainError);
  CHECK_THROWS_AS(quad::golub_welsch({{0.0, 0.0}, {1.0, -1.0}}), DomainError);
  CHECK_THROWS_AS(quad::golub_welsch({{}, {}}), DomainError);
}

TEST_CASE("Stieltjes then Golub-Welsch reproduces Gauss-Hermite") {
  const quad::TruncatedGaussian w{1.0, 0.0, 1.0 / std::sqrt(2.0 * std::numbers::pi), Support::full_line};
  for (int m = 1; m <= 20; ++m) {
    const auto r = quad::golub_welsch(quad::stieltjes_recurrence(w, m));
    const auto gh = quad::gauss_hermite_rescaled(m, 1.0);
    REQUIRE(r.size() == gh.size());
    for (int i = 0; i < m; ++i) {
      CHECK(std::fabs(r.nodes[i] - gh.nodes[i]) <= 1e-12 * std::max(1.0, std::fabs(gh.nodes[i])));
      CHECK(oracle::rel_diff(r.weights[i], gh.weights[i]) <= 1e-12);
    }
  }
}

TEST_CASE("half-line rule low moments") {
  const auto r = quad::half_line_gaussian_rule(1.0, 0.0, 12);
  CHECK(oracle::rel_diff(rule_moment(r, 1), half_line_moment(1.0, 0.0, 1)) <= 1e-12);
  CHECK(oracle::rel_diff(rule_moment(r, 2), half_line_moment(1.0, 0.0, 2)) <= 1e-12);
  CHECK(std::fabs(rule_moment(r, 2) - 1.0) <= 1e-12);
}

TEST_CASE("half-line rule is exact through degree 2m-1") {
  for (auto [a, b] : {std::pair{1.0, 0.0}, {15.0, 1.0}, {5.0, -0.5}, {1.0, 2.0}, {0.2, 3.0}}) {
    for (int m : {1, 4, 9, 16, 20}) {
      const auto r = quad::half_line_gaussian_rule(a, b, m);
      REQUIRE(r.size() == static_cast<std::size_t>(m));
      for (int k = 0; k <= 2 * m - 1; ++k) {
        INFO("a=" << a << " b=" << b << " m=" << m << " k=" << k);
        CHECK(oracle::rel_diff(rule_moment(r, k), half_line_moment(a, b, k)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("half-line nodes lie inside the support") {
  for (auto [a, b] : {std::pair{1.0, 0.0}, {15.0, 1.0}, {2.0, -3.0}}) {
    const auto r = quad::half_line_gaussian_rule(a, b, 20);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(r.nodes[i] > 0.0);
      CHECK(r.weights[i] > 0.0);
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
      sum += r.weights[i];
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-13);
  }
}

TEST_CASE("quadrature argument validation") {
  CHECK_THROWS_AS(quad::gauss_hermite_rescaled(0, 1.0), DomainError);
  CHECK_THROWS_AS(quad::gauss_hermite_rescaled(4, 0.0), DomainError);
  CHECK_THROWS_AS(quad::gauss_hermite_rescaled(4, -1.0), DomainError);
  CHECK_THROWS_AS(quad::half_line_gaussian_rule(-1.0, 0.0, 4), DomainError);
  CHECK_THROWS_AS(quad::half_line_gaussian_rule(1.0, 0.0, 0), DomainError);
  CHECK_THROWS_AS(quad::gauss_legendre(3, 1.0, 1.0), DomainError);
}

TEST_CASE("tensor_product small cases") {
  const quad::QuadratureRule one{{0.0}, {1.0}, 1.0};
  const auto t1 = quad::tensor_product(one, 3);
  REQUIRE(t1.size() == 1);
  CHECK(t1.node(0)[0] == 0.0);
  CHECK(t1.node(0)[2] == 0.0);
  CHECK(t1.weight(0) == 1.0);

  const quad::QuadratureRule pm{{-1.0, 1.0}, {0.5, 0.5}, 1.0};
  const auto t2 = quad::tensor_product(pm, 2);
  REQUIRE(t2.size() == 4);
  const double expect[4][2] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  for (std::size_t f = 0; f < 4; ++f) {
    CHECK(t2.node(f)[0] == expect[f][0]);
    CHECK(t2.node(f)[1] == expect[f][1]);
    CHECK(t2.weight(f) == 0.25);
  }
}

TEST_CASE("tensor_product ordering and mass") {
  const auto base = quad::gauss_hermite_rescaled(8, 1.0);
  const auto t = quad::tensor_product(base, 3);
  REQUIRE(t.size() == 512);
  const double sum = std::accumulate(t.weights().begin(), t.weights().end(), 0.0);
  CHECK(std::fabs(sum - 1.0) <= 1e-12);
  CHECK(std::fabs(t.total_mass() - 1.0) <= 1e-12);
  for (std::size_t f = 0; f < t.size(); ++f) {
    const auto idx = t.multi_index(f);
    REQUIRE(idx.size() == 3);
    CHECK(idx[0] * 64 + idx[1] * 8 + idx[2] == f);
    for (int d = 0; d < 3; ++d) CHECK(t.node(f)[d] == base.nodes[idx[d]]);
    CHECK(t.weight(f) == doctest::Approx(base.weights[idx[0]] * base.weights[idx[1]] * base.weights[idx[2]])
                             .epsilon(1e-15));
  }
  // product of exact 1D rules integrates separable polynomials exactly
  double moment = 0.0;
  for (std::size_t f = 0; f < t.size(); ++f) {
    const auto q = t.node(f);
    moment += t.weight(f) * q[0] * q[0] * std::pow(q[1], 4) * std::pow(q[2], 6);
  }
  CHECK(oracle::rel_diff(moment, 1.0 * 3.0 * 15.0) <= 1e-12);
}

TEST_CASE("tensor_product enforces its budget") {
  const auto base = quad::gauss_hermite_rescaled(8, 1.0);
  try {
    quad::tensor_product(base, 5);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("8^5") != std::string::npos);
  }
  CHECK_NOTHROW(quad::tensor_product(base, 5, 1u << 15));
  CHECK_THROWS_AS(quad::tensor_product(base, 0), DomainError);
}

TEST_CASE("integrate_adaptive on closed forms") {
  const auto r = quad::integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(std::fabs(r.value - (std::exp(1.0) - 1.0)) <= 1e-15);
  const auto g = quad::integrate_adaptive([](double x) { return std::exp(-x * x); }, -3.0, 2.0, 1e-14);
  CHECK(oracle::rel_diff(g.value, std::sqrt(std::numbers::pi) / 2.0 * (std::erf(2.0) + std::erf(3.0))) <= 1e-14);
  const auto s = quad::integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
  CHECK(std::fabs(s.value - 2.0 / 3.0) <= 1e-12);
  CHECK(s.intervals > 1);
  const auto simpson = oracle::simpson([](double x) { return std::cos(x) * std::cos(x); }, 0.0, 2.0, 2000);
  const auto c = quad::integrate_adaptive([](double x) { return std::cos(x) * std::cos(x); }, 0.0, 2.0);
  CHECK(std::fabs(c.value - simpson) <= 1e-11);
  CHECK_THROWS_AS(quad::integrate_adaptive([](double x) { return 1.0 / std::sqrt(std::fabs(x - 0.3)); }, 0.0, 1.0,
                                           1e-15, 0.0, 20),
                  ConvergenceError);
}
