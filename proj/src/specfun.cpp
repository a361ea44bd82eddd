// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ttm/specfun.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

#include "ttm/error.hpp"

namespace ttm::specfun {

namespace {
std::atomic<bool> g_fault{false};
}

double erf(double x) { return std::erf(x); }
double erfc(double x) { return std::erfc(x); }

namespace detail {

void set_fault_injection(bool enabled) { g_fault.store(enabled); }
bool fault_injection_enabled() { return g_fault.load(); }

// sum_k (x^2/4)^k / (k!)^2, all terms positive, scaled by e^{-x}.
double i0_scaled_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum * std::exp(-x);
}

// e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k)
double i0_scaled_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next >= term) break;  // past the smallest term of the divergent series
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  double prefactor = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
  if (g_fault.load(std::memory_order_relaxed)) prefactor *= 1.0 + 1e-6;
  return prefactor * sum;
}

}  // namespace detail

double i0_scaled(double x) {
  if (!(x >= 0.0)) throw DomainError("i0_scaled: argument must be non-negative, got " + std::to_string(x));
  if (std::isinf(x)) return 0.0;
  return x <= kI0SeriesLimit ? detail::i0_scaled_series(x) : detail::i0_scaled_asymptotic(x);
}

double log_i0(double x) {
  if (!(x >= 0.0)) throw DomainError("log_i0: argument must be non-negative, got " + std::to_string(x));
  if (std::isinf(x)) return x;
  return x + std::log(i0_scaled(x));
}

}  // namespace ttm::specfun
