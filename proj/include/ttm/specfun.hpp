// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace ttm::specfun {

double erf(double x);
double erfc(double x);

// e^{-x} I_0(x) for x >= 0. Lies in (0, 1] and decays like 1/sqrt(2 pi x).
double i0_scaled(double x);

// log I_0(x), evaluated as x + log(e^{-x} I_0(x)) so it never overflows.
double log_i0(double x);

// Argument at which i0_scaled switches from the power series to the
// large-argument expansion.
inline constexpr double kI0SeriesLimit = 20.0;

namespace detail {
// Series branch and asymptotic branch exposed separately for continuity checks.
double i0_scaled_series(double x);
double i0_scaled_asymptotic(double x);

// Test hook: perturbs the asymptotic-branch prefactor so self-tests can prove
// they detect a corrupted constant. Not thread-safe with concurrent evaluation.
void set_fault_injection(bool enabled);
bool fault_injection_enabled();
}  // namespace detail

}  // namespace ttm::specfun
