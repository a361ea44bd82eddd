// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace ttm::selftest {

struct SuiteReport {
  std::string name;
  bool passed = true;
  double seconds = 0.0;
  int checks = 0;
  std::vector<std::string> failures;
};

struct Report {
  std::vector<SuiteReport> suites;
  bool passed() const;
  std::string to_string() const;
};

struct Options {
  // corrupt a special-function constant for the duration of the run
  bool inject_specfun_fault = false;
};

/// Runs the invariant suites of every module.
Report run(const Options& options = {});

}  // namespace ttm::selftest
