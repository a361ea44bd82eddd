// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ttm::cli {

enum ExitCode { kSuccess = 0, kNumericFailure = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;  // free-energy | convergence | observables | selftest
  std::string model;    // chain | dnls | cylinder

  double beta_start = 0.0;
  double beta_stop = 0.0;
  int beta_count = 1;
  bool log_beta = false;

  int m = 20;
  int m0 = 8;
  int ly = 3;

  double eta = 1.0;
  double mu3 = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  double g = 1.0;
  double mu = 0.0;
  double ax = 0.0;
  double ay = 0.0;

  std::vector<int> m_list;        // convergence
  std::string reference = "auto"; // auto | analytic | largest
  int m_ref = 0;

  std::vector<std::string> observables;  // observables subcommand; empty: all the model defines
  double h_beta = 0.0;
  double h_param = 0.0;

  std::string out;  // empty: standard output
  int threads = 0;
  bool inject_fault = false;  // selftest fault injection

  /// Flat `key = value` text that parse_config_file reads back unchanged.
  std::string to_config_text() const;
};

/// Parses the command line (argv[0] is the program name). Options given on
/// the command line override those read from --config. Returns true
/// when a config was produced; otherwise exit_code holds the code for
/// `--help` (0) or a usage error (2) and messages went to out / err.
bool parse_command_line(int argc, const char* const* argv, RunConfig& config, int& exit_code, std::ostream& out,
                        std::ostream& err);

/// Checks cross-field constraints; returns an empty string when valid.
std::string validate(const RunConfig& config);

/// Executes a parsed configuration, returning the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ttm::cli
