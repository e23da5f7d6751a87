// Copyright 2026 The cqmeta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CQMETA_COMMANDS_HPP
#define CQMETA_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cqmeta::commands {

// Exit codes shared by the CLI: 0 success / certified, 1 certification
// negative, 2 input error, 3 numerical non-convergence.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;
inline constexpr int kNoConvergence = 3;

/// Example 1 of the four-state qubit testing problem: solves it, certifies
/// the measurement, and prints the exact and relaxed characterizations for
/// both the optimal and the average-state auxiliary choices.
int run_example1(std::ostream& out, double tolerance = 1e-10);

/// Threshold objective curves for the optimal and average-state auxiliary
/// operators on [0, 1.2] plus all breakpoints; format is "csv" or "json".
int run_figure1(int t_steps, std::ostream& out, const std::string& format = "csv");

/// Sweep over Bell codes: family in {ideal, depolarizing, erasure}.
int run_bell_sweep(const std::string& family, int n_qubits, const std::vector<int>& m_list,
                   const std::vector<double>& params, std::ostream& out,
                   const std::string& format = "csv");

int run_certify(const std::string& channel_json, const std::string& code_json,
                const std::string& mu_spec, std::ostream& out);

int run_solve(const std::string& problem_json, std::ostream& out, double tolerance = 1e-8);

}  // namespace cqmeta::commands

#endif
