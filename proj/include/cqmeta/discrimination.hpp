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

#ifndef CQMETA_DISCRIMINATION_HPP
#define CQMETA_DISCRIMINATION_HPP

#include <vector>

#include "cqmeta/hermitian.hpp"
#include "cqmeta/neyman_pearson.hpp"

namespace cqmeta {

/// Bayesian M-ary discrimination instance: states tau_1..tau_M with prior
/// probabilities summing to one.
struct MaryProblem {
  std::vector<DensityOperator> states;
  std::vector<double> priors;

  MaryProblem(std::vector<DensityOperator> s, std::vector<double> p);
  int size() const { return static_cast<int>(states.size()); }
  Eigen::Index dim() const { return states.front().dim(); }
};

/// Measurement: PSD elements summing to the identity.
struct Povm {
  std::vector<HermitianOperator> elements;

  explicit Povm(std::vector<HermitianOperator> elems);
  int size() const { return static_cast<int>(elements.size()); }
};

/// Holevo-Yuen-Kennedy-Lax optimality certificate. `passed` certifies global
/// optimality of the measurement (the conditions are necessary and
/// sufficient).
struct HyklReport {
  HermitianOperator lambda;
  double self_adjoint_residual = 0.0;
  std::vector<double> stationarity_residuals;  // ||(Lambda - p_m tau_m) Pi_m||_F
  std::vector<double> psd_residuals;           // min eigenvalue of Lambda - p_m tau_m
  double tolerance = 0.0;
  bool passed = false;
};

struct SolveResult {
  Povm povm;
  HyklReport report;
  int iterations = 0;
};

struct Mu0Result {
  DensityOperator mu0;
  double c0 = 0.0;
};

double error_probability(const MaryProblem& problem, const Povm& povm);

/// Lambda = sum_i p_i tau_i Pi_i, symmetrized; the Hermiticity residual of
/// the raw product is reported through hykl_verify.
HermitianOperator lambda_operator(const MaryProblem& problem, const Povm& povm);

HyklReport hykl_verify(const MaryProblem& problem, const Povm& povm, double tolerance = 1e-8);

/// Fixed-point iteration from Pi_i = I/M, certified through hykl_verify.
/// Non-convergence returns the best iterate with passed = false.
SolveResult solve_optimal_povm(const MaryProblem& problem, double tolerance = 1e-8,
                               int max_iterations = 20000);

/// mu0* = Lambda / c0 with c0 = tr(Lambda) = 1 - error probability.
/// Requires the measurement to pass HYKL at 1e-6.
Mu0Result mu0_star(const MaryProblem& problem, const Povm& povm);

/// alpha_{1/M}(T || D(mu0)) on the block-diagonal operators
/// T = diag(p_i tau_i) and D(mu0) = diag(mu0/M, ..., mu0/M).
double binary_test_bound(const MaryProblem& problem, const DensityOperator& mu0);

DensityOperator block_state_operator(const MaryProblem& problem);
DensityOperator block_auxiliary_operator(const MaryProblem& problem, const DensityOperator& mu0);

/// sum_i p_i tr(tau_i {p_i tau_i - t mu0 <= 0}) - t
double tight_spectrum_objective(const MaryProblem& problem, const DensityOperator& mu0, double t);

/// Maximum of the objective over the grid augmented with the per-state
/// pencil breakpoints of (p_i tau_i, mu0) and t = 0.
double tight_spectrum_max(const MaryProblem& problem, const DensityOperator& mu0,
                          const std::vector<double>& t_grid = {});

}  // namespace cqmeta

#endif
