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

#ifndef CQMETA_NEYMAN_PEARSON_HPP
#define CQMETA_NEYMAN_PEARSON_HPP

#include <vector>

#include "cqmeta/hermitian.hpp"

namespace cqmeta {

/// Optimal binary test at threshold t: the strict positive-part projector of
/// rho0 - t*rho1 plus a scalar randomization weight on its null space.
struct NpTest {
  double threshold = 0.0;
  Projector strict_projector;
  Projector null_projector;
  double theta_weight = 0.0;

  Matrix operator_matrix() const {
    return strict_projector.matrix() + theta_weight * null_projector.matrix();
  }
};

struct TradeoffPoint {
  double alpha = 0.0;  // type-I error, 1 - tr(rho0 T)
  double beta = 0.0;   // type-II error, tr(rho1 T)
};

struct NpTestAtResult {
  NpTest test;  // theta_weight = 0
  TradeoffPoint at_theta0;
  TradeoffPoint at_theta1;
};

struct BetaPair {
  double beta_strict = 0.0;  // tr(rho1 {rho0 - t rho1 > 0})
  double beta_closed = 0.0;  // tr(rho1 {rho0 - t rho1 >= 0})
};

struct AlphaBetaResult {
  double value = 0.0;
  NpTest test;
};

/// Strict and null eigenspace projectors of rho0 - t*rho1.
struct PencilProjectors {
  Projector strict;
  Projector null;
};
PencilProjectors pencil_projectors(const DensityOperator& rho0, const DensityOperator& rho1,
                                   double t);

NpTestAtResult np_test_at(const DensityOperator& rho0, const DensityOperator& rho1, double t);

BetaPair beta_of_t(const DensityOperator& rho0, const DensityOperator& rho1, double t);

/// Minimum type-I error over tests with type-II error at most beta_target,
/// together with an achieving test (tr(rho1 T) = beta_target exactly).
/// The answer is cross-checked against the sup characterization; a
/// discrepancy beyond 1e-8 throws instead of returning silently.
AlphaBetaResult alpha_beta(const DensityOperator& rho0, const DensityOperator& rho1,
                           double beta_target);

/// sup over the grid (augmented with all pencil breakpoints) of
///   tr(rho0 {rho0 - t rho1 <= 0}) + t (tr(rho1 {rho0 - t rho1 > 0}) - beta).
double alpha_sup_form(const DensityOperator& rho0, const DensityOperator& rho1, double beta_target,
                      const std::vector<double>& t_grid);

/// Single-threshold relaxation tr(rho0 {rho0 - t rho1 <= 0}) - t*beta.
double alpha_lower_bound(const DensityOperator& rho0, const DensityOperator& rho1,
                         double beta_target, double t);

/// Strictly positive generalized eigenvalues of the pencil (rho0, rho1),
/// computed on the support of rho1 as the spectrum of
/// rho1^{-1/2} rho0 rho1^{-1/2}. Zero eigenvalues (null directions) and
/// directions outside supp(rho1) contribute no finite breakpoint.
/// Sorted ascending, deduplicated.
std::vector<double> pencil_breakpoints(const DensityOperator& rho0, const DensityOperator& rho1);
std::vector<double> pencil_breakpoints(const Matrix& rho0, const Matrix& rho1);

}  // namespace cqmeta

#endif
