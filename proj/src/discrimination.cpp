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

#include "cqmeta/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cqmeta {

namespace {

Matrix raw_lambda(const MaryProblem& problem, const Povm& povm) {
  Matrix lambda = Matrix::Zero(problem.dim(), problem.dim());
  for (int i = 0; i < problem.size(); ++i) {
    lambda += problem.priors[static_cast<size_t>(i)] *
              (problem.states[static_cast<size_t>(i)].matrix() *
               povm.elements[static_cast<size_t>(i)].matrix());
  }
  return lambda;
}

void check_match(const MaryProblem& problem, const Povm& povm) {
  if (povm.size() != problem.size()) {
    throw std::invalid_argument("POVM element count does not match state count");
  }
  if (povm.elements.front().dim() != problem.dim()) {
    throw std::invalid_argument("POVM dimension does not match state dimension");
  }
}

}  // namespace

MaryProblem::MaryProblem(std::vector<DensityOperator> s, std::vector<double> p)
    : states(std::move(s)), priors(std::move(p)) {
  if (states.size() < 2) {
    throw std::invalid_argument("MaryProblem: need at least two alternatives");
  }
  if (states.size() != priors.size()) {
    throw std::invalid_argument("MaryProblem: states/priors length mismatch");
  }
  for (const auto& st : states) {
    if (st.dim() != states.front().dim()) {
      throw std::invalid_argument("MaryProblem: states have mixed dimensions");
    }
  }
  double sum = 0.0;
  for (double pr : priors) {
    if (pr < 0.0) throw std::invalid_argument("MaryProblem: negative prior");
    sum += pr;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("MaryProblem: priors sum to " + std::to_string(sum));
  }
}

Povm::Povm(std::vector<HermitianOperator> elems) : elements(std::move(elems)) {
  if (elements.empty()) {
    throw std::invalid_argument("Povm: empty element list");
  }
  const Eigen::Index n = elements.front().dim();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& e : elements) {
    if (e.dim() != n) throw std::invalid_argument("Povm: mixed dimensions");
    Eigen::SelfAdjointEigenSolver<Matrix> es(e.matrix(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd) {
      throw std::invalid_argument("Povm: element with eigenvalue " +
                                  std::to_string(es.eigenvalues().minCoeff()));
    }
    sum += e.matrix();
  }
  if ((sum - Matrix::Identity(n, n)).norm() > 1e-9) {
    throw std::invalid_argument("Povm: elements do not sum to identity");
  }
}

double error_probability(const MaryProblem& problem, const Povm& povm) {
  check_match(problem, povm);
  double success = 0.0;
  for (int i = 0; i < problem.size(); ++i) {
    success += problem.priors[static_cast<size_t>(i)] *
               trace_pair(problem.states[static_cast<size_t>(i)].base(),
                          povm.elements[static_cast<size_t>(i)]);
  }
  return 1.0 - success;
}

HermitianOperator lambda_operator(const MaryProblem& problem, const Povm& povm) {
  check_match(problem, povm);
  const Matrix lambda = raw_lambda(problem, povm);
  return HermitianOperator(0.5 * (lambda + lambda.adjoint()));
}

HyklReport hykl_verify(const MaryProblem& problem, const Povm& povm, double tolerance) {
  check_match(problem, povm);
  if (tolerance <= 0.0) {
    throw std::invalid_argument("hykl_verify: tolerance must be positive");
  }
  const Matrix lambda_raw = raw_lambda(problem, povm);
  HermitianOperator lambda(0.5 * (lambda_raw + lambda_raw.adjoint()));

  HyklReport report{lambda, (lambda_raw - lambda_raw.adjoint()).norm(), {}, {}, tolerance, false};
  bool ok = report.self_adjoint_residual <= tolerance;
  for (int m = 0; m < problem.size(); ++m) {
    const Matrix gap = lambda.matrix() - problem.priors[static_cast<size_t>(m)] *
                                             problem.states[static_cast<size_t>(m)].matrix();
    const double stat = (gap * povm.elements[static_cast<size_t>(m)].matrix()).norm();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gap, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    report.stationarity_residuals.push_back(stat);
    report.psd_residuals.push_back(min_eig);
    ok = ok && stat <= tolerance && min_eig >= -tolerance;
  }
  report.passed = ok;
  return report;
}

SolveResult solve_optimal_povm(const MaryProblem& problem, double tolerance, int max_iterations) {
  if (tolerance <= 0.0 || max_iterations < 1) {
    throw std::invalid_argument("solve_optimal_povm: invalid tolerance or iteration cap");
  }
  const Eigen::Index n = problem.dim();
  const int m_count = problem.size();
  const double inv_m = 1.0 / static_cast<double>(m_count);

  std::vector<Matrix> weighted;  // R_i = p_i tau_i
  weighted.reserve(static_cast<size_t>(m_count));
  for (int i = 0; i < m_count; ++i) {
    weighted.push_back(problem.priors[static_cast<size_t>(i)] *
                       problem.states[static_cast<size_t>(i)].matrix());
  }

  std::vector<Matrix> pis(static_cast<size_t>(m_count), inv_m * Matrix::Identity(n, n));

  auto make_povm = [&](const std::vector<Matrix>& mats) {
    std::vector<HermitianOperator> elems;
    elems.reserve(mats.size());
    for (const auto& mat : mats) elems.emplace_back(0.5 * (mat + mat.adjoint()));
    return Povm(std::move(elems));
  };

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    {
      Povm current = make_povm(pis);
      HyklReport report = hykl_verify(problem, current, tolerance);
      if (report.passed) {
        return SolveResult{std::move(current), std::move(report), iter};
      }
    }

    Matrix s = Matrix::Zero(n, n);
    for (int i = 0; i < m_count; ++i) {
      s += weighted[static_cast<size_t>(i)] * pis[static_cast<size_t>(i)] *
           weighted[static_cast<size_t>(i)];
    }
    s = 0.5 * (s + s.adjoint());

    // Pseudo inverse square root on supp(S).
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    const Eigen::VectorXd d = es.eigenvalues();
    const double cutoff = std::max(1e-14 * d.cwiseAbs().maxCoeff(), 1e-300);
    Matrix inv_sqrt = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (d[k] > cutoff) {
        inv_sqrt += (1.0 / std::sqrt(d[k])) * es.eigenvectors().col(k) *
                    es.eigenvectors().col(k).adjoint();
      }
    }

    for (int i = 0; i < m_count; ++i) {
      Matrix next = inv_sqrt * weighted[static_cast<size_t>(i)] * pis[static_cast<size_t>(i)] *
                    weighted[static_cast<size_t>(i)] * inv_sqrt;
      pis[static_cast<size_t>(i)] = 0.5 * (next + next.adjoint());
    }

    // Reassign the support-leakage deficit so the elements keep summing to I.
    Matrix deficit = Matrix::Identity(n, n);
    for (const auto& pi : pis) deficit -= pi;
    if (deficit.norm() > 1e-15) {
      int best = 0;
      double best_overlap = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_count; ++i) {
        const double overlap = (weighted[static_cast<size_t>(i)] * deficit).trace().real();
        if (overlap > best_overlap + 1e-15) {
          best_overlap = overlap;
          best = i;
        }
      }
      pis[static_cast<size_t>(best)] += deficit;
    }
  }

  Povm final_povm = make_povm(pis);
  HyklReport report = hykl_verify(problem, final_povm, tolerance);
  return SolveResult{std::move(final_povm), std::move(report), iter};
}

Mu0Result mu0_star(const MaryProblem& problem, const Povm& povm) {
  const HyklReport report = hykl_verify(problem, povm, 1e-6);
  if (!report.passed) {
    throw std::invalid_argument("mu0_star: measurement does not satisfy HYKL at 1e-6");
  }
  const double c0 = report.lambda.trace();
  if (c0 <= 0.0) {
    throw std::invalid_argument("mu0_star: tr(Lambda) <= 0");
  }
  return Mu0Result{DensityOperator(HermitianOperator(report.lambda.matrix() / c0)), c0};
}

DensityOperator block_state_operator(const MaryProblem& problem) {
  std::vector<HermitianOperator> blocks;
  blocks.reserve(static_cast<size_t>(problem.size()));
  for (int i = 0; i < problem.size(); ++i) {
    blocks.emplace_back(problem.priors[static_cast<size_t>(i)] *
                        problem.states[static_cast<size_t>(i)].matrix());
  }
  return DensityOperator(block_diag(blocks));
}

DensityOperator block_auxiliary_operator(const MaryProblem& problem, const DensityOperator& mu0) {
  if (mu0.dim() != problem.dim()) {
    throw std::invalid_argument("block_auxiliary_operator: mu0 dimension mismatch");
  }
  const double inv_m = 1.0 / static_cast<double>(problem.size());
  std::vector<HermitianOperator> blocks(static_cast<size_t>(problem.size()),
                                        HermitianOperator(inv_m * mu0.matrix()));
  return DensityOperator(block_diag(blocks));
}

double binary_test_bound(const MaryProblem& problem, const DensityOperator& mu0) {
  const DensityOperator t_op = block_state_operator(problem);
  const DensityOperator d_op = block_auxiliary_operator(problem, mu0);
  return alpha_beta(t_op, d_op, 1.0 / static_cast<double>(problem.size())).value;
}

double tight_spectrum_objective(const MaryProblem& problem, const DensityOperator& mu0, double t) {
  if (t < 0.0) {
    throw std::invalid_argument("tight_spectrum_objective: t must be nonnegative");
  }
  double sum = 0.0;
  for (int i = 0; i < problem.size(); ++i) {
    const double p = problem.priors[static_cast<size_t>(i)];
    const HermitianOperator pencil(p * problem.states[static_cast<size_t>(i)].matrix() -
                                   t * mu0.matrix());
    const Projector nonpos = eigenspace_projector(pencil, EigenspaceMode::nonpos);
    sum += p * trace_pair(problem.states[static_cast<size_t>(i)].base(), nonpos.base());
  }
  return sum - t;
}

double tight_spectrum_max(const MaryProblem& problem, const DensityOperator& mu0,
                          const std::vector<double>& t_grid) {
  std::vector<double> grid = t_grid;
  grid.push_back(0.0);
  for (int i = 0; i < problem.size(); ++i) {
    const Matrix scaled =
        problem.priors[static_cast<size_t>(i)] * problem.states[static_cast<size_t>(i)].matrix();
    for (double bp : pencil_breakpoints(scaled, mu0.matrix())) grid.push_back(bp);
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double t : grid) {
    if (t < 0.0) continue;
    best = std::max(best, tight_spectrum_objective(problem, mu0, t));
  }
  return best;
}

}  // namespace cqmeta
