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

#include "cqmeta/neyman_pearson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cqmeta {

namespace {

constexpr int kMaxBisectionIters = 200;
constexpr double kBracketTol = 1e-13;
constexpr double kBetaSlack = 1e-12;

void check_dims(const DensityOperator& rho0, const DensityOperator& rho1) {
  if (rho0.dim() != rho1.dim()) {
    throw std::invalid_argument("binary test: dimension mismatch");
  }
}

// Traces of rho0/rho1 against the strict and null eigenspaces of
// rho0 - t rho1, from a single eigendecomposition.
struct PencilTraces {
  double a_strict = 0.0;  // tr(rho0 {pencil > 0})
  double a_null = 0.0;    // tr(rho0 {pencil = 0})
  double b_strict = 0.0;  // tr(rho1 {pencil > 0})
  double b_null = 0.0;    // tr(rho1 {pencil = 0})
};

PencilTraces eval_pencil(const DensityOperator& rho0, const DensityOperator& rho1, double t) {
  const Matrix delta = rho0.matrix() - t * rho1.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(delta);
  const Eigen::VectorXd evals = es.eigenvalues();
  const double ztol =
      std::max(tol::zero_eig_rel * evals.cwiseAbs().maxCoeff(), tol::zero_eig_floor);

  PencilTraces out;
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    if (evals[k] <= -ztol) continue;
    const Vector v = es.eigenvectors().col(k);
    const double w0 = (v.adjoint() * rho0.matrix() * v)(0, 0).real();
    const double w1 = (v.adjoint() * rho1.matrix() * v)(0, 0).real();
    if (evals[k] > ztol) {
      out.a_strict += w0;
      out.b_strict += w1;
    } else {
      out.a_null += w0;
      out.b_null += w1;
    }
  }
  return out;
}

double sup_objective_at(const DensityOperator& rho0, const DensityOperator& rho1,
                        double beta_target, double t) {
  const PencilTraces tr = eval_pencil(rho0, rho1, t);
  return (1.0 - tr.a_strict) + t * (tr.b_strict - beta_target);
}

}  // namespace

PencilProjectors pencil_projectors(const DensityOperator& rho0, const DensityOperator& rho1,
                                   double t) {
  check_dims(rho0, rho1);
  const HermitianOperator pencil(rho0.matrix() - t * rho1.matrix());
  Projector strict = eigenspace_projector(pencil, EigenspaceMode::strict_pos);
  Projector closed = eigenspace_projector(pencil, EigenspaceMode::nonneg);
  Projector null(HermitianOperator(closed.matrix() - strict.matrix()));
  return PencilProjectors{std::move(strict), std::move(null)};
}

NpTestAtResult np_test_at(const DensityOperator& rho0, const DensityOperator& rho1, double t) {
  if (t < 0.0) {
    throw std::invalid_argument("np_test_at: threshold must be nonnegative");
  }
  auto proj = pencil_projectors(rho0, rho1, t);

  const double a_strict = trace_pair(rho0.base(), proj.strict.base());
  const double a_null = trace_pair(rho0.base(), proj.null.base());
  const double b_strict = trace_pair(rho1.base(), proj.strict.base());
  const double b_null = trace_pair(rho1.base(), proj.null.base());

  return NpTestAtResult{NpTest{t, proj.strict, proj.null, 0.0},
                        TradeoffPoint{1.0 - a_strict, b_strict},
                        TradeoffPoint{1.0 - a_strict - a_null, b_strict + b_null}};
}

BetaPair beta_of_t(const DensityOperator& rho0, const DensityOperator& rho1, double t) {
  check_dims(rho0, rho1);
  const PencilTraces tr = eval_pencil(rho0, rho1, t);
  return BetaPair{tr.b_strict, tr.b_strict + tr.b_null};
}

std::vector<double> pencil_breakpoints(const DensityOperator& rho0, const DensityOperator& rho1) {
  return pencil_breakpoints(rho0.matrix(), rho1.matrix());
}

std::vector<double> pencil_breakpoints(const Matrix& rho0, const Matrix& rho1) {
  if (rho0.rows() != rho1.rows()) {
    throw std::invalid_argument("pencil_breakpoints: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho1);
  const Eigen::VectorXd d = es.eigenvalues();
  const double dmax = d.cwiseAbs().maxCoeff();
  const double support_tol = std::max(1e-12 * dmax, 1e-300);

  std::vector<Eigen::Index> supp;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d[i] > support_tol) supp.push_back(i);
  }
  if (supp.empty()) return {};

  Matrix v(rho1.rows(), static_cast<Eigen::Index>(supp.size()));
  for (size_t k = 0; k < supp.size(); ++k) {
    v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(supp[k]) / std::sqrt(d[supp[k]]);
  }
  const Matrix compressed = v.adjoint() * rho0 * v;  // rho1^{-1/2} rho0 rho1^{-1/2} on supp
  Eigen::SelfAdjointEigenSolver<Matrix> es2(0.5 * (compressed + compressed.adjoint()),
                                            Eigen::EigenvaluesOnly);
  const Eigen::VectorXd gev = es2.eigenvalues();

  const double scale = std::max(gev.cwiseAbs().maxCoeff(), 1.0);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < gev.size(); ++i) {
    if (gev[i] > 1e-12 * scale) out.push_back(gev[i]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [scale](double a, double b) { return std::abs(a - b) <= 1e-10 * scale; }),
            out.end());
  return out;
}

double alpha_lower_bound(const DensityOperator& rho0, const DensityOperator& rho1,
                         double beta_target, double t) {
  const HermitianOperator pencil(rho0.matrix() - t * rho1.matrix());
  const Projector nonpos = eigenspace_projector(pencil, EigenspaceMode::nonpos);
  return trace_pair(rho0.base(), nonpos.base()) - t * beta_target;
}

double alpha_sup_form(const DensityOperator& rho0, const DensityOperator& rho1, double beta_target,
                      const std::vector<double>& t_grid) {
  if (t_grid.empty()) {
    throw std::invalid_argument("alpha_sup_form: empty t grid");
  }
  std::vector<double> grid = t_grid;
  for (double bp : pencil_breakpoints(rho0, rho1)) grid.push_back(bp);

  double best = -std::numeric_limits<double>::infinity();
  for (double t : grid) {
    if (t < 0.0) {
      throw std::invalid_argument("alpha_sup_form: negative threshold in grid");
    }
    best = std::max(best, sup_objective_at(rho0, rho1, beta_target, t));
  }
  return best;
}

AlphaBetaResult alpha_beta(const DensityOperator& rho0, const DensityOperator& rho1,
                           double beta_target) {
  check_dims(rho0, rho1);
  if (beta_target < 0.0 || beta_target > 1.0) {
    throw std::invalid_argument("alpha_beta: beta_target outside [0, 1]");
  }

  const std::vector<double> bps = pencil_breakpoints(rho0, rho1);
  auto beta_at = [&](double t) { return eval_pencil(rho0, rho1, t).b_strict; };
  auto bisect = [&](double lo, double hi) {
    for (int it = 0; it < kMaxBisectionIters && hi - lo > kBracketTol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (beta_at(mid) <= beta_target + kBetaSlack) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };

  // beta(t) of the strict projector is nonincreasing, drops discontinuously
  // at the pencil breakpoints (where the randomized family bridges the jump)
  // and varies continuously in between. Locate the first breakpoint whose
  // randomized family reaches beta_target; when the crossing happens inside
  // an interval instead, fall back to plain bisection there.
  double t_star;
  if (beta_at(0.0) <= beta_target + kBetaSlack) {
    t_star = 0.0;
  } else if (!bps.empty() && beta_at(bps.back()) <= beta_target + kBetaSlack) {
    size_t lo = 0, hi = bps.size() - 1;
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      if (beta_at(bps[mid]) <= beta_target + kBetaSlack) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    t_star = bps[hi];
    const PencilTraces at_bp = eval_pencil(rho0, rho1, t_star);
    if (at_bp.b_strict + at_bp.b_null < beta_target - kBetaSlack) {
      // The theta family at this breakpoint tops out below beta_target, so
      // beta crossed the target strictly inside the preceding interval.
      t_star = bisect(hi == 0 ? 0.0 : bps[hi - 1], t_star);
    }
  } else {
    double lo = bps.empty() ? 0.0 : bps.back();
    double hi = bps.empty() ? 1.0 : bps.back() + 1.0;
    int expansions = 0;
    while (beta_at(hi) > beta_target + kBetaSlack && expansions < 60) {
      hi *= 2.0;
      ++expansions;
    }
    t_star = bisect(lo, hi);
  }

  const PencilTraces tr = eval_pencil(rho0, rho1, t_star);
  double theta = 0.0;
  if (tr.b_null > 1e-13) {
    theta = std::clamp((beta_target - tr.b_strict) / tr.b_null, 0.0, 1.0);
  }
  const double alpha = 1.0 - tr.a_strict - theta * tr.a_null;

  // Cross-check against the sup characterization over the breakpoints plus
  // the chosen threshold; a mismatch means the monotonicity assumption broke
  // and is reported, not trusted.
  std::vector<double> grid = bps;
  grid.push_back(t_star);
  grid.push_back(0.0);
  const double sup = alpha_sup_form(rho0, rho1, beta_target, grid);
  // When theta solves the beta constraint exactly the identity
  // alpha = objective(t_star) holds; a clamped theta (unreachable
  // beta_target) leaves the difference t_star * (beta_target - beta(test)).
  const double clamp_correction =
      t_star * std::max(0.0, beta_target - (tr.b_strict + theta * tr.b_null));
  if (sup > alpha + 1e-8 || alpha > sup + clamp_correction + 1e-8) {
    throw std::runtime_error("alpha_beta: sup-form cross-check failed (alpha=" +
                             std::to_string(alpha) + ", sup=" + std::to_string(sup) + ")");
  }

  auto proj = pencil_projectors(rho0, rho1, t_star);
  return AlphaBetaResult{alpha, NpTest{t_star, std::move(proj.strict), std::move(proj.null), theta}};
}

}  // namespace cqmeta
