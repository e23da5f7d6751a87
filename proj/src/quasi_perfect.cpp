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

#include "cqmeta/quasi_perfect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace cqmeta {

namespace {

constexpr double kOrthTol = 1e-9;
constexpr double kGapTol = 1e-9;
constexpr double kCoverTol = 1e-9;

Matrix pencil_matrix(const Channel& channel, const std::string& x, double t,
                     const DensityOperator& mu) {
  return channel.at(x).matrix() - t * mu.matrix();
}

std::vector<std::string> distinct_codewords(const Code& code) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& x : code.codewords) {
    if (seen.insert(x).second) out.push_back(x);
  }
  return out;
}

std::vector<double> breakpoint_union(const Channel& channel, const std::vector<std::string>& xs,
                                     const DensityOperator& mu) {
  std::vector<double> out;
  for (const auto& x : xs) {
    for (double bp : pencil_breakpoints(channel.at(x).matrix(), mu.matrix())) out.push_back(bp);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }),
            out.end());
  return out;
}

double max_pairwise_product_norm(const std::vector<Projector>& projs) {
  double worst = 0.0;
  for (size_t i = 0; i < projs.size(); ++i) {
    for (size_t j = i + 1; j < projs.size(); ++j) {
      worst = std::max(worst, (projs[i].matrix() * projs[j].matrix()).norm());
    }
  }
  return worst;
}

}  // namespace

std::string to_string(CodeStatus status) {
  switch (status) {
    case CodeStatus::perfect: return "perfect";
    case CodeStatus::quasi_perfect: return "quasi_perfect";
    case CodeStatus::neither: return "neither";
  }
  return "unknown";
}

Projector e_projector(const Channel& channel, const std::string& x, double t,
                      const DensityOperator& mu, EProjectorMode mode) {
  const HermitianOperator pencil(pencil_matrix(channel, x, t, mu));
  return eigenspace_projector(pencil, mode == EProjectorMode::closed ? EigenspaceMode::nonneg
                                                                     : EigenspaceMode::strict_pos);
}

Projector e_projector_relaxed(const Channel& channel, const std::string& x, double t,
                              const DensityOperator& mu, double eps) {
  if (eps < 0.0) {
    throw std::invalid_argument("e_projector_relaxed: eps must be nonnegative");
  }
  const Matrix pencil = pencil_matrix(channel, x, t, mu);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pencil);
  const Eigen::VectorXd evals = es.eigenvalues();
  const double ztol = std::max(tol::zero_eig_rel * evals.cwiseAbs().maxCoeff(), tol::zero_eig_floor);
  Matrix proj = Matrix::Zero(pencil.rows(), pencil.cols());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    if (evals[k] > -eps - ztol) {
      proj += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    }
  }
  return Projector(HermitianOperator(std::move(proj)));
}

double f_value(const Channel& channel, const std::string& x, double t, const DensityOperator& mu) {
  return trace_pair(channel.at(x).base(),
                    e_projector(channel, x, t, mu, EProjectorMode::closed).base());
}

double g_value(const Channel& channel, const std::string& x, double t, const DensityOperator& mu) {
  return trace_pair(mu.base(), e_projector(channel, x, t, mu, EProjectorMode::closed).base());
}

double f_open(const Channel& channel, const std::string& x, double t, const DensityOperator& mu) {
  return trace_pair(channel.at(x).base(),
                    e_projector(channel, x, t, mu, EProjectorMode::open).base());
}

double g_open(const Channel& channel, const std::string& x, double t, const DensityOperator& mu) {
  return trace_pair(mu.base(), e_projector(channel, x, t, mu, EProjectorMode::open).base());
}

SymmetryReport symmetry_check(const Channel& channel, const DensityOperator& mu,
                              const std::vector<double>& extra_t_samples) {
  const std::vector<std::string> labels = channel.labels();
  const std::vector<double> bps = breakpoint_union(channel, labels, mu);

  std::vector<double> samples = extra_t_samples;
  if (bps.empty()) {
    samples.insert(samples.end(), {-1.0, 0.0, 1.0});
  } else {
    samples.push_back(bps.front() - 1.0);
    samples.push_back(-1.0);  // F == 1 region
    for (size_t i = 0; i < bps.size(); ++i) {
      samples.push_back(bps[i]);
      if (i + 1 < bps.size()) samples.push_back(0.5 * (bps[i] + bps[i + 1]));
    }
    samples.push_back(bps.back() + 1.0);
    if (bps.front() > 0.0) samples.push_back(0.5 * bps.front());
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  SymmetryReport report{mu, bps, samples, labels, {}, {}, 0.0, 0.0, false};
  for (double t : samples) {
    std::vector<double> f_row, g_row;
    f_row.reserve(labels.size());
    g_row.reserve(labels.size());
    for (const auto& x : labels) {
      f_row.push_back(f_value(channel, x, t, mu));
      g_row.push_back(g_value(channel, x, t, mu));
    }
    const auto [f_lo, f_hi] = std::minmax_element(f_row.begin(), f_row.end());
    const auto [g_lo, g_hi] = std::minmax_element(g_row.begin(), g_row.end());
    report.max_f_deviation = std::max(report.max_f_deviation, *f_hi - *f_lo);
    report.max_g_deviation = std::max(report.max_g_deviation, *g_hi - *g_lo);
    report.f_table.push_back(std::move(f_row));
    report.g_table.push_back(std::move(g_row));
  }
  report.symmetric = report.max_f_deviation <= kOrthTol;
  return report;
}

double packing_radius(const Channel& channel, const Code& code, const DensityOperator& mu) {
  const std::vector<std::string> xs = distinct_codewords(code);
  const bool has_duplicates = xs.size() != code.codewords.size();
  const std::vector<double> candidates = breakpoint_union(channel, xs, mu);

  for (double t : candidates) {
    std::vector<Projector> open;
    open.reserve(xs.size());
    for (const auto& x : xs) open.push_back(e_projector(channel, x, t, mu, EProjectorMode::open));
    bool ok = max_pairwise_product_norm(open) <= kOrthTol;
    if (ok && has_duplicates) {
      // A repeated codeword shares its own projector, so orthogonality across
      // the code list forces that projector to vanish.
      std::set<std::string> seen;
      for (const auto& x : code.codewords) {
        if (!seen.insert(x).second) {
          const auto it = std::find(xs.begin(), xs.end(), x);
          if (open[static_cast<size_t>(it - xs.begin())].matrix().norm() > kOrthTol) ok = false;
        }
      }
    }
    if (ok) return t;
  }
  return std::numeric_limits<double>::infinity();
}

namespace {

IndexPartition build_partition(const Channel& channel, const Code& code,
                               const DensityOperator& mu, double t_bar) {
  IndexPartition partition;
  const Eigen::Index n = channel.output_dim();
  const std::vector<std::string> xs = distinct_codewords(code);

  Matrix open_sum = Matrix::Zero(n, n);
  for (const auto& x : xs) {
    open_sum += e_projector(channel, x, t_bar, mu, EProjectorMode::open).matrix();
  }
  // Residual space: complement of the union of the open projectors. Only a
  // projector when those are orthogonal.
  const Matrix residual = Matrix::Identity(n, n) - open_sum;
  Eigen::SelfAdjointEigenSolver<Matrix> res_es(residual);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lam = res_es.eigenvalues()[k];
    if (std::min(std::abs(lam), std::abs(lam - 1.0)) > 1e-8) {
      return partition;  // not available
    }
  }

  // Successive refinement of the residual space by the codeword pencils: a
  // joint eigenbasis falls out when one exists.
  std::vector<Matrix> blocks;
  {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (res_es.eigenvalues()[k] > 0.5) keep.push_back(k);
    }
    if (!keep.empty()) {
      Matrix q(n, static_cast<Eigen::Index>(keep.size()));
      for (size_t k = 0; k < keep.size(); ++k) q.col(static_cast<Eigen::Index>(k)) = res_es.eigenvectors().col(keep[k]);
      blocks.push_back(std::move(q));
    }
  }

  for (const auto& x : xs) {
    const Matrix pencil = pencil_matrix(channel, x, t_bar, mu);
    std::vector<Matrix> next;
    for (const Matrix& q : blocks) {
      if (q.cols() == 1) {
        next.push_back(q);
        continue;
      }
      Matrix compressed = q.adjoint() * pencil * q;
      compressed = 0.5 * (compressed + compressed.adjoint());
      Eigen::SelfAdjointEigenSolver<Matrix> es(compressed);
      const Eigen::VectorXd d = es.eigenvalues();
      const double cluster = 1e-9 * std::max(d.cwiseAbs().maxCoeff(), 1.0);
      Eigen::Index lo = 0;
      while (lo < d.size()) {
        Eigen::Index hi = lo;
        while (hi + 1 < d.size() && d[hi + 1] - d[lo] <= cluster) ++hi;
        next.push_back(q * es.eigenvectors().middleCols(lo, hi - lo + 1));
        lo = hi + 1;
      }
    }
    blocks = std::move(next);
  }

  for (const Matrix& q : blocks) {
    for (Eigen::Index c = 0; c < q.cols(); ++c) partition.basis.push_back(q.col(c));
  }
  partition.available = true;

  const int m_count = code.size();
  partition.eps_values.assign(partition.basis.size(),
                              std::vector<double>(static_cast<size_t>(m_count), 0.0));
  bool joint = true;
  for (size_t i = 0; i < partition.basis.size(); ++i) {
    const Vector& v = partition.basis[i];
    double best = std::numeric_limits<double>::infinity();
    int best_m = 0;
    for (int m = 0; m < m_count; ++m) {
      const Matrix pencil = pencil_matrix(channel, code.codewords[static_cast<size_t>(m)], t_bar, mu);
      const Vector image = pencil * v;
      const double rayleigh = (v.adjoint() * image)(0, 0).real();
      const double eps_im = -rayleigh;
      partition.eps_values[i][static_cast<size_t>(m)] = eps_im;
      if ((image - rayleigh * v).norm() > 1e-9 * std::max(1.0, pencil.norm())) joint = false;
      if (eps_im < best - 1e-12) {
        best = eps_im;
        best_m = m;
      }
    }
    partition.assignment.push_back(best_m);
    partition.eps_min.push_back(best);
  }
  partition.joint_eigenbasis = joint;
  return partition;
}

}  // namespace

GapResult optimality_gap(const Channel& channel, const Code& code, const DensityOperator& mu,
                         double t_bar) {
  if (!std::isfinite(t_bar)) {
    throw std::invalid_argument("optimality_gap: packing radius is not finite");
  }
  const Eigen::Index n = channel.output_dim();

  std::vector<double> candidates{0.0};
  for (const auto& x : distinct_codewords(code)) {
    const Matrix pencil = pencil_matrix(channel, x, t_bar, mu);
    Eigen::SelfAdjointEigenSolver<Matrix> es(pencil, Eigen::EigenvaluesOnly);
    const double ztol =
        std::max(tol::zero_eig_rel * es.eigenvalues().cwiseAbs().maxCoeff(), tol::zero_eig_floor);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      if (es.eigenvalues()[k] < -ztol) candidates.push_back(-es.eigenvalues()[k]);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                   candidates.end());

  GapResult out{candidates.back(), build_partition(channel, code, mu, t_bar)};
  for (double eps : candidates) {
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& x : code.codewords) {
      sum += e_projector_relaxed(channel, x, t_bar, mu, eps).matrix();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sum, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() >= 1.0 - kCoverTol) {
      out.gap = eps;
      break;
    }
  }
  return out;
}

QpCertificate certify(const Channel& channel, const Code& code, const DensityOperator& mu) {
  const SymmetryReport sym = symmetry_check(channel, mu);
  const double t_bar = packing_radius(channel, code, mu);

  QpCertificate cert;
  cert.t_bar = t_bar;
  cert.mu = mu;
  cert.symmetric = sym.symmetric;
  cert.max_f_deviation = sym.max_f_deviation;

  if (!std::isfinite(t_bar)) {
    cert.status = CodeStatus::neither;
    cert.gap = std::numeric_limits<double>::infinity();
    cert.orthogonality_residual = std::numeric_limits<double>::infinity();
    cert.covering_margin = -std::numeric_limits<double>::infinity();
    return cert;
  }

  const std::vector<std::string> xs = distinct_codewords(code);
  std::vector<Projector> open, closed;
  for (const auto& x : xs) {
    open.push_back(e_projector(channel, x, t_bar, mu, EProjectorMode::open));
    closed.push_back(e_projector(channel, x, t_bar, mu, EProjectorMode::closed));
  }
  cert.orthogonality_residual = max_pairwise_product_norm(open);

  const Eigen::Index n = channel.output_dim();
  Matrix closed_sum = Matrix::Zero(n, n);
  for (const auto& x : code.codewords) {
    closed_sum += e_projector(channel, x, t_bar, mu, EProjectorMode::closed).matrix();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(closed_sum, Eigen::EigenvaluesOnly);
  cert.covering_margin = es.eigenvalues().minCoeff() - 1.0;

  cert.gap = optimality_gap(channel, code, mu, t_bar).gap;

  const bool closed_orth = max_pairwise_product_norm(closed) <= kOrthTol &&
                           xs.size() == code.codewords.size();
  const bool closed_resolve =
      (closed_sum - Matrix::Identity(n, n)).norm() <= 1e-8;
  if (closed_orth && closed_resolve) {
    cert.status = CodeStatus::perfect;
  } else if (cert.gap <= kGapTol && cert.covering_margin >= -kCoverTol) {
    cert.status = CodeStatus::quasi_perfect;
  } else {
    cert.status = CodeStatus::neither;
  }
  return cert;
}

double qp_error_probability(const Channel& channel, const Code& code, double t,
                            const DensityOperator& mu) {
  const std::vector<std::string> xs = distinct_codewords(code);
  double f_lo = std::numeric_limits<double>::infinity(), f_hi = -f_lo;
  double g_lo = std::numeric_limits<double>::infinity(), g_hi = -g_lo;
  for (const auto& x : xs) {
    const double f = f_open(channel, x, t, mu);
    const double g = g_open(channel, x, t, mu);
    f_lo = std::min(f_lo, f); f_hi = std::max(f_hi, f);
    g_lo = std::min(g_lo, g); g_hi = std::max(g_hi, g);
  }
  if (f_hi - f_lo > 1e-9 || g_hi - g_lo > 1e-9) {
    throw std::runtime_error("qp_error_probability: channel is not symmetric at t = " +
                             std::to_string(t));
  }
  const double m = static_cast<double>(code.size());
  return 1.0 - 0.5 * (f_lo + f_hi) + t * (0.5 * (g_lo + g_hi) - 1.0 / m);
}

Povm qp_decoder(const Channel& channel, const Code& code, double t_bar,
                const DensityOperator& mu) {
  if (distinct_codewords(code).size() != code.codewords.size()) {
    throw std::invalid_argument("qp_decoder: duplicate codewords are not supported");
  }
  const IndexPartition partition = build_partition(channel, code, mu, t_bar);
  if (!partition.available) {
    throw std::runtime_error(
        "qp_decoder: residual basis unavailable; use solve_optimal_povm instead");
  }

  std::vector<Matrix> pis;
  pis.reserve(static_cast<size_t>(code.size()));
  for (const auto& x : code.codewords) {
    pis.push_back(e_projector(channel, x, t_bar, mu, EProjectorMode::open).matrix());
  }
  for (size_t i = 0; i < partition.basis.size(); ++i) {
    const Vector& v = partition.basis[i];
    pis[static_cast<size_t>(partition.assignment[i])] += v * v.adjoint();
  }

  std::vector<HermitianOperator> elems;
  elems.reserve(pis.size());
  for (auto& pi : pis) elems.emplace_back(0.5 * (pi + pi.adjoint()));
  Povm povm(std::move(elems));

  std::vector<DensityOperator> states;
  std::vector<double> priors(static_cast<size_t>(code.size()),
                             1.0 / static_cast<double>(code.size()));
  for (const auto& x : code.codewords) states.push_back(channel.at(x));
  MaryProblem problem(std::move(states), std::move(priors));
  const HyklReport report = hykl_verify(problem, povm, 1e-8);
  if (!report.passed) {
    throw std::runtime_error(
        "qp_decoder: constructed decoder fails the optimality conditions; "
        "use solve_optimal_povm instead");
  }
  return povm;
}

ConverseEqualityResult verify_converse_equality(const Channel& channel, const Code& code, double t,
                               const DensityOperator& mu) {
  (void)t;
  ConverseEqualityResult out;
  out.pe = pe_of_code(channel, code).pe;

  const std::vector<std::string> xs = distinct_codewords(code);
  const double inv_m = 1.0 / static_cast<double>(code.size());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& x : xs) {
    const double a = alpha_beta(channel.at(x), mu, inv_m).value;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  if (hi - lo > 1e-7) {
    throw std::runtime_error("verify_converse_equality: single-codeword bound varies across codewords");
  }
  out.single_codeword_bound = 0.5 * (lo + hi);

  out.meta_converse_value =
      meta_converse(channel, induced_distribution(channel, code), code.size(), mu);

  out.equal = std::abs(out.pe - out.single_codeword_bound) <= 1e-7 &&
              std::abs(out.pe - out.meta_converse_value) <= 1e-7 &&
              std::abs(out.single_codeword_bound - out.meta_converse_value) <= 1e-7;
  return out;
}

}  // namespace cqmeta
