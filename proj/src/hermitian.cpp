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

#include "cqmeta/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cqmeta {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> solve_eigen(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return es;
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    throw std::invalid_argument("HermitianOperator: matrix must be square with dim >= 1");
  }
  const double residual = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (residual > tol::hermiticity) {
    throw std::invalid_argument("HermitianOperator: not self-adjoint (residual " +
                                std::to_string(residual) + ")");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

DensityOperator::DensityOperator(HermitianOperator base) : base_(std::move(base)) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(base_.matrix(), Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::psd) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue " + std::to_string(min_eig));
  }
  if (std::abs(base_.trace() - 1.0) > tol::trace_one) {
    throw std::invalid_argument("DensityOperator: trace " + std::to_string(base_.trace()) +
                                " is not 1");
  }
}

Projector::Projector(HermitianOperator base) : base_(std::move(base)) {
  const Matrix& p = base_.matrix();
  const double idem = (p * p - p).norm();
  if (idem > tol::idempotent) {
    throw std::invalid_argument("Projector: not idempotent (residual " + std::to_string(idem) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (std::min(std::abs(lam), std::abs(lam - 1.0)) > tol::idempotent) {
      throw std::invalid_argument("Projector: eigenvalue " + std::to_string(lam) +
                                  " not in {0, 1}");
    }
  }
}

Eigen::Index Projector::rank() const {
  return static_cast<Eigen::Index>(std::llround(base_.trace()));
}

Projector Projector::zero(Eigen::Index dim) {
  return Projector(HermitianOperator(Matrix::Zero(dim, dim)));
}

Projector Projector::identity(Eigen::Index dim) {
  return Projector(HermitianOperator(Matrix::Identity(dim, dim)));
}

SpectralDecomposition spectral_decompose(const HermitianOperator& a, double cluster_tol) {
  const auto es = solve_eigen(a);
  const Eigen::VectorXd evals = es.eigenvalues();
  const Matrix& evecs = es.eigenvectors();
  const Eigen::Index n = evals.size();

  if (cluster_tol <= 0.0) {
    cluster_tol = 1e-9 * std::max(evals.cwiseAbs().maxCoeff(), 1e-300);
  }

  SpectralDecomposition out;
  // Eigen returns ascending order; emit clusters descending.
  Eigen::Index i = n - 1;
  while (i >= 0) {
    Eigen::Index j = i;
    while (j - 1 >= 0 && evals[i] - evals[j - 1] <= cluster_tol) --j;
    Matrix proj = Matrix::Zero(n, n);
    double lam = 0.0;
    for (Eigen::Index k = j; k <= i; ++k) {
      proj += evecs.col(k) * evecs.col(k).adjoint();
      lam += evals[k];
    }
    lam /= static_cast<double>(i - j + 1);
    out.eigenvalues.push_back(lam);
    out.eigenprojectors.emplace_back(HermitianOperator(proj));
    out.multiplicities.push_back(static_cast<int>(i - j + 1));
    i = j - 1;
  }

  // Reconstruction and orthogonality are structural invariants; verify here
  // rather than trusting the solver blindly.
  Matrix recon = Matrix::Zero(n, n);
  for (size_t k = 0; k < out.eigenvalues.size(); ++k) {
    recon += out.eigenvalues[k] * out.eigenprojectors[k].matrix();
  }
  const double scale = std::max(a.matrix().norm(), 1.0);
  if ((recon - a.matrix()).norm() > tol::reconstruction * scale) {
    throw std::runtime_error("spectral_decompose: reconstruction failed");
  }
  return out;
}

Projector eigenspace_projector(const HermitianOperator& a, EigenspaceMode mode, double zero_tol) {
  const auto es = solve_eigen(a);
  const Eigen::VectorXd evals = es.eigenvalues();
  const Matrix& evecs = es.eigenvectors();
  const Eigen::Index n = evals.size();

  if (zero_tol < 0.0) {
    const double spectral_norm = evals.cwiseAbs().maxCoeff();
    zero_tol = std::max(tol::zero_eig_rel * spectral_norm, tol::zero_eig_floor);
  }

  Matrix proj = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lam = evals[k];
    bool take = false;
    switch (mode) {
      case EigenspaceMode::strict_pos: take = lam > zero_tol; break;
      case EigenspaceMode::nonneg:     take = lam > -zero_tol; break;
      case EigenspaceMode::nonpos:     take = lam <= zero_tol; break;
      case EigenspaceMode::strict_neg: take = lam <= -zero_tol; break;
    }
    if (take) proj += evecs.col(k) * evecs.col(k).adjoint();
  }
  return Projector(HermitianOperator(std::move(proj)));
}

double trace_pair(const HermitianOperator& a, const HermitianOperator& b) {
  return trace_pair(a, b.matrix());
}

double trace_pair(const HermitianOperator& a, const Matrix& b) {
  if (a.dim() != b.rows() || b.rows() != b.cols()) {
    throw std::invalid_argument("trace_pair: dimension mismatch");
  }
  const Complex t = (a.matrix() * b).trace();
  if (std::abs(t.imag()) > 1e-10 * std::max(1.0, std::abs(t.real()))) {
    throw std::runtime_error("trace_pair: imaginary residue " + std::to_string(t.imag()));
  }
  return t.real();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

HermitianOperator block_diag(const std::vector<HermitianOperator>& blocks) {
  if (blocks.empty()) {
    throw std::invalid_argument("block_diag: empty block list");
  }
  Eigen::Index n = 0;
  for (const auto& blk : blocks) n += blk.dim();
  Matrix out = Matrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& blk : blocks) {
    out.block(off, off, blk.dim(), blk.dim()) = blk.matrix();
    off += blk.dim();
  }
  return HermitianOperator(std::move(out));
}

}  // namespace cqmeta
