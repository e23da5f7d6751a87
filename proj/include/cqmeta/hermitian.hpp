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

#ifndef CQMETA_HERMITIAN_HPP
#define CQMETA_HERMITIAN_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cqmeta {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
inline constexpr double hermiticity = 1e-12;   // max-abs entrywise
inline constexpr double psd = 1e-10;           // eigenvalue floor
inline constexpr double trace_one = 1e-10;
inline constexpr double idempotent = 1e-10;    // Frobenius
inline constexpr double reconstruction = 1e-9; // Frobenius, relative
inline constexpr double zero_eig_rel = 1e-10;  // relative to spectral norm
inline constexpr double zero_eig_floor = 1e-14;
}  // namespace tol

/// Dense complex Hermitian matrix. The constructor rejects inputs whose
/// anti-Hermitian part exceeds 1e-12 entrywise and stores (A + A')/2.
class HermitianOperator {
 public:
  /// 1x1 zero placeholder so report structs stay default-constructible.
  HermitianOperator() : entries_(Matrix::Zero(1, 1)) {}
  explicit HermitianOperator(Matrix entries);

  const Matrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  double trace() const { return entries_.trace().real(); }

 private:
  Matrix entries_;
};

/// Unit-trace positive semidefinite operator (a quantum state).
class DensityOperator {
 public:
  /// 1x1 trivial state placeholder.
  DensityOperator() : base_(Matrix::Ones(1, 1)) {}
  explicit DensityOperator(HermitianOperator base);
  explicit DensityOperator(Matrix entries) : DensityOperator(HermitianOperator(std::move(entries))) {}

  const HermitianOperator& base() const { return base_; }
  const Matrix& matrix() const { return base_.matrix(); }
  Eigen::Index dim() const { return base_.dim(); }

 private:
  HermitianOperator base_;
};

/// Idempotent Hermitian operator with {0,1} spectrum.
class Projector {
 public:
  /// 1x1 zero projector placeholder.
  Projector() : base_(Matrix::Zero(1, 1)) {}
  explicit Projector(HermitianOperator base);
  explicit Projector(Matrix entries) : Projector(HermitianOperator(std::move(entries))) {}

  const HermitianOperator& base() const { return base_; }
  const Matrix& matrix() const { return base_.matrix(); }
  Eigen::Index dim() const { return base_.dim(); }
  /// Number of eigenvalues equal to one.
  Eigen::Index rank() const;

  static Projector zero(Eigen::Index dim);
  static Projector identity(Eigen::Index dim);

 private:
  HermitianOperator base_;
};

/// A = sum_i lambda_i E_i with one projector per eigenvalue cluster,
/// eigenvalues descending.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Projector> eigenprojectors;
  std::vector<int> multiplicities;
};

enum class EigenspaceMode { strict_pos, nonneg, nonpos, strict_neg };

/// Cluster tolerance <= 0 selects the default 1e-9 * max|lambda|.
SpectralDecomposition spectral_decompose(const HermitianOperator& a, double cluster_tol = -1.0);

/// Projector onto the eigenspace selected by `mode`. A zero tolerance < 0
/// selects the default 1e-10 * ||A||_2 with floor 1e-14. The four modes
/// partition pairwise: strict_pos + nonpos = I and nonneg + strict_neg = I.
Projector eigenspace_projector(const HermitianOperator& a, EigenspaceMode mode, double zero_tol = -1.0);

/// Re tr(A B); throws if the imaginary residue exceeds 1e-10.
double trace_pair(const HermitianOperator& a, const HermitianOperator& b);
double trace_pair(const HermitianOperator& a, const Matrix& b);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator block_diag(const std::vector<HermitianOperator>& blocks);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace cqmeta

#endif
