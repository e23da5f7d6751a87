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

#ifndef CQMETA_QUASI_PERFECT_HPP
#define CQMETA_QUASI_PERFECT_HPP

#include <string>
#include <vector>

#include "cqmeta/channel.hpp"

namespace cqmeta {

enum class CodeStatus { perfect, quasi_perfect, neither };

std::string to_string(CodeStatus status);

enum class EProjectorMode { closed, open };

struct SymmetryReport {
  DensityOperator mu;
  std::vector<double> t_breakpoints;          // union of pencil breakpoints over x
  std::vector<double> t_samples;              // evaluation points (covers every interval)
  std::vector<std::string> labels;
  std::vector<std::vector<double>> f_table;   // [sample][label]
  std::vector<std::vector<double>> g_table;
  double max_f_deviation = 0.0;
  double max_g_deviation = 0.0;
  bool symmetric = false;                     // max_f_deviation <= 1e-9
};

/// Residual-basis bookkeeping from the optimal-decoder construction: basis
/// vectors spanning the complement of the open projectors, per-codeword
/// closeness values eps_i(x) and the induced assignment.
struct IndexPartition {
  bool available = false;
  /// True when every basis element is an eigenvector of every W_x - t mu;
  /// the construction below only needs the assigned pairs to be eigenpairs,
  /// so decoders may verify even when this is false.
  bool joint_eigenbasis = false;
  std::vector<Vector> basis;
  std::vector<int> assignment;                 // basis index -> codeword position
  std::vector<std::vector<double>> eps_values; // [basis index][codeword position]
  std::vector<double> eps_min;                 // eps_i = min over codewords
};

struct GapResult {
  double gap = 0.0;
  IndexPartition partition;
};

struct QpCertificate {
  double t_bar = 0.0;
  DensityOperator mu;
  double orthogonality_residual = 0.0;  // max pairwise ||E_open E_open||_F at t_bar
  double covering_margin = 0.0;         // min eigenvalue of sum_x E_x(t_bar) - I
  double gap = 0.0;
  CodeStatus status = CodeStatus::neither;
  bool symmetric = false;
  double max_f_deviation = 0.0;
};

struct ConverseEqualityResult {
  double pe = 0.0;
  double single_codeword_bound = 0.0;  // alpha_{1/M}(W_x || mu), any x
  double meta_converse_value = 0.0;
  bool equal = false;
};

/// {W_x - t mu >= 0} (closed) or {W_x - t mu > 0} (open).
Projector e_projector(const Channel& channel, const std::string& x, double t,
                      const DensityOperator& mu, EProjectorMode mode);

/// {W_x - t mu >= -eps I}.
Projector e_projector_relaxed(const Channel& channel, const std::string& x, double t,
                              const DensityOperator& mu, double eps);

double f_value(const Channel& channel, const std::string& x, double t, const DensityOperator& mu);
double g_value(const Channel& channel, const std::string& x, double t, const DensityOperator& mu);
double f_open(const Channel& channel, const std::string& x, double t, const DensityOperator& mu);
double g_open(const Channel& channel, const std::string& x, double t, const DensityOperator& mu);

/// F_x (and G_x) evaluated on every constancy interval of the pencils
/// (breakpoints, interval midpoints, one sample below and above the
/// breakpoint range including t < 0, plus caller-supplied samples).
SymmetryReport symmetry_check(const Channel& channel, const DensityOperator& mu,
                              const std::vector<double>& extra_t_samples = {});

/// Smallest pencil breakpoint at which the open projectors of all codewords
/// are pairwise orthogonal (product norms <= 1e-9). Returns +infinity when
/// no scanned candidate achieves orthogonality.
double packing_radius(const Channel& channel, const Code& code, const DensityOperator& mu);

/// Smallest eps (scanned over the negated eigenvalues of W_x - t_bar mu)
/// whose relaxed projectors jointly cover: min eig of sum_x E^eps_x >= 1.
/// Also builds the residual-basis partition when one exists.
GapResult optimality_gap(const Channel& channel, const Code& code, const DensityOperator& mu,
                         double t_bar);

QpCertificate certify(const Channel& channel, const Code& code, const DensityOperator& mu);

/// 1 - F_open(t, mu) + t (G_open(t, mu) - 1/M). Requires the open functional
/// values to agree across codewords (symmetric channel); for codes that are
/// not quasi-perfect this value is a strict lower bound on pe_of_code.
double qp_error_probability(const Channel& channel, const Code& code, double t,
                            const DensityOperator& mu);

/// Decoder from the residual-basis partition: Pi_m = open projector plus the
/// assigned basis elements. The result must pass hykl_verify at 1e-8;
/// otherwise this throws and the iterative solver is the fallback.
Povm qp_decoder(const Channel& channel, const Code& code, double t_bar,
                const DensityOperator& mu);

/// Computes pe_of_code, the single-codeword bound alpha_{1/M}(W_x || mu)
/// (cross-codeword equality asserted) and the meta-converse; `equal` is set
/// when all three agree within 1e-7, which quasi-perfect codes achieve.
ConverseEqualityResult verify_converse_equality(const Channel& channel, const Code& code, double t,
                               const DensityOperator& mu);

}  // namespace cqmeta

#endif
