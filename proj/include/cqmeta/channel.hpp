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

#ifndef CQMETA_CHANNEL_HPP
#define CQMETA_CHANNEL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cqmeta/discrimination.hpp"
#include "cqmeta/hermitian.hpp"

namespace cqmeta {

/// One-shot classical-quantum channel: finite input alphabet mapped to
/// density operators on a common output space. Labels sort lexicographically;
/// block layouts follow that order.
struct Channel {
  std::map<std::string, DensityOperator> outputs;

  explicit Channel(std::map<std::string, DensityOperator> w);
  Eigen::Index output_dim() const { return outputs.begin()->second.dim(); }
  const DensityOperator& at(const std::string& x) const;
  std::vector<std::string> labels() const;
};

/// Ordered codeword list over the channel alphabet; duplicates permitted.
struct Code {
  std::vector<std::string> codewords;

  explicit Code(std::vector<std::string> words);
  int size() const { return static_cast<int>(codewords.size()); }
};

struct InputDistribution {
  std::map<std::string, double> weights;

  explicit InputDistribution(std::map<std::string, double> w);
};

struct PeResult {
  double pe = 0.0;
  Povm povm;
  HyklReport report;
};

struct BlockTestDecomposition {
  double value = 0.0;
  std::map<std::string, double> per_x_beta;
  double threshold = 0.0;
  double theta = 0.0;
};

Channel pure_state_channel(const std::map<std::string, Vector>& amplitudes);

/// 2-qubit Bell code: M = 2K even, M >= 4. Outputs
/// (|00> + e^{i phi_k}|11>)/sqrt(2) and (|01> + e^{i phi_k}|10>)/sqrt(2)
/// with phi_k = 2 pi k / K.
std::pair<Channel, Code> bell_code(int m);

/// N-qubit Bell code: M = 2^{N-1} K >= 2^N; the Bell pair sits on the two
/// most significant qubits and the remaining N-2 qubits carry |l>.
std::pair<Channel, Code> bell_code_n(int n_qubits, int m);

/// W_x -> p I/d + (1-p) W_x.
Channel depolarize(const Channel& channel, double p);

/// W_x -> diag((1-eps) W_x, eps) on dim d+1 with an erasure flag direction.
Channel erase(const Channel& channel, double eps);

/// Uniform distribution induced by a code (duplicates accumulate weight).
InputDistribution induced_distribution(const Channel& channel, const Code& code);

/// Block-diagonal PW = sum_x P(x) |x><x| (x) W_x over supp(P), labels sorted.
DensityOperator pw_operator(const InputDistribution& p, const Channel& channel);
DensityOperator p_tensor_mu(const InputDistribution& p, const Channel& channel,
                            const DensityOperator& mu);

/// Minimum error probability of the code: M-ary discrimination with uniform
/// priors, certified through HYKL.
PeResult pe_of_code(const Channel& channel, const Code& code, double tolerance = 1e-8,
                    int max_iterations = 20000);

/// alpha_{1/M}(PW || P (x) mu) on the block operators.
double meta_converse(const Channel& channel, const InputDistribution& p, int m,
                     const DensityOperator& mu);

/// min over candidate input distributions of max over candidate states.
double meta_converse_min(const Channel& channel, const std::vector<InputDistribution>& candidate_ps,
                         const std::vector<DensityOperator>& candidate_mus, int m);

/// Runs the joint Neyman-Pearson test on (PW, P (x) mu) and splits it into
/// per-input sub-tests; sum_x P(x) beta'_x = beta_total and the combined
/// value matches the joint alpha within 1e-8 (checked).
BlockTestDecomposition decompose_block_test(const Channel& channel, const InputDistribution& p,
                              const DensityOperator& mu, double beta_total);

}  // namespace cqmeta

#endif
