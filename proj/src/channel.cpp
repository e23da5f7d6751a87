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

#include "cqmeta/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqmeta {

namespace {

std::string padded_label(int index, int width) {
  std::string digits = std::to_string(index);
  return "x" + std::string(static_cast<size_t>(std::max(0, width - static_cast<int>(digits.size()))), '0') +
         digits;
}

int label_width(int m) {
  int width = 1;
  while (m >= 10) {
    m /= 10;
    ++width;
  }
  return width;
}

}  // namespace

Channel::Channel(std::map<std::string, DensityOperator> w) : outputs(std::move(w)) {
  if (outputs.empty()) {
    throw std::invalid_argument("Channel: empty alphabet");
  }
  const Eigen::Index d = outputs.begin()->second.dim();
  for (const auto& [label, state] : outputs) {
    if (state.dim() != d) {
      throw std::invalid_argument("Channel: output dimension mismatch at " + label);
    }
  }
}

const DensityOperator& Channel::at(const std::string& x) const {
  auto it = outputs.find(x);
  if (it == outputs.end()) {
    throw std::invalid_argument("Channel: unknown input label " + x);
  }
  return it->second;
}

std::vector<std::string> Channel::labels() const {
  std::vector<std::string> out;
  out.reserve(outputs.size());
  for (const auto& [label, state] : outputs) out.push_back(label);
  return out;
}

Code::Code(std::vector<std::string> words) : codewords(std::move(words)) {
  if (codewords.empty()) {
    throw std::invalid_argument("Code: need at least one codeword");
  }
}

InputDistribution::InputDistribution(std::map<std::string, double> w) : weights(std::move(w)) {
  double sum = 0.0;
  for (const auto& [label, p] : weights) {
    if (p < 0.0) throw std::invalid_argument("InputDistribution: negative weight at " + label);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("InputDistribution: weights sum to " + std::to_string(sum));
  }
}

Channel pure_state_channel(const std::map<std::string, Vector>& amplitudes) {
  std::map<std::string, DensityOperator> outputs;
  for (const auto& [label, vec] : amplitudes) {
    if (std::abs(vec.norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("pure_state_channel: vector at " + label +
                                  " has norm " + std::to_string(vec.norm()));
    }
    outputs.emplace(label, DensityOperator(HermitianOperator(vec * vec.adjoint())));
  }
  return Channel(std::move(outputs));
}

std::pair<Channel, Code> bell_code(int m) {
  return bell_code_n(2, m);
}

std::pair<Channel, Code> bell_code_n(int n_qubits, int m) {
  if (n_qubits < 2) {
    throw std::invalid_argument("bell_code_n: need at least 2 qubits");
  }
  const int half_block = 1 << (n_qubits - 1);  // 2^{N-1}
  const int full_dim = 1 << n_qubits;
  if (m < full_dim || m % half_block != 0) {
    throw std::invalid_argument("bell_code_n: M must be a multiple of 2^{N-1} with M >= 2^N");
  }
  const int k_count = m / half_block;       // K
  const int l_count = 1 << (n_qubits - 2);  // 2^{N-2}

  const int width = label_width(m);
  std::map<std::string, Vector> amplitudes;
  std::vector<std::string> codewords(static_cast<size_t>(m));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  for (int k = 0; k < k_count; ++k) {
    const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * k / k_count);
    for (int l = 0; l < l_count; ++l) {
      for (int variant = 0; variant < 2; ++variant) {
        const int index = 1 + variant + 2 * k + 2 * k_count * l;  // m = 1+2k+2Kl or 2+2k+2Kl
        Vector vec = Vector::Zero(full_dim);
        // Bell pair on the two most significant qubits, |l> on the rest.
        const int hi0 = (variant == 0) ? 0 : 1;  // |00>/|11> vs |01>/|10>
        const int hi1 = (variant == 0) ? 3 : 2;
        vec[hi0 * l_count + l] = inv_sqrt2;
        vec[hi1 * l_count + l] = inv_sqrt2 * phase;
        const std::string label = padded_label(index, width);
        amplitudes.emplace(label, std::move(vec));
        codewords[static_cast<size_t>(index - 1)] = label;
      }
    }
  }
  return {pure_state_channel(amplitudes), Code(std::move(codewords))};
}

Channel depolarize(const Channel& channel, double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("depolarize: p outside [0, 1]");
  }
  const Eigen::Index d = channel.output_dim();
  const Matrix mixed = Matrix::Identity(d, d) / static_cast<double>(d);
  std::map<std::string, DensityOperator> outputs;
  for (const auto& [label, state] : channel.outputs) {
    outputs.emplace(label,
                    DensityOperator(HermitianOperator(p * mixed + (1.0 - p) * state.matrix())));
  }
  return Channel(std::move(outputs));
}

Channel erase(const Channel& channel, double eps) {
  if (eps < 0.0 || eps > 1.0) {
    throw std::invalid_argument("erase: epsilon outside [0, 1]");
  }
  const Eigen::Index d = channel.output_dim();
  std::map<std::string, DensityOperator> outputs;
  for (const auto& [label, state] : channel.outputs) {
    Matrix out = Matrix::Zero(d + 1, d + 1);
    out.topLeftCorner(d, d) = (1.0 - eps) * state.matrix();
    out(d, d) = eps;
    outputs.emplace(label, DensityOperator(HermitianOperator(std::move(out))));
  }
  return Channel(std::move(outputs));
}

InputDistribution induced_distribution(const Channel& channel, const Code& code) {
  std::map<std::string, double> weights;
  const double w = 1.0 / static_cast<double>(code.size());
  for (const auto& x : code.codewords) {
    channel.at(x);  // membership check
    weights[x] += w;
  }
  return InputDistribution(std::move(weights));
}

DensityOperator pw_operator(const InputDistribution& p, const Channel& channel) {
  std::vector<HermitianOperator> blocks;
  for (const auto& [label, weight] : p.weights) {
    blocks.emplace_back(weight * channel.at(label).matrix());
  }
  return DensityOperator(block_diag(blocks));
}

DensityOperator p_tensor_mu(const InputDistribution& p, const Channel& channel,
                            const DensityOperator& mu) {
  if (mu.dim() != channel.output_dim()) {
    throw std::invalid_argument("p_tensor_mu: mu dimension mismatch");
  }
  std::vector<HermitianOperator> blocks;
  for (const auto& [label, weight] : p.weights) {
    channel.at(label);
    blocks.emplace_back(weight * mu.matrix());
  }
  return DensityOperator(block_diag(blocks));
}

PeResult pe_of_code(const Channel& channel, const Code& code, double tolerance,
                    int max_iterations) {
  std::vector<DensityOperator> states;
  states.reserve(code.codewords.size());
  for (const auto& x : code.codewords) states.push_back(channel.at(x));
  std::vector<double> priors(code.codewords.size(), 1.0 / static_cast<double>(code.size()));
  MaryProblem problem(std::move(states), std::move(priors));
  SolveResult solved = solve_optimal_povm(problem, tolerance, max_iterations);
  const double pe = error_probability(problem, solved.povm);
  return PeResult{pe, std::move(solved.povm), std::move(solved.report)};
}

double meta_converse(const Channel& channel, const InputDistribution& p, int m,
                     const DensityOperator& mu) {
  if (m < 1) {
    throw std::invalid_argument("meta_converse: M must be positive");
  }
  const DensityOperator pw = pw_operator(p, channel);
  const DensityOperator pmu = p_tensor_mu(p, channel, mu);
  return alpha_beta(pw, pmu, 1.0 / static_cast<double>(m)).value;
}

double meta_converse_min(const Channel& channel, const std::vector<InputDistribution>& candidate_ps,
                         const std::vector<DensityOperator>& candidate_mus, int m) {
  if (candidate_ps.empty() || candidate_mus.empty()) {
    throw std::invalid_argument("meta_converse_min: empty candidate set");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : candidate_ps) {
    double inner = -std::numeric_limits<double>::infinity();
    for (const auto& mu : candidate_mus) {
      inner = std::max(inner, meta_converse(channel, p, m, mu));
    }
    best = std::min(best, inner);
  }
  return best;
}

BlockTestDecomposition decompose_block_test(const Channel& channel, const InputDistribution& p,
                              const DensityOperator& mu, double beta_total) {
  if (beta_total < 0.0 || beta_total > 1.0) {
    throw std::invalid_argument("decompose_block_test: beta_total outside [0, 1]");
  }
  const DensityOperator pw = pw_operator(p, channel);
  const DensityOperator pmu = p_tensor_mu(p, channel, mu);
  const AlphaBetaResult joint = alpha_beta(pw, pmu, beta_total);
  const double t = joint.test.threshold;
  const double theta = joint.test.theta_weight;

  // The joint pencil is block diagonal with blocks P(x) (W_x - t mu), so the
  // sub-tests are the per-input strict/null projectors with the same theta.
  BlockTestDecomposition out{0.0, {}, t, theta};
  double beta_sum = 0.0;
  for (const auto& [label, weight] : p.weights) {
    const HermitianOperator pencil(channel.at(label).matrix() - t * mu.matrix());
    const Projector strict = eigenspace_projector(pencil, EigenspaceMode::strict_pos);
    const Projector closed = eigenspace_projector(pencil, EigenspaceMode::nonneg);
    const Matrix sub_test =
        strict.matrix() + theta * (closed.matrix() - strict.matrix());
    const double alpha_x = 1.0 - trace_pair(channel.at(label).base(), sub_test);
    const double beta_x = trace_pair(mu.base(), sub_test);
    out.per_x_beta[label] = beta_x;
    out.value += weight * alpha_x;
    beta_sum += weight * beta_x;
  }

  if (std::abs(beta_sum - beta_total) > 1e-9) {
    throw std::runtime_error("decompose_block_test: beta allocation drifted to " +
                             std::to_string(beta_sum));
  }
  if (std::abs(out.value - joint.value) > 1e-8) {
    throw std::runtime_error("decompose_block_test: decomposition value " + std::to_string(out.value) +
                             " disagrees with joint alpha " + std::to_string(joint.value));
  }
  return out;
}

}  // namespace cqmeta
