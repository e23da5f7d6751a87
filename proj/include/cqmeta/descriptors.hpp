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

#ifndef CQMETA_DESCRIPTORS_HPP
#define CQMETA_DESCRIPTORS_HPP

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "cqmeta/channel.hpp"
#include "cqmeta/quasi_perfect.hpp"

namespace cqmeta {

/// Malformed descriptor contents. The message carries context from the JSON
/// parser (byte offset / element path) when available.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message) : std::runtime_error(message) {}
};

struct ChannelDescriptor {
  std::string kind;  // "pure" | "depolarizing" | "erasure"
  int n_qubits = 2;
  double param = 0.0;  // p or epsilon
  std::optional<std::map<std::string, Vector>> amplitudes;
};

struct CodeDescriptor {
  std::string kind;  // "bell" | "explicit"
  int m = 0;
  std::optional<std::vector<std::string>> codewords;
};

nlohmann::json parse_json_text(const std::string& text);

ChannelDescriptor parse_channel_descriptor(const nlohmann::json& j);
CodeDescriptor parse_code_descriptor(const nlohmann::json& j);

/// Instantiates the channel/code pair: Bell codes are generated from
/// (n_qubits, M) and wrapped with the requested noise; explicit codes index
/// into the supplied amplitude table.
std::pair<Channel, Code> build_channel_code(const ChannelDescriptor& ch, const CodeDescriptor& cd);

/// mu_spec: "mixed" (maximally mixed), "average" (code-induced output
/// average), "auto" (the symmetry state for the family: maximally mixed for
/// pure/depolarizing, the weighted erasure form otherwise), or inline JSON
/// with a "matrix" entry.
DensityOperator resolve_mu(const std::string& mu_spec, const ChannelDescriptor& ch,
                           const Channel& channel, const Code& code);

Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

MaryProblem problem_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const QpCertificate& cert);
nlohmann::json povm_to_json(const Povm& povm);
nlohmann::json hykl_to_json(const HyklReport& report);

/// Round to 12 significant digits so emissions are byte-stable.
double round12(double v);

}  // namespace cqmeta

#endif
