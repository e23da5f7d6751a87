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

#include "cqmeta/descriptors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cqmeta {

namespace {

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex numbers must be [re, im] pairs, got " + j.dump());
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json::array({round12(z.real()), round12(z.imag())});
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("amplitude vectors must be nonempty arrays");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("matrix must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ChannelDescriptor parse_channel_descriptor(const nlohmann::json& j) {
  ChannelDescriptor out;
  if (!j.is_object() || !j.contains("kind")) {
    throw ParseError("channel descriptor needs a \"kind\" field");
  }
  out.kind = j.at("kind").get<std::string>();
  if (out.kind != "pure" && out.kind != "depolarizing" && out.kind != "erasure") {
    throw ParseError("channel kind must be pure, depolarizing or erasure, got " + out.kind);
  }
  if (j.contains("n_qubits")) out.n_qubits = j.at("n_qubits").get<int>();
  if (out.n_qubits < 1) throw ParseError("n_qubits must be positive");
  if (out.kind == "depolarizing") {
    if (!j.contains("p")) throw ParseError("depolarizing channel needs \"p\"");
    out.param = j.at("p").get<double>();
  } else if (out.kind == "erasure") {
    if (!j.contains("epsilon")) throw ParseError("erasure channel needs \"epsilon\"");
    out.param = j.at("epsilon").get<double>();
  }
  if (out.param < 0.0 || out.param > 1.0) {
    throw ParseError("channel parameter outside [0, 1]");
  }
  if (j.contains("amplitudes")) {
    std::map<std::string, Vector> table;
    for (const auto& [label, vec] : j.at("amplitudes").items()) {
      table.emplace(label, vector_from_json(vec));
    }
    out.amplitudes = std::move(table);
  }
  return out;
}

CodeDescriptor parse_code_descriptor(const nlohmann::json& j) {
  CodeDescriptor out;
  if (!j.is_object() || !j.contains("kind")) {
    throw ParseError("code descriptor needs a \"kind\" field");
  }
  out.kind = j.at("kind").get<std::string>();
  if (out.kind == "bell") {
    if (!j.contains("M")) throw ParseError("bell code needs \"M\"");
    out.m = j.at("M").get<int>();
  } else if (out.kind == "explicit") {
    if (!j.contains("codewords")) throw ParseError("explicit code needs \"codewords\"");
    out.codewords = j.at("codewords").get<std::vector<std::string>>();
    out.m = static_cast<int>(out.codewords->size());
  } else {
    throw ParseError("code kind must be bell or explicit, got " + out.kind);
  }
  return out;
}

std::pair<Channel, Code> build_channel_code(const ChannelDescriptor& ch, const CodeDescriptor& cd) {
  Channel base = [&] {
    if (cd.kind == "bell") {
      try {
        return bell_code_n(ch.n_qubits, cd.m).first;
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
    if (!ch.amplitudes) {
      throw ParseError("explicit codes need an \"amplitudes\" table in the channel descriptor");
    }
    try {
      return pure_state_channel(*ch.amplitudes);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }();

  Code code = [&] {
    if (cd.kind == "bell") return bell_code_n(ch.n_qubits, cd.m).second;
    return Code(*cd.codewords);
  }();
  for (const auto& x : code.codewords) {
    if (base.outputs.find(x) == base.outputs.end()) {
      throw ParseError("codeword " + x + " is not in the channel alphabet");
    }
  }

  if (ch.kind == "depolarizing") return {depolarize(base, ch.param), std::move(code)};
  if (ch.kind == "erasure") return {erase(base, ch.param), std::move(code)};
  return {std::move(base), std::move(code)};
}

DensityOperator resolve_mu(const std::string& mu_spec, const ChannelDescriptor& ch,
                           const Channel& channel, const Code& code) {
  const Eigen::Index d = channel.output_dim();
  if (mu_spec == "mixed") {
    return DensityOperator(HermitianOperator(Matrix::Identity(d, d) / static_cast<double>(d)));
  }
  if (mu_spec == "average") {
    Matrix avg = Matrix::Zero(d, d);
    for (const auto& x : code.codewords) avg += channel.at(x).matrix();
    return DensityOperator(HermitianOperator(avg / static_cast<double>(code.size())));
  }
  if (mu_spec == "auto") {
    if (ch.kind == "erasure") {
      const Eigen::Index inner = d - 1;
      const double eps = ch.param;
      const double norm = static_cast<double>(inner) * (1.0 - eps) + eps;
      Matrix mu = Matrix::Zero(d, d);
      mu.topLeftCorner(inner, inner) = (1.0 - eps) / norm * Matrix::Identity(inner, inner);
      mu(d - 1, d - 1) = eps / norm;
      return DensityOperator(HermitianOperator(std::move(mu)));
    }
    return DensityOperator(HermitianOperator(Matrix::Identity(d, d) / static_cast<double>(d)));
  }
  // Inline JSON with a matrix.
  const nlohmann::json j = parse_json_text(mu_spec);
  if (!j.is_object() || !j.contains("matrix")) {
    throw ParseError("mu spec must be mixed, average, auto or {\"matrix\": ...}");
  }
  try {
    return DensityOperator(HermitianOperator(matrix_from_json(j.at("matrix"))));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("mu matrix invalid: ") + e.what());
  }
}

MaryProblem problem_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("states") || !j.contains("priors")) {
    throw ParseError("problem descriptor needs \"states\" and \"priors\"");
  }
  std::vector<DensityOperator> states;
  for (const auto& s : j.at("states")) {
    try {
      states.emplace_back(HermitianOperator(matrix_from_json(s)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("state invalid: ") + e.what());
    }
  }
  std::vector<double> priors = j.at("priors").get<std::vector<double>>();
  try {
    return MaryProblem(std::move(states), std::move(priors));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

nlohmann::json certificate_to_json(const QpCertificate& cert) {
  nlohmann::json j;
  j["schema"] = 1;
  j["status"] = to_string(cert.status);
  j["t_bar"] = round12(cert.t_bar);
  j["gap"] = round12(cert.gap);
  j["orthogonality_residual"] = round12(cert.orthogonality_residual);
  j["covering_margin"] = round12(cert.covering_margin);
  j["symmetric"] = cert.symmetric;
  j["max_f_deviation"] = round12(cert.max_f_deviation);
  j["mu"] = matrix_to_json(cert.mu.matrix());
  return j;
}

nlohmann::json povm_to_json(const Povm& povm) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : povm.elements) arr.push_back(matrix_to_json(e.matrix()));
  return arr;
}

nlohmann::json hykl_to_json(const HyklReport& report) {
  nlohmann::json j;
  j["passed"] = report.passed;
  j["tolerance"] = round12(report.tolerance);
  j["self_adjoint_residual"] = round12(report.self_adjoint_residual);
  nlohmann::json stat = nlohmann::json::array();
  for (double r : report.stationarity_residuals) stat.push_back(round12(r));
  j["stationarity_residuals"] = std::move(stat);
  nlohmann::json psd = nlohmann::json::array();
  for (double r : report.psd_residuals) psd.push_back(round12(r));
  j["psd_residuals"] = std::move(psd);
  return j;
}

}  // namespace cqmeta
