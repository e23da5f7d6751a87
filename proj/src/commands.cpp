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

#include "cqmeta/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "cqmeta/descriptors.hpp"
#include "cqmeta/quasi_perfect.hpp"

namespace cqmeta::commands {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

MaryProblem example1_problem() {
  Matrix tau1(2, 2), tau2(2, 2), tau3(2, 2), tau4(2, 2);
  tau1 << 1, 0, 0, 0;
  tau2 << 0.5, 0.5, 0.5, 0.5;
  tau3 << 0.5, -0.5, -0.5, 0.5;
  tau4 << 0.5, 0, 0, 0.5;
  std::vector<DensityOperator> states;
  states.emplace_back(HermitianOperator(tau1));
  states.emplace_back(HermitianOperator(tau2));
  states.emplace_back(HermitianOperator(tau3));
  states.emplace_back(HermitianOperator(tau4));
  return MaryProblem(std::move(states), {0.4, 0.2, 0.2, 0.2});
}

int thread_cap() {
  if (const char* env = std::getenv("CQMETA_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int run_example1(std::ostream& out, double tolerance) {
  MaryProblem problem = example1_problem();
  SolveResult solved = solve_optimal_povm(problem, tolerance);
  if (!solved.report.passed) {
    out << "solver failed to certify optimality after " << solved.iterations << " iterations\n";
    return kNoConvergence;
  }
  const double eps_star = error_probability(problem, solved.povm);
  const Mu0Result mu0 = mu0_star(problem, solved.povm);

  Matrix avg(2, 2);
  avg << 0.7, 0, 0, 0.3;
  const DensityOperator mu_avg{HermitianOperator(avg)};

  out << "epsilon_star = " << fmt(eps_star) << "\n";
  out << "c0_star = " << fmt(mu0.c0) << "\n";
  out << "mu0_star = [[" << fmt(mu0.mu0.matrix()(0, 0).real()) << ", "
      << fmt(mu0.mu0.matrix()(0, 1).real()) << "], [" << fmt(mu0.mu0.matrix()(1, 0).real()) << ", "
      << fmt(mu0.mu0.matrix()(1, 1).real()) << "]]\n";
  out << "solver_iterations = " << solved.iterations << "\n";
  out << "alpha_mu0_star = " << fmt(binary_test_bound(problem, mu0.mu0)) << "\n";
  out << "alpha_avg_state = " << fmt(binary_test_bound(problem, mu_avg)) << "\n";
  out << "tight_spectrum_mu0_star = " << fmt(tight_spectrum_max(problem, mu0.mu0)) << "\n";
  out << "tight_spectrum_avg_state = " << fmt(tight_spectrum_max(problem, mu_avg)) << "\n";
  return kOk;
}

int run_figure1(int t_steps, std::ostream& out, const std::string& format) {
  if (t_steps < 2 || (format != "csv" && format != "json")) return kInputError;
  MaryProblem problem = example1_problem();
  SolveResult solved = solve_optimal_povm(problem, 1e-10);
  if (!solved.report.passed) return kNoConvergence;
  const DensityOperator mu_star = mu0_star(problem, solved.povm).mu0;
  Matrix avg(2, 2);
  avg << 0.7, 0, 0, 0.3;
  const DensityOperator mu_avg{HermitianOperator(avg)};

  std::set<double> ts;
  const double t_max = 1.2;
  for (int i = 0; i < t_steps; ++i) {
    ts.insert(t_max * static_cast<double>(i) / static_cast<double>(t_steps - 1));
  }
  for (const auto& mu : {mu_star, mu_avg}) {
    for (int i = 0; i < problem.size(); ++i) {
      const Matrix scaled =
          problem.priors[static_cast<size_t>(i)] * problem.states[static_cast<size_t>(i)].matrix();
      for (double bp : pencil_breakpoints(scaled, mu.matrix())) {
        if (bp <= t_max) ts.insert(round12(bp));
      }
    }
  }

  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (double t : ts) {
      rows.push_back({{"t", round12(t)},
                      {"objective_mu0star", round12(tight_spectrum_objective(problem, mu_star, t))},
                      {"objective_mu0avg", round12(tight_spectrum_objective(problem, mu_avg, t))}});
    }
    out << nlohmann::json{{"schema", 1}, {"rows", std::move(rows)}}.dump(2) << "\n";
    return kOk;
  }
  out << "t,objective_mu0star,objective_mu0avg\n";
  for (double t : ts) {
    out << fmt(t) << "," << fmt(tight_spectrum_objective(problem, mu_star, t)) << ","
        << fmt(tight_spectrum_objective(problem, mu_avg, t)) << "\n";
  }
  return kOk;
}

int run_bell_sweep(const std::string& family, int n_qubits, const std::vector<int>& m_list,
                   const std::vector<double>& params, std::ostream& out,
                   const std::string& format) {
  if (family != "ideal" && family != "depolarizing" && family != "erasure") {
    return kInputError;
  }
  if (format != "csv" && format != "json") return kInputError;
  const std::vector<double> effective_params = family == "ideal" ? std::vector<double>{0.0} : params;
  if (effective_params.empty() || m_list.empty()) return kInputError;

  struct Row {
    int m = 0;
    double param = 0.0;
    bool valid = false;
    std::string error;
    double pe_solver = 0.0, pe_formula = 0.0, mc = 0.0, alpha_single = 0.0, deviation = 0.0;
    std::string status;
  };

  std::vector<std::pair<int, double>> jobs;
  for (int m : m_list) {
    for (double p : effective_params) jobs.emplace_back(m, p);
  }

  auto compute = [&](std::pair<int, double> job) {
    Row row;
    row.m = job.first;
    row.param = job.second;
    try {
      auto [base, code] = bell_code_n(n_qubits, row.m);
      Channel channel = family == "depolarizing" ? depolarize(base, row.param)
                        : family == "erasure"    ? erase(base, row.param)
                                                 : std::move(base);
      ChannelDescriptor desc;
      desc.kind = family == "ideal" ? "pure" : family;
      desc.n_qubits = n_qubits;
      desc.param = row.param;
      const DensityOperator mu = resolve_mu("auto", desc, channel, code);

      const QpCertificate cert = certify(channel, code, mu);
      row.status = to_string(cert.status);
      row.pe_solver = pe_of_code(channel, code, 1e-9).pe;
      row.pe_formula = qp_error_probability(channel, code, cert.t_bar, mu);
      row.mc = meta_converse(channel, induced_distribution(channel, code), code.size(), mu);
      row.alpha_single =
          alpha_beta(channel.at(code.codewords.front()), mu, 1.0 / row.m).value;
      row.deviation = std::max({std::abs(row.pe_solver - row.pe_formula),
                                std::abs(row.pe_solver - row.mc),
                                std::abs(row.pe_solver - row.alpha_single)});
      row.valid = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  };

  // Rows run concurrently (capped by CQMETA_THREADS) and print in job order.
  std::vector<Row> rows(jobs.size());
  const int cap = thread_cap();
  for (size_t begin = 0; begin < jobs.size(); begin += static_cast<size_t>(cap)) {
    const size_t end = std::min(jobs.size(), begin + static_cast<size_t>(cap));
    std::vector<std::future<Row>> batch;
    for (size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, compute, jobs[i]));
    }
    for (size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
  }

  bool any_error = false;
  if (format == "json") {
    nlohmann::json jrows = nlohmann::json::array();
    for (const Row& row : rows) {
      if (!row.valid) {
        any_error = true;
        jrows.push_back({{"family", family}, {"n_qubits", n_qubits}, {"M", row.m},
                         {"param", round12(row.param)}, {"error", row.error}});
        continue;
      }
      jrows.push_back({{"family", family},
                       {"n_qubits", n_qubits},
                       {"M", row.m},
                       {"param", round12(row.param)},
                       {"pe_solver", round12(row.pe_solver)},
                       {"pe_formula", round12(row.pe_formula)},
                       {"meta_converse", round12(row.mc)},
                       {"alpha_single", round12(row.alpha_single)},
                       {"status", row.status},
                       {"max_deviation", round12(row.deviation)}});
    }
    out << nlohmann::json{{"schema", 1}, {"rows", std::move(jrows)}}.dump(2) << "\n";
    return any_error ? kInputError : kOk;
  }

  out << "family,n_qubits,M,param,pe_solver,pe_formula,meta_converse,alpha_single,status,"
         "max_deviation\n";
  for (const Row& row : rows) {
    if (!row.valid) {
      any_error = true;
      out << family << "," << n_qubits << "," << row.m << "," << fmt(row.param)
          << ",error,error,error,error,error," << row.error << "\n";
      continue;
    }
    out << family << "," << n_qubits << "," << row.m << "," << fmt(row.param) << ","
        << fmt(round12(row.pe_solver)) << "," << fmt(round12(row.pe_formula)) << ","
        << fmt(round12(row.mc)) << "," << fmt(round12(row.alpha_single)) << "," << row.status << ","
        << fmt(round12(row.deviation)) << "\n";
  }
  return any_error ? kInputError : kOk;
}

int run_certify(const std::string& channel_json, const std::string& code_json,
                const std::string& mu_spec, std::ostream& out) {
  const ChannelDescriptor ch = parse_channel_descriptor(parse_json_text(channel_json));
  const CodeDescriptor cd = parse_code_descriptor(parse_json_text(code_json));
  auto [channel, code] = build_channel_code(ch, cd);
  const DensityOperator mu = resolve_mu(mu_spec, ch, channel, code);
  const QpCertificate cert = certify(channel, code, mu);
  out << certificate_to_json(cert).dump(2) << "\n";
  return cert.status == CodeStatus::neither ? kNegative : kOk;
}

int run_solve(const std::string& problem_json, std::ostream& out, double tolerance) {
  const MaryProblem problem = problem_from_json(parse_json_text(problem_json));
  SolveResult solved = solve_optimal_povm(problem, tolerance);
  nlohmann::json j;
  j["schema"] = 1;
  j["epsilon"] = round12(error_probability(problem, solved.povm));
  j["iterations"] = solved.iterations;
  j["hykl"] = hykl_to_json(solved.report);
  j["povm"] = povm_to_json(solved.povm);
  out << j.dump(2) << "\n";
  return solved.report.passed ? kOk : kNoConvergence;
}

}  // namespace cqmeta::commands
