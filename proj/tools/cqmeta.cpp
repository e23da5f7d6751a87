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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cqmeta/commands.hpp"
#include "cqmeta/descriptors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw cqmeta::ParseError("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to --out when given, stdout otherwise.
struct Sink {
  std::string path;
  std::ofstream file;

  std::ostream& open() {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw cqmeta::ParseError("cannot write " + path);
    return file;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-blocklength quantities for classical-quantum channel coding:\n"
               "optimal binary/M-ary tests, meta-converse bounds and quasi-perfect-code\n"
               "certificates."};
  app.require_subcommand(1);

  Sink sink;
  app.add_option("--out", sink.path, "Output file (default: stdout)")->capture_default_str();

  double tol = 1e-8;
  app.add_option("--tol", tol, "Solver/certificate tolerance")->capture_default_str();

  std::string format = "csv";
  app.add_option("--format", format, "csv | json (figure1 and bell-sweep)")
      ->capture_default_str();

  auto* example1 = app.add_subcommand(
      "example1", "Solve the four-state qubit testing problem and print epsilon*, mu0* and the "
                  "exact/relaxed characterizations");

  int t_steps = 121;
  auto* figure1 = app.add_subcommand(
      "figure1", "CSV columns t,objective_mu0star,objective_mu0avg of the threshold objective on "
                 "[0, 1.2] plus breakpoints");
  figure1->add_option("--steps", t_steps, "Grid points on [0, 1.2]")->capture_default_str();

  std::string family = "ideal";
  int n_qubits = 2;
  std::vector<int> m_list{4, 8};
  std::string grid;
  auto* sweep = app.add_subcommand(
      "bell-sweep",
      "Sweep over Bell codes; columns family,n_qubits,M,param,pe_solver,pe_formula,"
      "meta_converse,alpha_single,status,max_deviation");
  sweep->add_option("--family", family, "ideal | depolarizing | erasure")->capture_default_str();
  sweep->add_option("--n-qubits", n_qubits, "Number of qubits N")->capture_default_str();
  sweep->add_option("--M", m_list, "Cardinalities (multiples of 2^{N-1}, at least 2^N)")
      ->capture_default_str();
  sweep->add_option("--grid", grid, "Parameter grid start,stop,steps (noise parameter)");

  std::string channel_path, code_path, mu_spec = "auto";
  auto* certify = app.add_subcommand(
      "certify", "Certify a channel/code descriptor pair: packing radius, optimality gap and "
                 "perfect/quasi-perfect status as JSON");
  certify->add_option("--channel", channel_path, "Channel descriptor JSON file")->required();
  certify->add_option("--code", code_path, "Code descriptor JSON file")->required();
  certify->add_option("--mu", mu_spec, "mixed | average | auto | {\"matrix\": ...}")
      ->capture_default_str();

  std::string problem_path;
  auto* solve = app.add_subcommand(
      "solve", "Solve a discrimination problem file ({\"states\": ..., \"priors\": ...}) and emit "
               "the certified POVM as JSON");
  solve->add_option("--problem", problem_path, "Problem JSON file")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(example1)) {
      return cqmeta::commands::run_example1(sink.open());
    }
    if (app.got_subcommand(figure1)) {
      return cqmeta::commands::run_figure1(t_steps, sink.open(), format);
    }
    if (app.got_subcommand(sweep)) {
      std::vector<double> params;
      if (grid.empty()) {
        params = {0.0};
      } else {
        double start = 0.0, stop = 0.0;
        int steps = 0;
        if (std::sscanf(grid.c_str(), "%lf,%lf,%d", &start, &stop, &steps) != 3 || steps < 1) {
          std::cerr << "bad --grid, expected start,stop,steps\n";
          return cqmeta::commands::kInputError;
        }
        for (int i = 0; i < steps; ++i) {
          params.push_back(steps == 1 ? start
                                      : start + (stop - start) * i / static_cast<double>(steps - 1));
        }
      }
      return cqmeta::commands::run_bell_sweep(family, n_qubits, m_list, params, sink.open(),
                                              format);
    }
    if (app.got_subcommand(certify)) {
      return cqmeta::commands::run_certify(read_file(channel_path), read_file(code_path), mu_spec,
                                           sink.open());
    }
    if (app.got_subcommand(solve)) {
      return cqmeta::commands::run_solve(read_file(problem_path), sink.open(), tol);
    }
  } catch (const cqmeta::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return cqmeta::commands::kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return cqmeta::commands::kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cqmeta::commands::kNoConvergence;
  }
  return cqmeta::commands::kInputError;
}
