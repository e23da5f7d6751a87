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
//
// Acceptance suite: every criterion prints exactly one PASS/FAIL line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cqmeta/quasi_perfect.hpp"

using namespace cqmeta;

namespace {

struct CriterionFailure {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw CriterionFailure{message};
}

void require_near(double value, double expected, double tol, const std::string& label) {
  if (!(std::abs(value - expected) <= tol)) {
    std::ostringstream os;
    os << label << " = " << value << " vs " << expected << " (tol " << tol << ")";
    throw CriterionFailure{os.str()};
  }
}

std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

Matrix random_ginibre(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return g;
}

DensityOperator random_density(std::mt19937_64& rng, Eigen::Index n) {
  Matrix rho = random_ginibre(rng, n);
  rho = rho * rho.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(HermitianOperator(std::move(rho)));
}

DensityOperator random_diagonal_density(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Matrix rho = Matrix::Zero(n, n);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    rho(i, i) = unif(rng);
    sum += rho(i, i).real();
  }
  rho /= sum;
  return DensityOperator(HermitianOperator(std::move(rho)));
}

std::vector<double> random_priors(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<double> p(static_cast<size_t>(m));
  double sum = 0.0;
  for (double& v : p) sum += (v = unif(rng));
  double acc = 0.0;
  for (size_t i = 0; i + 1 < p.size(); ++i) acc += (p[i] /= sum);
  p.back() = 1.0 - acc;
  return p;
}

MaryProblem example1_problem() {
  Matrix tau1(2, 2), tau2(2, 2), tau3(2, 2), tau4(2, 2);
  tau1 << 1, 0, 0, 0;
  tau2 << 0.5, 0.5, 0.5, 0.5;
  tau3 << 0.5, -0.5, -0.5, 0.5;
  tau4 << 0.5, 0, 0, 0.5;
  std::vector<DensityOperator> states{
      DensityOperator(tau1), DensityOperator(tau2), DensityOperator(tau3), DensityOperator(tau4)};
  return MaryProblem(std::move(states), {0.4, 0.2, 0.2, 0.2});
}

DensityOperator maximally_mixed(Eigen::Index d) {
  return DensityOperator(HermitianOperator(Matrix::Identity(d, d) / static_cast<double>(d)));
}

DensityOperator erasure_mu0(int n_qubits, double eps) {
  const Eigen::Index inner = Eigen::Index{1} << n_qubits;
  const double norm = static_cast<double>(inner) * (1.0 - eps) + eps;
  Matrix mu = Matrix::Zero(inner + 1, inner + 1);
  mu.topLeftCorner(inner, inner) = (1.0 - eps) / norm * Matrix::Identity(inner, inner);
  mu(inner, inner) = eps / norm;
  return DensityOperator(HermitianOperator(std::move(mu)));
}

// Classical randomized likelihood-ratio oracle for diagonal pairs.
double classical_np_alpha(const Eigen::VectorXd& p0, const Eigen::VectorXd& p1, double beta) {
  struct Entry {
    double ratio, w0, w1;
  };
  std::vector<Entry> entries;
  for (Eigen::Index i = 0; i < p0.size(); ++i) {
    if (p0[i] <= 0.0 && p1[i] <= 0.0) continue;
    const double ratio =
        p1[i] > 0.0 ? p0[i] / p1[i] : std::numeric_limits<double>::infinity();
    entries.push_back({ratio, p0[i], p1[i]});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.ratio > b.ratio; });
  double used = 0.0, gained = 0.0;
  for (const Entry& e : entries) {
    if (used + e.w1 <= beta + 1e-15) {
      used += e.w1;
      gained += e.w0;
    } else {
      if (e.w1 > 0.0) gained += (beta - used) / e.w1 * e.w0;
      break;
    }
  }
  return 1.0 - gained;
}

struct BellFamilyCase {
  std::string family;
  int n_qubits;
  int m;
  double param;
};

double closed_form_pe(const BellFamilyCase& c) {
  const double dim = std::pow(2.0, c.n_qubits);
  if (c.family == "ideal") return 1.0 - dim / c.m;
  if (c.family == "depolarizing") return 1.0 - (dim * (1.0 - c.param) + c.param) / c.m;
  return 1.0 - (dim * (1.0 - c.param) + c.param) / c.m;  // erasure shares the form
}

void check_bell_case(const BellFamilyCase& c, double value_tol) {
  auto [base, code] = bell_code_n(c.n_qubits, c.m);
  const Channel channel = c.family == "depolarizing" ? depolarize(base, c.param)
                          : c.family == "erasure"    ? erase(base, c.param)
                                                     : std::move(base);
  const DensityOperator mu = c.family == "erasure"
                                 ? erasure_mu0(c.n_qubits, c.param)
                                 : maximally_mixed(Eigen::Index{1} << c.n_qubits);
  const double expected = closed_form_pe(c);
  std::ostringstream tag;
  tag << c.family << " N=" << c.n_qubits << " M=" << c.m << " param=" << c.param;

  const QpCertificate cert = certify(channel, code, mu);
  require(cert.status != CodeStatus::neither, tag.str() + ": certificate status neither");
  if (c.family == "ideal" && c.m == 4 && c.n_qubits == 2) {
    require(cert.status == CodeStatus::perfect, tag.str() + ": expected perfect status");
  }

  require_near(pe_of_code(channel, code, 1e-9).pe, expected, value_tol, tag.str() + " pe_of_code");
  require_near(qp_error_probability(channel, code, cert.t_bar, mu), expected, value_tol,
               tag.str() + " qp_error_probability");
  require_near(meta_converse(channel, induced_distribution(channel, code), c.m, mu), expected,
               value_tol, tag.str() + " meta_converse");
  require_near(alpha_beta(channel.at(code.codewords.front()), mu, 1.0 / c.m).value, expected,
               value_tol, tag.str() + " alpha_single");
}

// Bell code with the first codeword phase shifted.
std::pair<Channel, Code> perturbed_bell8(double phase_shift) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::map<std::string, Vector> amps;
  std::vector<std::string> words;
  for (int k = 0; k < 4; ++k) {
    const double phi = 2.0 * M_PI * k / 4.0;
    for (int variant = 0; variant < 2; ++variant) {
      const int m = 1 + variant + 2 * k;
      Vector v = Vector::Zero(4);
      const double phase = (m == 1) ? phi + phase_shift : phi;
      if (variant == 0) {
        v[0] = inv_sqrt2;
        v[3] = std::polar(inv_sqrt2, phase);
      } else {
        v[1] = inv_sqrt2;
        v[2] = std::polar(inv_sqrt2, phase);
      }
      amps.emplace("x" + std::to_string(m), std::move(v));
    }
  }
  for (int m = 1; m <= 8; ++m) words.push_back("x" + std::to_string(m));
  return {pure_state_channel(amps), Code(std::move(words))};
}

bool run_criterion(int id, const std::string& name,
                   const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const CriterionFailure& f) {
    ok = false;
    detail = f.message;
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%d] %s %s: %s (%.2f s)\n", id, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
              seconds);
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  int failures = 0;

  failures += !run_criterion(1, "Example 1 exactness", [] {
    const auto start = std::chrono::steady_clock::now();
    const MaryProblem problem = example1_problem();
    const SolveResult solved = solve_optimal_povm(problem, 1e-10);
    require(solved.report.passed, "solver did not certify");
    const double eps = error_probability(problem, solved.povm);
    require_near(eps, 7.0 / 15.0, 1e-8, "epsilon_star");
    const Mu0Result mu0 = mu0_star(problem, solved.povm);
    Matrix expected(2, 2);
    expected << 0.75, 0, 0, 0.25;
    require((mu0.mu0.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-8, "mu0_star entries");
    require_near(binary_test_bound(problem, mu0.mu0), 7.0 / 15.0, 1e-8, "binary_test_bound(mu0_star)");
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(seconds < 1.0, "runtime exceeded 1 s");
    std::ostringstream os;
    os << "epsilon=" << eps << ", iterations=" << solved.iterations;
    return os.str();
  });

  failures += !run_criterion(2, "Example 1 suboptimal auxiliary state", [] {
    const MaryProblem problem = example1_problem();
    Matrix avg(2, 2);
    avg << 0.7, 0, 0, 0.3;
    const DensityOperator mu{HermitianOperator(avg)};
    const double alpha = binary_test_bound(problem, mu);
    require(alpha >= 0.4566 && alpha <= 0.4576, "binary_test_bound(avg) = " + std::to_string(alpha));
    const double spectrum = tight_spectrum_max(problem, mu);
    require(spectrum >= 0.4280 && spectrum <= 0.4290,
            "tight_spectrum_max(avg) = " + std::to_string(spectrum));
    std::ostringstream os;
    os << "alpha=" << alpha << ", tight_spectrum=" << spectrum;
    return os.str();
  });

  failures += !run_criterion(3, "Propositions 1-3 (N=2)", [] {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<int> ms{4, 6, 8, 16};
    const std::vector<double> params{0.0, 0.1, 0.3, 0.5, 0.9};
    int cases = 0;
    for (int m : ms) {
      check_bell_case({"ideal", 2, m, 0.0}, 1e-7);
      ++cases;
      for (double p : params) {
        check_bell_case({"depolarizing", 2, m, p}, 1e-7);
        check_bell_case({"erasure", 2, m, p}, 1e-7);
        cases += 2;
      }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(seconds < 30.0, "runtime exceeded 30 s");
    std::ostringstream os;
    os << cases << " cases within 1e-7";
    return os.str();
  });

  failures += !run_criterion(4, "Propositions 4-6 (N=3, N=4)", [] {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> params{0.0, 0.1, 0.3, 0.5, 0.9};
    int cases = 0;
    auto sweep = [&](int n_qubits, const std::vector<int>& ms) {
      for (int m : ms) {
        check_bell_case({"ideal", n_qubits, m, 0.0}, 1e-7);
        ++cases;
        for (double p : params) {
          check_bell_case({"depolarizing", n_qubits, m, p}, 1e-7);
          check_bell_case({"erasure", n_qubits, m, p}, 1e-7);
          cases += 2;
        }
      }
    };
    sweep(3, {8, 16, 24});
    sweep(4, {16, 32});
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(seconds < 120.0, "runtime exceeded 2 min");
    std::ostringstream os;
    os << cases << " cases within 1e-7";
    return os.str();
  });

  failures += !run_criterion(5, "Gap formula on a perturbed Bell code", [] {
    auto [channel, code] = perturbed_bell8(0.1);
    const DensityOperator mu = maximally_mixed(4);
    const double t_bar = packing_radius(channel, code, mu);
    const GapResult gap = optimality_gap(channel, code, mu, t_bar);
    require(gap.partition.available, "residual partition unavailable");
    const double eps_sum =
        std::accumulate(gap.partition.eps_min.begin(), gap.partition.eps_min.end(), 0.0);
    const double formula = qp_error_probability(channel, code, t_bar, mu);
    const double pe = pe_of_code(channel, code, 1e-9).pe;
    std::ostringstream os;
    os << "pe=" << pe << ", formula=" << formula << ", eps_sum/M=" << eps_sum / 8.0
       << ", gap=" << gap.gap;
    require_near(pe, formula + eps_sum / 8.0, 1e-6, "pe vs formula + (1/M) sum eps_i");
    require(pe > formula + 1e-9, "pe does not exceed the bare formula strictly");
    return os.str();
  });

  failures += !run_criterion(6, "Property suites", [] {
    // (a) classical oracle for commuting pairs, 200 seeds at 1e-10
    {
      auto rng = make_rng(20260810);
      for (int seed = 0; seed < 200; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
        const DensityOperator rho0 = random_diagonal_density(rng, n);
        const DensityOperator rho1 = random_diagonal_density(rng, n);
        Eigen::VectorXd p0(n), p1(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          p0[i] = rho0.matrix()(i, i).real();
          p1[i] = rho1.matrix()(i, i).real();
        }
        for (double beta : {0.01, 0.1, 0.25, 0.5}) {
          require_near(alpha_beta(rho0, rho1, beta).value, classical_np_alpha(p0, p1, beta), 1e-10,
                       "oracle seed " + std::to_string(seed));
        }
      }
    }
    // (b) weak duality, 100 seeds at 1e-8
    {
      auto rng = make_rng(606);
      for (int seed = 0; seed < 100; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 3);
        const int m = 2 + seed % 4;
        std::vector<DensityOperator> states;
        for (int i = 0; i < m; ++i) states.push_back(random_density(rng, n));
        const MaryProblem problem(std::move(states), random_priors(rng, m));
        const DensityOperator mu0 = random_density(rng, n);
        const SolveResult solved = solve_optimal_povm(problem, 1e-9);
        require(solved.report.passed, "solver failed on duality seed " + std::to_string(seed));
        require(binary_test_bound(problem, mu0) <=
                    error_probability(problem, solved.povm) + 1e-8,
                "weak duality violated at seed " + std::to_string(seed));
      }
    }
    // (c) block-test decomposition equals the joint test, 100 seeds at 1e-8
    {
      auto rng = make_rng(23);
      for (int seed = 0; seed < 100; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 3);
        const int inputs = 2 + seed % 3;
        std::map<std::string, DensityOperator> outputs;
        std::map<std::string, double> weights;
        const auto priors = random_priors(rng, inputs);
        for (int i = 0; i < inputs; ++i) {
          const std::string label = "x" + std::to_string(i + 1);
          outputs.emplace(label, random_density(rng, n));
          weights[label] = priors[static_cast<size_t>(i)];
        }
        const Channel channel{std::move(outputs)};
        const InputDistribution p{std::move(weights)};
        const DensityOperator mu = random_density(rng, n);
        const double beta = 0.05 + 0.5 * (seed % 5) / 5.0;
        // decompose_block_test throws if the decomposition drifts from the joint
        // alpha by more than 1e-8.
        const auto res = decompose_block_test(channel, p, mu, beta);
        const DensityOperator pw = pw_operator(p, channel);
        const DensityOperator pmu = p_tensor_mu(p, channel, mu);
        require_near(res.value, alpha_beta(pw, pmu, beta).value, 1e-8,
                     "block decomposition seed " + std::to_string(seed));
      }
    }
    // (d) sup form equals alpha_beta on breakpoint grids, 200 seeds at 1e-8
    {
      auto rng = make_rng(4242);
      for (int seed = 0; seed < 200; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
        const DensityOperator rho0 = random_density(rng, n);
        const DensityOperator rho1 = random_density(rng, n);
        const double beta = 0.05 + 0.9 * (seed % 7) / 7.0;
        const auto res = alpha_beta(rho0, rho1, beta);
        require_near(alpha_sup_form(rho0, rho1, beta, {0.0, res.test.threshold}), res.value, 1e-8,
                     "sup-form seed " + std::to_string(seed));
      }
    }
    // (e) HYKL is certifying: solver outputs pass, measurably suboptimal
    //     measurements fail
    {
      auto rng = make_rng(909);
      int rejected = 0;
      for (int seed = 0; seed < 25; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 3);
        const int m = 2 + seed % 3;
        std::vector<DensityOperator> states;
        for (int i = 0; i < m; ++i) states.push_back(random_density(rng, n));
        const MaryProblem problem(std::move(states), random_priors(rng, m));
        const SolveResult solved = solve_optimal_povm(problem, 1e-9);
        require(solved.report.passed, "solver output failed HYKL at seed " + std::to_string(seed));
        const double eps_star = error_probability(problem, solved.povm);

        // Mix the optimal measurement toward a blind one until the error
        // probability exceeds the optimum by more than 1e-4.
        for (double mix : {0.01, 0.05, 0.2, 0.6}) {
          std::vector<HermitianOperator> elems;
          for (const auto& e : solved.povm.elements) {
            elems.emplace_back((1.0 - mix) * e.matrix() +
                               mix * Matrix::Identity(n, n) / static_cast<double>(m));
          }
          const Povm perturbed(std::move(elems));
          if (error_probability(problem, perturbed) > eps_star + 1e-4) {
            require(!hykl_verify(problem, perturbed, 1e-8).passed,
                    "suboptimal measurement passed HYKL at seed " + std::to_string(seed));
            ++rejected;
          }
        }
      }
      require(rejected > 25, "too few perturbed measurements exercised");
    }
    return std::string("oracle/duality/decomposition/sup-form/HYKL suites all within bounds");
  });

  failures += !run_criterion(7, "Example 2 negative case", [] {
    std::map<std::string, Vector> amps;
    for (int i = 0; i < 3; ++i) {
      Vector v = Vector::Zero(4);
      v[i] = 1.0;
      amps.emplace("x" + std::to_string(i + 1), std::move(v));
    }
    const Channel channel = pure_state_channel(amps);
    const Code code({"x1", "x2", "x3"});
    const DensityOperator mu = maximally_mixed(4);
    const QpCertificate cert = certify(channel, code, mu);
    require(cert.status == CodeStatus::neither, "status is " + to_string(cert.status));
    const double mc = meta_converse(channel, induced_distribution(channel, code), 3, mu);
    require_near(mc, 0.0, 1e-10, "meta-converse clamp");
    const double pe = pe_of_code(channel, code).pe;
    require_near(pe, 0.0, 1e-9, "pe");
    std::ostringstream os;
    os << "status=neither, meta_converse=" << mc << ", pe=" << pe << ", gap=" << cert.gap;
    return os.str();
  });

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
