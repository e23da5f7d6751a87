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

#include <doctest.h>

#include "cqmeta/hermitian.hpp"
#include "test_util.hpp"

using namespace cqmeta;

namespace {

Matrix diag2(double a, double b) {
  Matrix m(2, 2);
  m << a, 0, 0, b;
  return m;
}

}  // namespace

TEST_CASE("spectral decomposition of simple operators") {
  SUBCASE("diagonal") {
    const auto sd = spectral_decompose(HermitianOperator(diag2(1.0, -1.0)));
    REQUIRE(sd.eigenvalues.size() == 2);
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(sd.eigenvalues[1] == doctest::Approx(-1.0));
    CHECK((sd.eigenprojectors[0].matrix() - diag2(1, 0)).norm() < 1e-12);
    CHECK((sd.eigenprojectors[1].matrix() - diag2(0, 1)).norm() < 1e-12);
  }
  SUBCASE("Pauli X") {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const auto sd = spectral_decompose(HermitianOperator(x));
    REQUIRE(sd.eigenvalues.size() == 2);
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(sd.eigenvalues[1] == doctest::Approx(-1.0));
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK((sd.eigenprojectors[0].matrix() - plus).norm() < 1e-12);
  }
  SUBCASE("fully degenerate identity clusters into one projector") {
    const auto sd = spectral_decompose(HermitianOperator(Matrix::Identity(4, 4)));
    REQUIRE(sd.eigenvalues.size() == 1);
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(sd.multiplicities[0] == 4);
    CHECK((sd.eigenprojectors[0].matrix() - Matrix::Identity(4, 4)).norm() < 1e-12);
  }
  SUBCASE("non-Hermitian input is rejected") {
    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(HermitianOperator{bad}, std::invalid_argument);
  }
}

TEST_CASE("eigenspace projector modes") {
  const HermitianOperator a{Matrix((Matrix(3, 3) << 2, 0, 0, 0, 0, 0, 0, 0, -1).finished())};
  CHECK((eigenspace_projector(a, EigenspaceMode::strict_pos).matrix() -
         (Matrix(3, 3) << 1, 0, 0, 0, 0, 0, 0, 0, 0).finished())
            .norm() < 1e-12);
  CHECK((eigenspace_projector(a, EigenspaceMode::nonneg).matrix() -
         (Matrix(3, 3) << 1, 0, 0, 0, 1, 0, 0, 0, 0).finished())
            .norm() < 1e-12);

  SUBCASE("difference of Example 1 states") {
    const HermitianOperator diff{diag2(0.5, -0.5)};  // tau1 - tau4
    const Projector pos = eigenspace_projector(diff, EigenspaceMode::strict_pos);
    CHECK(pos.rank() == 1);
    CHECK(trace_pair(diff, pos.base()) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("trace pair") {
  const HermitianOperator eye{Matrix::Identity(2, 2)};
  const HermitianOperator half{0.5 * Matrix::Identity(2, 2)};
  CHECK(trace_pair(eye, half) == doctest::Approx(1.0));

  Matrix tau2(2, 2), tau3(2, 2);
  tau2 << 0.5, 0.5, 0.5, 0.5;
  tau3 << 0.5, -0.5, -0.5, 0.5;
  CHECK(trace_pair(HermitianOperator(tau2), HermitianOperator(tau3)) ==
        doctest::Approx(0.0).epsilon(1e-14));

  Matrix pi1(2, 2);
  pi1 << 8.0 / 9.0, 0, 0, 0;
  Matrix tau1 = diag2(1, 0);
  CHECK(trace_pair(HermitianOperator(tau1), HermitianOperator(pi1)) ==
        doctest::Approx(8.0 / 9.0).epsilon(1e-14));

  CHECK_THROWS_AS(trace_pair(eye, HermitianOperator(Matrix::Identity(3, 3))),
                  std::invalid_argument);
}

TEST_CASE("tensor and block_diag") {
  const HermitianOperator eye2{Matrix::Identity(2, 2)};
  CHECK((tensor(eye2, eye2).matrix() - Matrix::Identity(4, 4)).norm() < 1e-15);
  CHECK(tensor(eye2, eye2).trace() == doctest::Approx(4.0));

  const HermitianOperator one{Matrix::Constant(1, 1, Complex(1, 0))};
  const HermitianOperator two{Matrix::Constant(1, 1, Complex(2, 0))};
  CHECK((block_diag({one, two}).matrix() - diag2(1, 2)).norm() < 1e-15);
  CHECK_THROWS_AS(block_diag({}), std::invalid_argument);

  SUBCASE("Example 1 block operator has unit trace") {
    Matrix tau1 = diag2(1, 0), tau4 = diag2(0.5, 0.5);
    Matrix tau2(2, 2), tau3(2, 2);
    tau2 << 0.5, 0.5, 0.5, 0.5;
    tau3 << 0.5, -0.5, -0.5, 0.5;
    const HermitianOperator t = block_diag({HermitianOperator(0.4 * tau1),
                                            HermitianOperator(0.2 * tau2),
                                            HermitianOperator(0.2 * tau3),
                                            HermitianOperator(0.2 * tau4)});
    CHECK(t.dim() == 8);
    CHECK(t.trace() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("reconstruction and partition properties on random operators") {
  std::mt19937_64 rng(20260810);
  for (int seed = 0; seed < 1000; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 7);  // dims 2..8
    const HermitianOperator a = testing::random_hermitian(rng, n);

    const auto sd = spectral_decompose(a);
    Matrix recon = Matrix::Zero(n, n);
    Matrix proj_sum = Matrix::Zero(n, n);
    for (size_t k = 0; k < sd.eigenvalues.size(); ++k) {
      recon += sd.eigenvalues[k] * sd.eigenprojectors[k].matrix();
      proj_sum += sd.eigenprojectors[k].matrix();
    }
    CHECK((recon - a.matrix()).norm() <= 1e-9 * a.matrix().norm());
    CHECK((proj_sum - Matrix::Identity(n, n)).norm() <= 1e-9);
    for (size_t i = 0; i < sd.eigenprojectors.size(); ++i) {
      for (size_t j = i + 1; j < sd.eigenprojectors.size(); ++j) {
        CHECK((sd.eigenprojectors[i].matrix() * sd.eigenprojectors[j].matrix()).norm() <= 1e-9);
      }
    }

    const Projector strict_pos = eigenspace_projector(a, EigenspaceMode::strict_pos);
    const Projector nonpos = eigenspace_projector(a, EigenspaceMode::nonpos);
    const Projector nonneg = eigenspace_projector(a, EigenspaceMode::nonneg);
    const Projector strict_neg = eigenspace_projector(a, EigenspaceMode::strict_neg);
    CHECK((strict_pos.matrix() + nonpos.matrix() - Matrix::Identity(n, n)).norm() <= 1e-10);
    CHECK((nonneg.matrix() + strict_neg.matrix() - Matrix::Identity(n, n)).norm() <= 1e-10);
    CHECK((strict_pos.matrix() * nonpos.matrix()).norm() <= 1e-9);
  }
}

TEST_CASE("positive part maximizes the trace form over contractions") {
  std::mt19937_64 rng(7);
  for (int seed = 0; seed < 200; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    const HermitianOperator a = testing::random_hermitian(rng, n);
    const Projector pos = eigenspace_projector(a, EigenspaceMode::strict_pos);
    const double best = trace_pair(a, pos.base());
    const HermitianOperator t = testing::random_contraction(rng, n);
    CHECK(trace_pair(a, t) <= best + 1e-9);
  }
}
