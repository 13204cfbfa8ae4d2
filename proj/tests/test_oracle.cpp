/*
 * Copyright 2026 the specmaj authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <random>

#include "specmaj/klyachko.hpp"
#include "specmaj/majorization.hpp"
#include "specmaj/oracle.hpp"
#include "specmaj/random.hpp"

using namespace specmaj;

namespace {

Spectrum spec(std::initializer_list<double> vals) {
  RealVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return Spectrum(std::move(v));
}

OracleBudget small_budget(std::uint64_t seed = 1) {
  OracleBudget b;
  b.restarts = 12;
  b.iterations = 600;
  b.seed = seed;
  return b;
}

double reconstruct_residual(const Spectrum& l0, const std::vector<Spectrum>& ls,
                            const std::vector<Unitary>& us) {
  Matrix m = l0.values().cast<Complex>().asDiagonal();
  for (size_t i = 0; i < us.size(); ++i) {
    m -= us[i].matrix() * ls[i].values().cast<Complex>().asDiagonal() *
         us[i].matrix().adjoint();
  }
  return m.norm();
}

}  // namespace

TEST_CASE("realize_spectra_sum finds a diagonal witness") {
  const Spectrum l0 = spec({2, 1, 1});
  const std::vector<Spectrum> ls = {spec({1, 1, 0}), spec({1, 1, 0})};
  const SpectraSumOutcome out = realize_spectra_sum(l0, ls, small_budget());
  REQUIRE(out.status == OracleStatus::kWitnessFound);
  CHECK(out.best_residual <= 1e-8);
  CHECK(reconstruct_residual(l0, ls, out.unitaries) <= 1e-7);
}

TEST_CASE("trace-mismatched instances stay exhausted with the frobenius bound") {
  const Spectrum l0 = spec({3, 0});
  const std::vector<Spectrum> ls = {spec({1, 0}), spec({1, 0})};
  const SpectraSumOutcome out = realize_spectra_sum(l0, ls, small_budget());
  CHECK(out.status == OracleStatus::kExhausted);
  // || M ||_F >= |tr M| / sqrt(n)
  CHECK(out.best_residual >= std::abs(3.0 - 2.0) / std::sqrt(2.0) - 1e-12);
}

TEST_CASE("oracle determinism") {
  const Spectrum l0 = spec({2, 1, 0.5});
  const std::vector<Spectrum> ls = {spec({1, 0.5, 0}), spec({1, 0.5, 0})};
  const OracleBudget b = small_budget(42);
  const SpectraSumOutcome a1 = realize_spectra_sum(l0, ls, b);
  const SpectraSumOutcome a2 = realize_spectra_sum(l0, ls, b);
  CHECK(a1.status == a2.status);
  CHECK(a1.best_residual == a2.best_residual);
  REQUIRE(a1.unitaries.size() == a2.unitaries.size());
  for (size_t i = 0; i < a1.unitaries.size(); ++i) {
    CHECK(max_abs(a1.unitaries[i].matrix() - a2.unitaries[i].matrix()) == 0.0);
  }
}

TEST_CASE("riemannian gradient agrees with central finite differences") {
  std::mt19937_64 rng(33);
  for (int n : {2, 3, 4}) {
    RealVector v0(n), v1(n), v2(n);
    std::uniform_real_distribution<double> ud(-2, 2);
    for (int i = 0; i < n; ++i) {
      v0(i) = ud(rng);
      v1(i) = ud(rng);
      v2(i) = ud(rng);
    }
    const Spectrum l0(v0);
    const std::vector<Spectrum> ls = {Spectrum(v1), Spectrum(v2)};
    std::vector<Matrix> us = {random_unitary(n, rng).matrix(),
                              random_unitary(n, rng).matrix()};
    for (int which = 0; which < 2; ++which) {
      // random tangent direction U * Omega at the base point
      Matrix g(n, n);
      std::normal_distribution<double> nd;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = Complex(nd(rng), nd(rng));
      }
      const Matrix omega = 0.5 * (g - g.adjoint());
      const Matrix grad = spectra_sum_riemannian_gradient(l0, ls, us, which);
      const double analytic =
          (grad.adjoint() * (us[which] * omega)).trace().real();

      const double h = 1e-6;
      auto at = [&](double t) {
        std::vector<Matrix> moved = us;
        // exponential curve through the base point in direction omega
        const Matrix ih = (t * omega) / Complex(0, 1);
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (ih + ih.adjoint()));
        Eigen::VectorXcd ph(n);
        for (int k = 0; k < n; ++k) ph(k) = std::exp(Complex(0, es.eigenvalues()(k)));
        moved[which] =
            us[which] * (es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint());
        return spectra_sum_objective(l0, ls, moved);
      };
      const double numeric = (at(h) - at(-h)) / (2 * h);
      CHECK(std::abs(analytic - numeric) <=
            1e-5 * std::max({1.0, std::abs(analytic), std::abs(numeric)}));
    }
  }
}

TEST_CASE("block compression search: identity start nails trivial targets") {
  const HermitianMatrix b = random_hermitian(5, 17);
  const ProjectionSystem p({2, 3});
  std::vector<Spectrum> targets;
  for (int i = 0; i < 2; ++i) {
    const Matrix blk = b.matrix().block(p.offset(i), p.offset(i), p.ranks()[i],
                                        p.ranks()[i]);
    targets.push_back(eig_sorted(HermitianMatrix(blk)).spectrum);
  }
  const BlockCompressionOutcome out =
      realize_block_compression(b, targets, {2, 3}, OrbitMode::kUnitary, small_budget());
  REQUIRE(out.status == OracleStatus::kWitnessFound);
  CHECK(out.best_residual <= 1e-10);
}

TEST_CASE("block compression search is blocked on the non-convexity midpoint") {
  // diag(2,4) cannot be carried onto diag(3,3) by any unitary conjugation:
  // the best sorted-eigenvalue distance is sqrt(2)
  Matrix s(2, 2);
  s.setZero();
  s(0, 0) = 2.0;
  s(1, 1) = 4.0;
  OracleBudget b = small_budget(7);
  b.restarts = 64;
  const BlockCompressionOutcome out = realize_block_compression(
      HermitianMatrix(s), {spec({3, 3})}, {2}, OrbitMode::kUnitary, b);
  CHECK(out.status == OracleStatus::kExhausted);
  CHECK(out.best_residual > 0.1);
  CHECK(out.best_residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("block compression search reaches majorized diagonals") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 5; ++t) {
    RealVector y(4);
    std::uniform_real_distribution<double> ud(-2, 2);
    for (int i = 0; i < 4; ++i) y(i) = ud(rng);
    const RealVector x = random_majorized_below(y, 73 + t);
    const HermitianMatrix b = random_hermitian(4, rng, Spectrum(y));
    std::vector<Spectrum> targets;
    for (int i = 0; i < 4; ++i) targets.push_back(spec({x(i)}));
    const BlockCompressionOutcome out = realize_block_compression(
        b, targets, {1, 1, 1, 1}, OrbitMode::kUnitary, small_budget(100 + t));
    CHECK(out.status == OracleStatus::kWitnessFound);
  }
}

TEST_CASE("contractive block compression handles scaled targets") {
  const PsdMatrix b = random_psd(4, 53);
  const ProjectionSystem p({2, 2});
  std::vector<Spectrum> targets;
  for (int i = 0; i < 2; ++i) {
    const Matrix blk =
        0.25 * b.matrix().block(p.offset(i), p.offset(i), p.ranks()[i], p.ranks()[i]);
    targets.push_back(eig_sorted(HermitianMatrix(blk)).spectrum);
  }
  const BlockCompressionOutcome out = realize_block_compression(
      b.hermitian(), targets, {2, 2}, OrbitMode::kContractive, small_budget(3));
  CHECK(out.status == OracleStatus::kWitnessFound);
  // the witness really is a contraction
  CHECK_NOTHROW(Contraction(out.x));
}

TEST_CASE("cross validation on an exhaustive small grid") {
  // order-2 exact sums over a half-integer grid; the engine and the search
  // must never contradict each other
  std::vector<SumInstance> instances;
  std::vector<RealVector> pairs;
  for (double a = 0; a <= 1.5; a += 0.5) {
    for (double b = 0; b <= a; b += 0.5) {
      RealVector v(2);
      v << a, b;
      pairs.push_back(v);
    }
  }
  for (const auto& l0 : pairs) {
    for (const auto& l1 : pairs) {
      for (const auto& l2 : pairs) {
        instances.push_back(
            SumInstance{Spectrum(l0), {Spectrum(l1), Spectrum(l2)}});
      }
    }
  }
  OracleBudget b;
  b.restarts = 6;
  b.iterations = 250;
  b.seed = 5;
  const ValidationReport report = cross_validate(
      instances,
      [](const SumInstance& inst) {
        return klyachko_feasible_sum(inst.lambda0, inst.lambdas);
      },
      b);
  CHECK(report.total == static_cast<long>(instances.size()));
  CHECK(report.hard_failures == 0);
}

TEST_CASE("cross validation of an empty batch") {
  const ValidationReport report = cross_validate(
      {}, [](const SumInstance&) { return Decision::make_feasible(); }, OracleBudget{});
  CHECK(report.total == 0);
  CHECK(report.clean());
}
