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

#include "specmaj/hermitian.hpp"
#include "specmaj/random.hpp"

using namespace specmaj;

namespace {

Matrix diag3(double a, double b, double c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("spectrum constructor sorts, from_sorted validates") {
  RealVector v(3);
  v << 1.0, 3.0, 2.0;
  const Spectrum s(v);
  CHECK(s[0] == 3.0);
  CHECK(s[1] == 2.0);
  CHECK(s[2] == 1.0);
  RealVector bad(2);
  bad << 0.0, 1.0;
  CHECK_THROWS_AS(Spectrum::from_sorted(bad), std::invalid_argument);
}

TEST_CASE("type invariants reject malformed matrices") {
  Matrix notsquare(2, 3);
  notsquare.setZero();
  CHECK_THROWS_AS((HermitianMatrix(notsquare)), std::invalid_argument);

  Matrix skew(2, 2);
  skew << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 0);
  CHECK_THROWS_AS((HermitianMatrix(skew)), std::invalid_argument);

  Matrix neg = Matrix::Identity(2, 2);
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS((PsdMatrix(neg)), std::invalid_argument);

  Matrix stretched = 2.0 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS((Unitary(stretched)), std::invalid_argument);
  CHECK_THROWS_AS((Contraction(stretched)), std::invalid_argument);
  CHECK_NOTHROW(Contraction(0.5 * Matrix::Identity(2, 2)));
}

TEST_CASE("eig_sorted on a diagonal matrix") {
  const HermitianMatrix a(diag3(1, 3, 2));
  const EigSorted e = eig_sorted(a);
  CHECK(e.spectrum[0] == doctest::Approx(3.0));
  CHECK(e.spectrum[1] == doctest::Approx(2.0));
  CHECK(e.spectrum[2] == doctest::Approx(1.0));
  // eigenvectors of a diagonal matrix with distinct entries are coordinate
  // vectors up to order, so U is a permutation matrix
  const Matrix& u = e.vectors.matrix();
  for (Eigen::Index j = 0; j < 3; ++j) {
    int ones = 0;
    for (Eigen::Index i = 0; i < 3; ++i) {
      if (std::abs(u(i, j)) > 0.5) ++ones;
    }
    CHECK(ones == 1);
  }
}

TEST_CASE("eig_sorted on the coordinate swap") {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const EigSorted e = eig_sorted(HermitianMatrix(x));
  CHECK(e.spectrum[0] == doctest::Approx(1.0));
  CHECK(e.spectrum[1] == doctest::Approx(-1.0));
}

TEST_CASE("eig_sorted round trip on random matrices up to order 16") {
  for (int n : {2, 5, 9, 16}) {
    const HermitianMatrix a = random_hermitian(n, 100 + n);
    const EigSorted e = eig_sorted(a);
    const Matrix rec = e.vectors.matrix() *
                       e.spectrum.values().cast<Complex>().asDiagonal() *
                       e.vectors.matrix().adjoint();
    CHECK(max_abs(rec - a.matrix()) <= 1e-10 * matrix_scale(a.matrix()));
  }
}

TEST_CASE("eig_sorted determinism and phase convention") {
  const HermitianMatrix a = random_hermitian(6, 7);
  const EigSorted e1 = eig_sorted(a);
  const EigSorted e2 = eig_sorted(a);
  CHECK(max_abs(e1.vectors.matrix() - e2.vectors.matrix()) == 0.0);
  // each column's largest-modulus entry is real non-negative
  for (Eigen::Index j = 0; j < 6; ++j) {
    Eigen::Index arg = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < 6; ++i) {
      if (std::abs(e1.vectors.matrix()(i, j)) > best) {
        best = std::abs(e1.vectors.matrix()(i, j));
        arg = i;
      }
    }
    const Complex top = e1.vectors.matrix()(arg, j);
    CHECK(top.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(top.real() >= 0.0);
  }
}

TEST_CASE("apply_function basics") {
  const HermitianMatrix a = random_hermitian(4, 3);
  CHECK(max_abs(apply_function([](double t) { return t; }, a).matrix() - a.matrix()) <
        1e-12 * matrix_scale(a.matrix()));

  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const HermitianMatrix sq = apply_function([](double t) { return t * t; },
                                            HermitianMatrix(x));
  CHECK(max_abs(sq.matrix() - Matrix::Identity(2, 2)) < 1e-12);

  Matrix d(2, 2);
  d.setZero();
  d(1, 1) = 1.0;
  const HermitianMatrix ex = apply_function([](double t) { return std::exp(t); },
                                            HermitianMatrix(d));
  CHECK(ex.matrix()(0, 0).real() == doctest::Approx(1.0));
  CHECK(ex.matrix()(1, 1).real() == doctest::Approx(std::exp(1.0)));

  CHECK_THROWS_AS(apply_function([](double t) { return std::sqrt(t); },
                                 HermitianMatrix(Matrix(-Matrix::Identity(2, 2)))),
                  std::domain_error);
}

TEST_CASE("apply_function spectrum is the sorted image") {
  const HermitianMatrix a = random_hermitian(6, 11);
  auto f = [](double t) { return std::abs(t) + 0.25 * t * t; };
  const Spectrum before = eig_sorted(a).spectrum;
  const Spectrum after = eig_sorted(apply_function(f, a)).spectrum;
  RealVector expect(6);
  for (int i = 0; i < 6; ++i) expect(i) = f(before[i]);
  const Spectrum expected{expect};
  for (int i = 0; i < 6; ++i) CHECK(after[i] == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("spectral dominance") {
  const HermitianMatrix a = random_hermitian(4, 21);
  CHECK(spectrally_dominates(a, a));

  Matrix da = Matrix::Identity(2, 2);
  Matrix db = Matrix::Zero(2, 2);
  db(0, 0) = 2.0;
  CHECK_FALSE(spectrally_dominates(HermitianMatrix(db), HermitianMatrix(da)));

  // Weyl monotonicity: adding a psd matrix raises every eigenvalue
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const PsdMatrix p = random_psd(5, rng);
    const PsdMatrix q = random_psd(5, rng);
    const HermitianMatrix sum(p.matrix() + q.matrix());
    CHECK(spectrally_dominates(sum, p.hermitian()));
  }
}

TEST_CASE("realize_dominance_contraction") {
  SUBCASE("equal matrices give a unitary alignment") {
    const PsdMatrix a = random_psd(4, 31);
    const Contraction v = realize_dominance_contraction(a, a);
    CHECK(max_abs(v.matrix().adjoint() * v.matrix() - Matrix::Identity(4, 4)) < 1e-9);
    CHECK(max_abs(v.matrix().adjoint() * a.matrix() * v.matrix() - a.matrix()) < 1e-9);
  }
  SUBCASE("diagonal scaling") {
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    b(0, 0) = 4.0;
    const Contraction v = realize_dominance_contraction(PsdMatrix(a), PsdMatrix(b));
    CHECK(std::abs(std::abs(v.matrix()(0, 0)) - 0.5) < 1e-12);
    CHECK(max_abs(v.matrix().adjoint() * b * v.matrix() - a) < 1e-12);
  }
  SUBCASE("random dominated pairs") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
      const PsdMatrix a = random_psd(5, rng);
      const PsdMatrix b(a.matrix() + random_psd(5, rng).matrix());
      const Contraction v = realize_dominance_contraction(a, b);
      CHECK(max_abs(v.matrix().adjoint() * b.matrix() * v.matrix() - a.matrix()) < 1e-9);
    }
  }
  SUBCASE("dominance violation throws") {
    Matrix a = 2.0 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(
        realize_dominance_contraction(PsdMatrix(a), PsdMatrix(Matrix::Identity(2, 2))),
        std::invalid_argument);
  }
}

TEST_CASE("align_order") {
  SUBCASE("exact on equal inputs") {
    const HermitianMatrix a = random_hermitian(5, 41);
    const Unitary v = align_order(a, a);
    CHECK(max_abs(v.matrix().adjoint() * a.matrix() * v.matrix() - a.matrix()) < 1e-10);
  }
  SUBCASE("zero against any psd") {
    const PsdMatrix c = random_psd(4, 43);
    const HermitianMatrix zero{Matrix::Zero(4, 4)};
    const Unitary v = align_order(zero, c.hermitian());
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        v.matrix().adjoint() * c.matrix() * v.matrix());
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);
  }
  SUBCASE("psd gap on random dominated pairs") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> lift(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const HermitianMatrix a = random_hermitian(4, rng);
      RealVector boosted = eig_sorted(a).spectrum.values();
      for (Eigen::Index i = 0; i < 4; ++i) boosted(i) += lift(rng);
      const HermitianMatrix c = random_hermitian(4, rng, Spectrum(boosted));
      const Unitary v = align_order(a, c);
      Eigen::SelfAdjointEigenSolver<Matrix> es(
          v.matrix().adjoint() * c.matrix() * v.matrix() - a.matrix());
      CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
  }
}

TEST_CASE("seeded sampling: determinism and edge cases") {
  CHECK_THROWS_AS(random_unitary(0, 1), std::invalid_argument);

  const Unitary u1 = random_unitary(1, 9);
  CHECK(std::abs(std::abs(u1.matrix()(0, 0)) - 1.0) < 1e-14);

  const Unitary a = random_unitary(5, 1234);
  const Unitary b = random_unitary(5, 1234);
  CHECK(max_abs(a.matrix() - b.matrix()) == 0.0);
  const Contraction c1 = random_contraction(4, 99);
  const Contraction c2 = random_contraction(4, 99);
  CHECK(max_abs(c1.matrix() - c2.matrix()) == 0.0);

  RealVector pinned(3);
  pinned << 2.0, 1.0, -1.0;
  const HermitianMatrix h = random_hermitian(3, 5, Spectrum::from_sorted(pinned));
  const Spectrum got = eig_sorted(h).spectrum;
  CHECK(got[0] == doctest::Approx(2.0));
  CHECK(got[2] == doctest::Approx(-1.0));
}

TEST_CASE("haar moment of the top-left entry") {
  // |U_11|^2 is uniform on [0,1] for order 2, so the mean over 10^4 samples
  // is 1/2 within 3 standard errors (3 * sqrt(1/12/10^4) ~ 0.0087)
  const int samples = 10000;
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Unitary u = random_unitary(2, 50000 + i);
    acc += std::norm(u.matrix()(0, 0));
  }
  acc /= samples;
  CHECK(std::abs(acc - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / samples));
}
