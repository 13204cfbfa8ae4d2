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

#include "specmaj/random.hpp"

#include <cmath>

namespace specmaj {

namespace {

void require_positive(int n) {
  if (n < 1) throw std::invalid_argument("random sampling: order must be >= 1");
}

Matrix ginibre(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 step on master+index; decorrelates consecutive indices.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Unitary random_unitary(int n, std::mt19937_64& rng) {
  require_positive(n);
  const Matrix g = ginibre(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  // absorb the R diagonal phases so the distribution is Haar
  for (int i = 0; i < n; ++i) {
    const Complex r = qr.matrixQR()(i, i);
    const double m = std::abs(r);
    q.col(i) *= (m > 0.0) ? r / m : Complex(1.0, 0.0);
  }
  return Unitary(std::move(q));
}

Unitary random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unitary(n, rng);
}

Contraction random_contraction(int n, std::mt19937_64& rng) {
  require_positive(n);
  const Unitary u = random_unitary(n, rng);
  const Unitary v = random_unitary(n, rng);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  RealVector s(n);
  for (int i = 0; i < n; ++i) s(i) = ud(rng);
  return Contraction(u.matrix() * s.cast<Complex>().asDiagonal() * v.matrix().adjoint());
}

Contraction random_contraction(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_contraction(n, rng);
}

HermitianMatrix random_hermitian(int n, std::mt19937_64& rng,
                                 const std::optional<Spectrum>& spectrum) {
  require_positive(n);
  if (spectrum) {
    if (spectrum->size() != n) {
      throw std::invalid_argument("random_hermitian: spectrum length mismatch");
    }
    const Unitary u = random_unitary(n, rng);
    Matrix a = u.matrix() * spectrum->values().cast<Complex>().asDiagonal() * u.matrix().adjoint();
    a = 0.5 * (a + a.adjoint());
    return HermitianMatrix(std::move(a));
  }
  const Matrix g = ginibre(n, rng);
  Matrix a = 0.5 * (g + g.adjoint());
  return HermitianMatrix(std::move(a));
}

HermitianMatrix random_hermitian(int n, std::uint64_t seed,
                                 const std::optional<Spectrum>& spectrum) {
  std::mt19937_64 rng(seed);
  return random_hermitian(n, rng, spectrum);
}

PsdMatrix random_psd(int n, std::mt19937_64& rng) {
  const HermitianMatrix h = random_hermitian(n, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  Matrix a = es.eigenvectors() * es.eigenvalues().cwiseAbs().cast<Complex>().asDiagonal() *
             es.eigenvectors().adjoint();
  a = 0.5 * (a + a.adjoint());
  return PsdMatrix(std::move(a));
}

PsdMatrix random_psd(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_psd(n, rng);
}

}  // namespace specmaj
