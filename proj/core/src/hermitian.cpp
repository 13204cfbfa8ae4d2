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

#include "specmaj/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace specmaj {

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double matrix_scale(const Matrix& a) { return std::max(1.0, max_abs(a)); }

Spectrum::Spectrum(RealVector values) : values_(std::move(values)) {
  std::sort(values_.data(), values_.data() + values_.size(), std::greater<double>());
}

Spectrum Spectrum::from_sorted(RealVector values) {
  for (Eigen::Index i = 0; i + 1 < values.size(); ++i) {
    if (values(i) < values(i + 1)) {
      throw std::invalid_argument("Spectrum::from_sorted: vector is not non-increasing");
    }
  }
  return Spectrum(std::move(values), Sorted{});
}

HermitianMatrix::HermitianMatrix(Matrix a, const Tolerances& tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("HermitianMatrix: matrix must be square");
  }
  const double dev = max_abs(a - a.adjoint());
  if (dev > tol.hermitian * matrix_scale(a)) {
    throw std::invalid_argument("HermitianMatrix: ||A - A*||_max = " + std::to_string(dev) +
                                " exceeds tolerance");
  }
  a_ = 0.5 * (a + a.adjoint());
}

PsdMatrix::PsdMatrix(HermitianMatrix base, const Tolerances& tol) : base_(std::move(base)) {
  if (base_.order() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(base_.matrix(), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -tol.psd * matrix_scale(base_.matrix())) {
      throw std::invalid_argument("PsdMatrix: lambda_min = " + std::to_string(lo) +
                                  " below tolerance");
    }
  }
}

Unitary::Unitary(Matrix u, const Tolerances& tol) : u_(std::move(u)) {
  if (u_.rows() != u_.cols()) {
    throw std::invalid_argument("Unitary: matrix must be square");
  }
  const double dev = max_abs(u_.adjoint() * u_ - Matrix::Identity(u_.rows(), u_.cols()));
  if (dev > tol.unitary) {
    throw std::invalid_argument("Unitary: ||U*U - 1||_max = " + std::to_string(dev) +
                                " exceeds tolerance");
  }
}

Contraction::Contraction(Matrix v, const Tolerances& tol) : v_(std::move(v)) {
  if (v_.size() == 0) return;
  const double top = v_.jacobiSvd().singularValues()(0);
  if (top > 1.0 + tol.contraction) {
    throw std::invalid_argument("Contraction: ||V|| = " + std::to_string(top) +
                                " exceeds 1 beyond tolerance");
  }
}

namespace {

// Lexicographic key on (re, im) pairs of a column; only used to order columns
// inside exactly-degenerate eigenvalue runs.
bool column_less(const Matrix& m, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Complex x = m(i, a), y = m(i, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

void fix_phase(Matrix& vecs, Eigen::Index col) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
    const double m = std::abs(vecs(i, col));
    if (m > best + 1e-14) {  // keep the first index among near-ties
      best = m;
      arg = i;
    }
  }
  if (best > 0.0) {
    const Complex phase = vecs(arg, col) / std::abs(vecs(arg, col));
    vecs.col(col) *= std::conj(phase);
    vecs(arg, col) = Complex(std::abs(vecs(arg, col)), 0.0);
  }
}

}  // namespace

EigSorted eig_sorted(const HermitianMatrix& a, const Tolerances& tol) {
  const Matrix& m = a.matrix();
  const Eigen::Index n = m.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eig_sorted: eigensolver failed to converge");
  }

  // ascending -> descending
  RealVector vals(n);
  Matrix vecs(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    vals(i) = es.eigenvalues()(n - 1 - i);
    vecs.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  for (Eigen::Index i = 0; i < n; ++i) fix_phase(vecs, i);

  // order columns deterministically within exactly-equal eigenvalue runs
  for (Eigen::Index lo = 0; lo < n;) {
    Eigen::Index hi = lo + 1;
    while (hi < n && vals(hi) == vals(lo)) ++hi;
    if (hi - lo > 1) {
      std::vector<Eigen::Index> idx(hi - lo);
      std::iota(idx.begin(), idx.end(), lo);
      std::sort(idx.begin(), idx.end(),
                [&](Eigen::Index x, Eigen::Index y) { return column_less(vecs, x, y); });
      Matrix tmp(n, hi - lo);
      for (Eigen::Index k = 0; k < hi - lo; ++k) tmp.col(k) = vecs.col(idx[k]);
      vecs.block(0, lo, n, hi - lo) = tmp;
    }
    lo = hi;
  }

  return EigSorted{Spectrum::from_sorted(std::move(vals)), Unitary(std::move(vecs), tol)};
}

HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a,
                               const Tolerances& tol) {
  const EigSorted eig = eig_sorted(a, tol);
  const Eigen::Index n = a.order();
  RealVector fv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    fv(i) = f(eig.spectrum[i]);
    if (!std::isfinite(fv(i))) {
      throw std::domain_error("apply_function: f not finite at eigenvalue " +
                              std::to_string(eig.spectrum[i]));
    }
  }
  const Matrix& u = eig.vectors.matrix();
  Matrix out = u * fv.cast<Complex>().asDiagonal() * u.adjoint();
  out = 0.5 * (out + out.adjoint());
  return HermitianMatrix(std::move(out), tol);
}

bool spectrally_dominates(const Spectrum& b, const Spectrum& a, double tol) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("spectrally_dominates: size mismatch");
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (b[i] < a[i] - tol) return false;
  }
  return true;
}

bool spectrally_dominates(const HermitianMatrix& b, const HermitianMatrix& a,
                          const Tolerances& tol) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("spectrally_dominates: order mismatch");
  }
  return spectrally_dominates(eig_sorted(b, tol).spectrum, eig_sorted(a, tol).spectrum,
                              tol.dominance);
}

Contraction realize_dominance_contraction(const PsdMatrix& a, const PsdMatrix& b,
                                          const Tolerances& tol) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("realize_dominance_contraction: order mismatch");
  }
  const EigSorted ea = eig_sorted(a.hermitian(), tol);
  const EigSorted eb = eig_sorted(b.hermitian(), tol);
  if (!spectrally_dominates(eb.spectrum, ea.spectrum, tol.dominance)) {
    throw std::invalid_argument("realize_dominance_contraction: dominance violated");
  }
  const Eigen::Index n = a.order();
  const double cutoff = tol.rank_cutoff * matrix_scale(b.matrix());
  RealVector s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (eb.spectrum[i] <= cutoff) {
      s(i) = 0.0;  // forced: lambda(A)_i <= lambda(B)_i <= cutoff
    } else {
      s(i) = std::sqrt(std::max(ea.spectrum[i], 0.0) / eb.spectrum[i]);
      s(i) = std::min(s(i), 1.0);
    }
  }
  Matrix v = eb.vectors.matrix() * s.cast<Complex>().asDiagonal() * ea.vectors.matrix().adjoint();
  return Contraction(std::move(v), tol);
}

Unitary align_order(const HermitianMatrix& a, const HermitianMatrix& c,
                    const Tolerances& tol) {
  if (a.order() != c.order()) {
    throw std::invalid_argument("align_order: order mismatch");
  }
  const EigSorted ea = eig_sorted(a, tol);
  const EigSorted ec = eig_sorted(c, tol);
  if (!spectrally_dominates(ec.spectrum, ea.spectrum, tol.dominance)) {
    throw std::invalid_argument("align_order: dominance violated");
  }
  return Unitary(ec.vectors.matrix() * ea.vectors.matrix().adjoint(), tol);
}

Matrix psd_sqrt(const PsdMatrix& a, const Tolerances& tol) {
  const EigSorted e = eig_sorted(a.hermitian(), tol);
  const Eigen::Index n = a.order();
  RealVector r(n);
  for (Eigen::Index i = 0; i < n; ++i) r(i) = std::sqrt(std::max(e.spectrum[i], 0.0));
  const Matrix& u = e.vectors.matrix();
  Matrix out = u * r.cast<Complex>().asDiagonal() * u.adjoint();
  return 0.5 * (out + out.adjoint());
}

}  // namespace specmaj
