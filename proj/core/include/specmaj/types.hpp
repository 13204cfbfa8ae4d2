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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <utility>

#include "specmaj/version.hpp"

namespace specmaj {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// max(1, largest absolute entry); the reference scale for relative tolerances.
double matrix_scale(const Matrix& a);

/// Largest absolute entry, 0 for empty matrices.
double max_abs(const Matrix& a);

/// Non-increasing vector of eigenvalues.  Constructing from an unsorted
/// vector sorts it; `from_sorted` validates instead.
class Spectrum {
 public:
  explicit Spectrum(RealVector values);
  static Spectrum from_sorted(RealVector values);

  const RealVector& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_(i); }
  double sum() const { return values_.sum(); }
  double max() const { return values_(0); }
  double min() const { return values_(values_.size() - 1); }

 private:
  struct Sorted {};
  Spectrum(RealVector values, Sorted) : values_(std::move(values)) {}
  RealVector values_;
};

/// Square complex matrix with ||A - A*||_max within tolerance.  The stored
/// matrix is the Hermitian part (A + A*)/2, so downstream code may rely on
/// exact self-adjointness.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix a, const Tolerances& tol = default_tolerances());

  const Matrix& matrix() const { return a_; }
  Eigen::Index order() const { return a_.rows(); }
  double trace() const { return a_.trace().real(); }

 private:
  Matrix a_;
};

/// Hermitian matrix with lambda_min >= -psd_tol * scale.
class PsdMatrix {
 public:
  explicit PsdMatrix(HermitianMatrix base, const Tolerances& tol = default_tolerances());
  explicit PsdMatrix(Matrix a, const Tolerances& tol = default_tolerances())
      : PsdMatrix(HermitianMatrix(std::move(a), tol), tol) {}

  const HermitianMatrix& hermitian() const { return base_; }
  const Matrix& matrix() const { return base_.matrix(); }
  Eigen::Index order() const { return base_.order(); }
  double trace() const { return base_.trace(); }

 private:
  HermitianMatrix base_;
};

/// Square matrix with ||U*U - 1||_max within tolerance.
class Unitary {
 public:
  explicit Unitary(Matrix u, const Tolerances& tol = default_tolerances());

  const Matrix& matrix() const { return u_; }
  Eigen::Index order() const { return u_.rows(); }

 private:
  Matrix u_;
};

/// Matrix (not necessarily square) whose largest singular value is <= 1
/// within tolerance.
class Contraction {
 public:
  explicit Contraction(Matrix v, const Tolerances& tol = default_tolerances());

  const Matrix& matrix() const { return v_; }
  Eigen::Index rows() const { return v_.rows(); }
  Eigen::Index cols() const { return v_.cols(); }

 private:
  Matrix v_;
};

}  // namespace specmaj
