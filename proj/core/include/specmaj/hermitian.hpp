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

#include <functional>

#include "specmaj/types.hpp"

namespace specmaj {

using ScalarFunction = std::function<double(double)>;

struct EigSorted {
  Spectrum spectrum;
  Unitary vectors;  ///< columns are eigenvectors, A = U diag(lambda) U*
};

/// Eigendecomposition with eigenvalues in non-increasing order.
///
/// The basis is made deterministic: each eigenvector is scaled so its
/// largest-modulus component (first such index on ties) is real and
/// non-negative, and columns inside an exactly-degenerate eigenvalue run are
/// ordered lexicographically.  Different bases of a degenerate eigenspace are
/// equally valid; callers must not rely on a particular one.
EigSorted eig_sorted(const HermitianMatrix& a,
                     const Tolerances& tol = default_tolerances());

/// Functional calculus: U diag(f(lambda_i)) U*.  Throws std::domain_error if
/// f is not finite on an eigenvalue.
HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a,
                               const Tolerances& tol = default_tolerances());

/// lambda(b)_i >= lambda(a)_i - tol for all i (sorted non-increasing).
bool spectrally_dominates(const Spectrum& b, const Spectrum& a,
                          double tol = default_tolerances().dominance);
bool spectrally_dominates(const HermitianMatrix& b, const HermitianMatrix& a,
                          const Tolerances& tol = default_tolerances());

/// Given psd A spectrally dominated by psd B, returns a contraction V with
/// V* B V = A.  Per-mode scaling sqrt(lambda(A)_i / lambda(B)_i) on aligned
/// eigenbases, zero where lambda(B)_i falls below rank_cutoff.
Contraction realize_dominance_contraction(const PsdMatrix& a, const PsdMatrix& b,
                                          const Tolerances& tol = default_tolerances());

/// Given lambda(a)_i <= lambda(c)_i for all i, returns a unitary V mapping the
/// sorted eigenbasis of c onto the sorted eigenbasis of a, so V* C V - A is psd.
Unitary align_order(const HermitianMatrix& a, const HermitianMatrix& c,
                    const Tolerances& tol = default_tolerances());

/// Principal square root of a psd matrix (eigenvalues floored at zero).
Matrix psd_sqrt(const PsdMatrix& a, const Tolerances& tol = default_tolerances());

}  // namespace specmaj
