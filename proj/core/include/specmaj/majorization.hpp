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

#include <cstdint>
#include <vector>

#include "specmaj/hermitian.hpp"
#include "specmaj/types.hpp"

namespace specmaj {

/// x is submajorized by y: every top-k partial sum of x (sorted
/// non-increasing) is at most the corresponding sum of y, within tol.
bool weak_majorizes(const RealVector& y, const RealVector& x,
                    double tol = default_tolerances().majorization);

/// Submajorization plus equality of totals.
bool majorizes(const RealVector& y, const RealVector& x,
               double tol = default_tolerances().majorization);

/// Schur-Horn constructor: a Hermitian (real symmetric) matrix with main
/// diagonal exactly x and spectrum y, built from diag(y) by a chain of at
/// most n-1 Givens rotations, each fixing one diagonal entry (the classical
/// Chan-Li scheme).  Requires x majorized by y.
HermitianMatrix schur_horn_construct(const RealVector& x, const RealVector& y,
                                     const Tolerances& tol = default_tolerances());

/// Necessary-condition probe: tr f(A) <= tr f(B) for every supplied convex f.
/// A finite list of functions cannot decide majorization, so a `true` here is
/// evidence, not proof.
bool convex_trace_test(const HermitianMatrix& a, const HermitianMatrix& b,
                       const std::vector<ScalarFunction>& fs,
                       const Tolerances& tol = default_tolerances());

/// Random vector majorized by y, produced by a product of `rounds` random
/// T-transforms (pairwise averagings).  Majorization holds by construction.
RealVector random_majorized_below(const RealVector& y, std::uint64_t seed,
                                  int rounds = 0 /* 0 = 2 * length */);

}  // namespace specmaj
