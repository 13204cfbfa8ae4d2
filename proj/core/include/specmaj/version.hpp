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

namespace specmaj {

// Bumped whenever a combinatorial convention (Schubert partition indexing,
// subset duality, tolerance defaults) changes.  Cached admissible-tuple files
// and emitted verdict objects carry this tag so data produced under different
// conventions is never mixed.
inline constexpr const char* kConventionsVersion = "specmaj-conv-1";

inline constexpr const char* kVersion = "0.1.0";

/// Numerical tolerances.  All matrix tolerances are relative to
/// scale = max(1, max-abs entry) of the operand unless noted otherwise.
struct Tolerances {
  double hermitian = 1e-12;     ///< ||A - A*||_max, relative to scale
  double psd = 1e-9;            ///< allowed negative part of lambda_min
  double unitary = 1e-10;       ///< ||U*U - 1||_max
  double contraction = 1e-9;    ///< allowed excess of the top singular value
  double eig = 1e-10;           ///< eigendecomposition reconstruction
  double witness = 1e-9;        ///< residual of constructed witnesses
  double majorization = 1e-9;   ///< absolute slack on partial sums
  double dominance = 1e-9;      ///< slack in entrywise spectral comparisons
  double rank_cutoff = 1e-10;   ///< eigenvalues below this count as zero
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace specmaj
