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
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "specmaj/decision.hpp"
#include "specmaj/types.hpp"

namespace specmaj {

enum class OrbitMode { kUnitary, kContractive };

struct OracleBudget {
  int restarts = 64;
  int iterations = 2000;
  double initial_step = 0.05;
  double step_grow = 1.3;
  double step_shrink = 0.4;
  std::uint64_t seed = 1;
  double success_tol = 1e-8;
};

enum class OracleStatus { kWitnessFound, kExhausted };

/// Result of the prescribed-spectra sum search: unitaries U_i with
/// diag(lambda^0) ~= sum_i U_i diag(lambda^i) U_i*.  The witness is verified
/// by direct reconstruction before kWitnessFound is reported; best_residual
/// is the Frobenius norm of the defect.
struct SpectraSumOutcome {
  OracleStatus status = OracleStatus::kExhausted;
  std::vector<Unitary> unitaries;
  double best_residual = std::numeric_limits<double>::infinity();
};

/// Minimizes ||diag(lambda^0) - sum_i U_i diag(lambda^i) U_i*||_F over the
/// unitary group by Riemannian gradient descent (exponential retraction,
/// adaptive step) with random restarts; restart 0 starts at the identity.
SpectraSumOutcome realize_spectra_sum(const Spectrum& lambda0,
                                      const std::vector<Spectrum>& lambdas,
                                      const OracleBudget& budget = {});

/// Result of the block-compression search: X (unitary, or a contraction
/// parameterized as U diag(cos theta) V*) such that the diagonal blocks of
/// X* B X have the prescribed spectra.  best_residual is the l2 norm of the
/// stacked sorted-eigenvalue deviations.
struct BlockCompressionOutcome {
  OracleStatus status = OracleStatus::kExhausted;
  Matrix x;
  double best_residual = std::numeric_limits<double>::infinity();
};

/// Minimizes sum_i || lambda(block_i(X* B X)) - target_i ||^2.  The objective
/// is Lipschitz but nonsmooth at spectral collisions; descent uses the
/// spectral subgradient 2 (M_i - Q_i diag(target_i) Q_i*).
BlockCompressionOutcome realize_block_compression(const HermitianMatrix& b,
                                                  const std::vector<Spectrum>& targets,
                                                  const std::vector<int>& ranks,
                                                  OrbitMode mode,
                                                  const OracleBudget& budget = {});

/// One spectra-sum feasibility instance, for validation sweeps.
struct SumInstance {
  Spectrum lambda0;
  std::vector<Spectrum> lambdas;
};

struct ValidationEntry {
  Decision decision;
  OracleStatus oracle = OracleStatus::kExhausted;
  double residual = 0.0;
};

/// Agreement report between an exact decision procedure and the numeric
/// search.  A (feasible, exhausted) pair is suspicious but inconclusive; an
/// (infeasible, witness-found) pair is a hard failure, as is an infeasible
/// certificate whose inequality is not actually violated.
struct ValidationReport {
  long total = 0;
  long feasible = 0;
  long witness_found = 0;
  long hard_failures = 0;
  long suspicious = 0;
  std::vector<ValidationEntry> entries;
  std::vector<std::string> failure_notes;

  bool clean() const { return hard_failures == 0; }
};

ValidationReport cross_validate(const std::vector<SumInstance>& instances,
                                const std::function<Decision(const SumInstance&)>& decider,
                                const OracleBudget& budget = {});

/// Riemannian gradient of the spectra-sum objective at the given point, for
/// one summand; exposed for finite-difference validation.
Matrix spectra_sum_riemannian_gradient(const Spectrum& lambda0,
                                       const std::vector<Spectrum>& lambdas,
                                       const std::vector<Matrix>& us, int which);

/// Objective value matching the gradient above.
double spectra_sum_objective(const Spectrum& lambda0, const std::vector<Spectrum>& lambdas,
                             const std::vector<Matrix>& us);

}  // namespace specmaj
