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

#include <optional>
#include <string>
#include <vector>

#include "specmaj/algebra.hpp"
#include "specmaj/klyachko_types.hpp"
#include "specmaj/types.hpp"

namespace specmaj {

enum class Verdict { kFeasible, kInfeasible };

/// Evidence attached to every infeasible verdict: either a trace-condition
/// failure, a concrete violated compatibility inequality with both sides
/// evaluated, or a structural obstruction (shape/positivity).
struct Certificate {
  enum class Kind { kTrace, kInequality, kStructural };

  Kind kind = Kind::kStructural;
  std::string detail;
  double lhs = 0.0;  ///< evaluated left side (trace or inequality)
  double rhs = 0.0;  ///< evaluated right side
  std::optional<AdmissibleTuple> tuple;  ///< set for kInequality
};

/// Verified chain of intermediate spectra behind a feasible membership
/// verdict: per fine block the realizable block spectra (mu), per group the
/// constant-on-multiplicity spectra (lambda), and their juxtaposition (eta).
struct MembershipChain {
  SpectralList list;
  std::vector<RealVector> mu;      ///< one sorted vector per fine block
  std::vector<RealVector> lambda;  ///< one sorted vector per group
  RealVector eta;                  ///< juxtaposed target vector, length n
};

struct Decision {
  Verdict verdict = Verdict::kInfeasible;
  /// False when the verdict came from a resolution-limited search and an
  /// infeasible answer may be a miss rather than a proof.
  bool exact = true;
  std::optional<Certificate> certificate;  ///< present whenever infeasible
  std::optional<MembershipChain> chain;    ///< present for feasible memberships

  bool feasible() const { return verdict == Verdict::kFeasible; }

  static Decision make_feasible(bool exact_ = true) {
    return Decision{Verdict::kFeasible, exact_, std::nullopt, std::nullopt};
  }
  static Decision make_infeasible(Certificate cert, bool exact_ = true) {
    return Decision{Verdict::kInfeasible, exact_, std::move(cert), std::nullopt};
  }
};

}  // namespace specmaj
