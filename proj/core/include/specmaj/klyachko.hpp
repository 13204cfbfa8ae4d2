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

#include <filesystem>
#include <optional>

#include "specmaj/decision.hpp"
#include "specmaj/klyachko_types.hpp"

namespace specmaj {

/// Admissibility of the tuple (I_0, ..., I_m): nonvanishing of the cup
/// product sigma(I_0) * prod_{j>=1} sigma(I_j') in the cohomology of the
/// Grassmannian of r-planes.  This is the generic-flag (Kleiman) criterion
/// under which the compatibility theorem for spectra of sums of Hermitian
/// matrices is proved.
bool is_admissible(const std::vector<SubsetIndex>& tuple);

/// Enumeration caps.  Tuple counts grow like C(n,r)^(m+1); the caps guard
/// against accidental blow-ups and can be lifted with `force`.
struct EnumerationOptions {
  int max_n = 6;
  int max_m = 4;
  bool force = false;
  /// Overrides the memo directory (default: $SPECMAJ_MEMO_DIR, else a
  /// per-user cache directory).
  std::optional<std::filesystem::path> memo_dir;
  bool use_memo = true;
};

/// Directory used for the admissible-tuple memo files.
std::filesystem::path memo_directory(const EnumerationOptions& opts = {});

/// All admissible (m+1)-tuples of r-subsets of {1..n}, deterministic order.
/// Results are memoized in memory and on disk, keyed by (n, m, r) and the
/// conventions version.
std::vector<AdmissibleTuple> enumerate_admissible_r(int n, int m, int r,
                                                    const EnumerationOptions& opts = {});

/// Concatenation over all 1 <= r < n.
std::vector<AdmissibleTuple> enumerate_admissible(int n, int m,
                                                  const EnumerationOptions& opts = {});

struct KlyachkoOptions {
  EnumerationOptions enumeration;
  double tol = default_tolerances().majorization;
  /// When set (default), m = 1 is decided by direct spectrum comparison and
  /// certain reductions elsewhere shortcut the enumeration.  Tests disable
  /// this to exercise the full inequality engine.
  bool allow_shortcuts = true;
};

/// Do there exist Hermitian matrices A_0 = A_1 + ... + A_m with the given
/// spectra?  Feasible iff the traces balance and every compatibility
/// inequality lambda^0[I_0'] >= sum_j lambda^j[I_j'] holds over the
/// admissible tuples.  An infeasible verdict carries the trace gap or the
/// first violated tuple as a certificate.
Decision klyachko_feasible_sum(const Spectrum& lambda0, const std::vector<Spectrum>& lambdas,
                               const KlyachkoOptions& opts = {});

/// Same with A_0 >= A_1 + ... + A_m: trace inequality instead of equality.
Decision klyachko_feasible_dominated(const Spectrum& lambda0,
                                     const std::vector<Spectrum>& lambdas,
                                     const KlyachkoOptions& opts = {});

}  // namespace specmaj
