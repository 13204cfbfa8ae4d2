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

#include "specmaj/algebra.hpp"
#include "specmaj/decision.hpp"
#include "specmaj/hermitian.hpp"
#include "specmaj/klyachko.hpp"
#include "specmaj/oracle.hpp"

namespace specmaj {

/// Diagonal shift making a Hermitian operand positive semidefinite in the
/// unitary block-compression problem.  The default everywhere is the operator
/// norm of the compressed matrix; the decision is shift independent.
struct ShiftParameter {
  double alpha = 0.0;
};

/// Resolution of the grid searches used where membership is defined through
/// an existential quantifier over continuous intermediate spectra.  Verdicts
/// from those searches are exact on the feasible side (every candidate is
/// certified by exact inequality checks) and resolution-limited on the
/// infeasible side.
struct GridOptions {
  int resolution = 6;            ///< grid points per interval
  long max_candidates = 200000;  ///< enumeration cap per search
};

/// Is the block-diagonal family `targets` (non-negative spectra, sizes
/// `ranks`) the diagonal-block compression of V* S V for some contraction V,
/// when S is psd with spectrum lambdaS?  Decided through the compatibility
/// inequalities on the zero-padded tuple plus the trace inequality.
Decision block_feasible_contractive(const Spectrum& lambda_s,
                                    const std::vector<Spectrum>& targets,
                                    const std::vector<int>& ranks,
                                    const KlyachkoOptions& opts = {});

/// Unitary variant: targets are arbitrary real spectra; everything is
/// shifted to the psd cone by alpha (default ||S||_op) and decided through
/// the compatibility inequalities with trace equality.
Decision block_feasible_unitary(const Spectrum& lambda_s,
                                const std::vector<Spectrum>& targets,
                                const std::vector<int>& ranks,
                                std::optional<ShiftParameter> alpha = std::nullopt,
                                const KlyachkoOptions& opts = {});

/// From a contraction V with block-diagonal compression of V* S V equal to
/// the direct sum of blocks S_i, produce unitaries V_i with
///   S >= sum_i V_i* (embed_i S_i) V_i.
/// Built from the factors T_i = S^{1/2} V P_i via singular-value alignment.
std::vector<Unitary> witness_unitaries_from_contraction(
    const PsdMatrix& s, const Contraction& v, const ProjectionSystem& p,
    const Tolerances& tol = default_tolerances());

/// Converse construction: from unitaries V_i with
/// S >= sum_i V_i* (embed_i S_i) V_i, produce a contraction V whose
/// compression hits the blocks exactly: C_P(V* S V) = direct sum S_i.
Contraction witness_contraction_from_unitaries(const PsdMatrix& s,
                                               const std::vector<PsdMatrix>& blocks,
                                               const std::vector<Unitary>& vs,
                                               const ProjectionSystem& p,
                                               const Tolerances& tol = default_tolerances());

/// Membership of `target` in the spectra of partial traces over the unitary
/// (or contractive) orbit of a matrix with spectrum lambda_s, order d*m.
/// The intermediate block spectra are searched over seeded candidates plus a
/// rational grid; see GridOptions for the exactness caveat.
Decision partial_trace_feasible(const Spectrum& lambda_s, const Spectrum& target, int d,
                                int m, OrbitMode mode, const KlyachkoOptions& opts = {},
                                const GridOptions& grid = {});

/// Membership of the juxtaposed vector eta in the spectral description of
/// the conditional-expectation image of the unitary (contractive) orbit of B
/// for the subalgebra with spectral list l.  Exact when l is multiplicity
/// free (the chain collapses); otherwise seeded-grid limited.
Decision membership_mb(const RealVector& eta, const HermitianMatrix& b,
                       const SpectralList& l, OrbitMode mode,
                       const KlyachkoOptions& opts = {}, const GridOptions& grid = {});

/// Extended majorization: does the unitary orbit of A meet the
/// conditional-expectation image of the unitary orbit of B?  All assignments
/// of the spectrum of A onto the algebra's block structure are tried.
Decision ext_majorizes(const HermitianMatrix& a, const HermitianMatrix& b,
                       const SpectralList& l, const KlyachkoOptions& opts = {},
                       const GridOptions& grid = {});

/// Extended submajorization (contractive orbit of B); A and B psd.
Decision ext_submajorizes(const PsdMatrix& a, const PsdMatrix& b, const SpectralList& l,
                          const KlyachkoOptions& opts = {}, const GridOptions& grid = {});

enum class WitnessStatus { kFound, kInfeasible, kInconclusive };

struct ExpectationWitness {
  Unitary u;         ///< tce(l, U* B U) lands on `realized`
  Matrix realized;   ///< block-diagonal realization of A inside the algebra
  double residual;   ///< max-norm defect of the realization
};

struct ExpectationWitnessResult {
  WitnessStatus status = WitnessStatus::kInfeasible;
  Decision decision;  ///< the membership decision that drove the construction
  std::optional<ExpectationWitness> witness;
};

/// Constructs a unitary U with tce(l, U* B U) unitarily equivalent to A,
/// following the feasibility chain: realize the fine block spectra
/// (numeric orbit search), then solve each multiplicity group by
/// prescribed-spectra sums.  Budget exhaustion is reported as inconclusive,
/// not as a refutation.
ExpectationWitnessResult construct_expectation_witness(const HermitianMatrix& a,
                                                       const HermitianMatrix& b,
                                                       const SpectralList& l,
                                                       const OracleBudget& budget = {},
                                                       const KlyachkoOptions& opts = {},
                                                       const GridOptions& grid = {});

struct NcHornResult {
  Unitary u;                    ///< all d x d compressions of U* A U equal D/m
  PsdMatrix d;                  ///< the common block, tr(D) = tr(A)
  std::vector<Matrix> factors;  ///< X_i with A = (1/m) sum X_i X_i*
  std::vector<Unitary> unitaries;  ///< U_i with U_i* X_i X_i* U_i = embed_i(D)
  double block_residual;        ///< max deviation of the compressed blocks
};

/// Flattening of a psd block matrix: a unitary built from a diagonalizer
/// followed by a block Fourier matrix (primitive m-th root of unity) makes
/// all m diagonal d x d compressions equal.  Also emits the rank-d factors
/// of the induced average decomposition A = (1/m) sum_i X_i X_i*.
NcHornResult nc_horn_lemma(const PsdMatrix& a, int d, int m,
                           const Tolerances& tol = default_tolerances());

struct CounterexampleResult {
  PsdMatrix s;
  Unitary v;
  Matrix t;  ///< midpoint of two members of the compressed orbit
  double average_residual;  ///< || T - (C_P(S)+C_P(V*SV))/2 ||_max
  Decision decision;        ///< infeasibility of T as a compression target
};

/// The standard witness that block compressions of a unitary orbit fail to
/// be convex once some block has dimension >= 2: S = diag(2,4) padded with
/// zeros, V the coordinate swap, T = diag(3,3) the midpoint.  Returns the
/// data and the infeasibility certificate for T.
CounterexampleResult convexity_counterexample(int n, const std::vector<int>& ranks,
                                              const KlyachkoOptions& opts = {});

/// Spectral-dominance form of the Jensen inequality for block compressions:
/// checks lambda(C_P(f(A))) >= lambda(f(C_P(A))) entrywise for a monotone
/// convex non-negative f.  Expected true on all valid inputs.
bool jensen_check(const ScalarFunction& f, const HermitianMatrix& a,
                  const ProjectionSystem& p, const Tolerances& tol = default_tolerances());

/// Monotone transport: given a contraction W with C_P(W* B W) = A block
/// diagonal and a convex f with f(0) = 0, produces a contraction W~ with
/// C_P(W~* f(B) W~) = f(A).  Built through per-block operator inequalities
/// realized by eigenbasis alignment, then the converse witness construction.
Contraction monotone_transport(const ScalarFunction& f, const PsdMatrix& b,
                               const Contraction& w, const ProjectionSystem& p,
                               const Tolerances& tol = default_tolerances());

struct BourinResult {
  Unitary u;
  Unitary v;
  double lambda_min;  ///< smallest eigenvalue of f(A+B) - U*f(A)U - V*f(B)V
};

/// Unitary pair with U* f(A) U + V* f(B) V <= f(A+B) for psd A, B and convex
/// f with f(0) = 0.  Runs the doubled-order embedding, the monotone
/// transport, and the partial-isometry completion; falls back to a numeric
/// orbit search only if an intermediate dominance check fails numerically.
BourinResult bourin_decomposition(const ScalarFunction& f, const PsdMatrix& a,
                                  const PsdMatrix& b, const OracleBudget& budget = {},
                                  const Tolerances& tol = default_tolerances());

}  // namespace specmaj
