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

#include "specmaj/ncsh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "specmaj/majorization.hpp"
#include "specmaj/random.hpp"

namespace specmaj {

namespace {

Matrix embed_block(const Matrix& block, const ProjectionSystem& p, int i) {
  Matrix out = Matrix::Zero(p.order(), p.order());
  out.block(p.offset(i), p.offset(i), p.ranks()[i], p.ranks()[i]) = block;
  return out;
}

RealVector sorted_desc(RealVector v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<double>());
  return v;
}

Spectrum pad_spectrum(const RealVector& head, Eigen::Index n, double shift) {
  RealVector out = RealVector::Zero(n);
  out.head(head.size()) = head.array() + shift;
  return Spectrum(std::move(out));
}

double spectral_norm_of(const Spectrum& s) {
  return std::max(std::abs(s.max()), std::abs(s.min()));
}

// Violated compatibility inequality certifying a failed partial-sum
// comparison in the rank-one reduction.  For the top-k violation
// sum_{i<=k} x_i > sum_{i<=k} lambda_i the tuple has
//   I_0' = {1..k},  I_j' = {1} u {n-k+2..n} for the k blocks carrying the
// largest entries, I_j' = {n-k+1..n} otherwise; the associated product of
// Schubert classes is the k-fold power of the full-row class, which is the
// point class, so the tuple is admissible.
Certificate rank_one_certificate(const Spectrum& lambda0, const RealVector& x, double shift,
                                 double tol) {
  const int n = static_cast<int>(lambda0.size());
  const int m = static_cast<int>(x.size());
  const RealVector xs = sorted_desc(x);
  // locate the most violated top-k partial sum
  int bestk = -1;
  double worst = tol, top0 = 0.0, topx = 0.0;
  for (int k = 1; k <= std::min(n, m); ++k) {
    top0 += lambda0[k - 1] + shift;
    topx += xs(k - 1) + shift;
    if (k == n) break;  // total sums are covered by the trace condition
    if (topx - top0 > worst) {
      worst = topx - top0;
      bestk = k;
    }
  }
  if (bestk < 0) {
    Certificate c;
    c.kind = Certificate::Kind::kStructural;
    c.detail = "partial-sum violation detected but not attributable to a single subset";
    return c;
  }
  const int k = bestk;
  // blocks carrying the k largest entries of x
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x(a) > x(b); });
  std::set<int> big(order.begin(), order.begin() + k);

  std::vector<int> i0_prime, in_big, not_big;
  for (int v = 1; v <= k; ++v) i0_prime.push_back(v);
  in_big.push_back(1);
  for (int v = n - k + 2; v <= n; ++v) in_big.push_back(v);
  for (int v = n - k + 1; v <= n; ++v) not_big.push_back(v);

  AdmissibleTuple t;
  t.n = n;
  t.r = k;
  t.subsets.push_back(SubsetIndex(n, i0_prime).dual());
  double rhs = 0.0;
  for (int j = 0; j < m; ++j) {
    const bool carries = big.count(j) > 0;
    SubsetIndex sp(n, carries ? in_big : not_big);
    t.subsets.push_back(sp.dual());
    if (carries) rhs += x(j) + shift;  // the padded spectrum reads its top entry
  }
  double lhs = 0.0;
  for (int v = 1; v <= k; ++v) lhs += lambda0[v - 1] + shift;

  Certificate c;
  c.kind = Certificate::Kind::kInequality;
  c.tuple = t;
  c.lhs = lhs;
  c.rhs = rhs;
  c.detail = "compatibility inequality violated by tuple " + t.to_string() +
             " (rank-one reduction)";
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// block feasibility

Decision block_feasible_contractive(const Spectrum& lambda_s,
                                    const std::vector<Spectrum>& targets,
                                    const std::vector<int>& ranks,
                                    const KlyachkoOptions& opts) {
  const Eigen::Index n = lambda_s.size();
  if (targets.size() != ranks.size() || targets.empty()) {
    throw std::invalid_argument("block_feasible_contractive: targets/ranks mismatch");
  }
  Eigen::Index total = 0;
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (targets[i].size() != ranks[i]) {
      throw std::invalid_argument("block_feasible_contractive: target length mismatch");
    }
    if (targets[i].min() < -default_tolerances().psd) {
      throw std::invalid_argument("block_feasible_contractive: negative target eigenvalue");
    }
    total += ranks[i];
  }
  if (total != n) {
    throw std::invalid_argument("block_feasible_contractive: ranks must sum to the order");
  }

  double target_trace = 0.0;
  for (const auto& t : targets) target_trace += t.sum();
  if (lambda_s.sum() < target_trace - opts.tol) {
    Certificate c;
    c.kind = Certificate::Kind::kTrace;
    c.lhs = lambda_s.sum();
    c.rhs = target_trace;
    c.detail = "trace inequality violated";
    return Decision::make_infeasible(std::move(c));
  }

  const bool all_rank_one =
      std::all_of(ranks.begin(), ranks.end(), [](int r) { return r == 1; });
  if (all_rank_one && opts.allow_shortcuts) {
    RealVector x(targets.size());
    for (size_t i = 0; i < targets.size(); ++i) x(static_cast<Eigen::Index>(i)) = targets[i][0];
    if (weak_majorizes(lambda_s.values(), x, opts.tol)) return Decision::make_feasible();
    return Decision::make_infeasible(rank_one_certificate(lambda_s, x, 0.0, opts.tol));
  }

  std::vector<Spectrum> padded;
  padded.reserve(targets.size());
  for (const auto& t : targets) padded.push_back(pad_spectrum(t.values(), n, 0.0));
  return klyachko_feasible_dominated(lambda_s, padded, opts);
}

Decision block_feasible_unitary(const Spectrum& lambda_s,
                                const std::vector<Spectrum>& targets,
                                const std::vector<int>& ranks,
                                std::optional<ShiftParameter> alpha,
                                const KlyachkoOptions& opts) {
  const Eigen::Index n = lambda_s.size();
  if (targets.size() != ranks.size() || targets.empty()) {
    throw std::invalid_argument("block_feasible_unitary: targets/ranks mismatch");
  }
  Eigen::Index total = 0;
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (targets[i].size() != ranks[i]) {
      throw std::invalid_argument("block_feasible_unitary: target length mismatch");
    }
    total += ranks[i];
  }
  if (total != n) {
    throw std::invalid_argument("block_feasible_unitary: ranks must sum to the order");
  }

  double target_trace = 0.0;
  for (const auto& t : targets) target_trace += t.sum();
  if (std::abs(lambda_s.sum() - target_trace) > opts.tol) {
    Certificate c;
    c.kind = Certificate::Kind::kTrace;
    c.lhs = lambda_s.sum();
    c.rhs = target_trace;
    c.detail = "trace equality violated";
    return Decision::make_infeasible(std::move(c));
  }

  // compressions cannot move eigenvalues outside the spectral range
  for (size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].max() > lambda_s.max() + opts.tol ||
        targets[i].min() < lambda_s.min() - opts.tol) {
      Certificate c;
      c.kind = Certificate::Kind::kStructural;
      c.lhs = targets[i].max() > lambda_s.max() + opts.tol ? targets[i].max()
                                                           : targets[i].min();
      c.rhs = targets[i].max() > lambda_s.max() + opts.tol ? lambda_s.max()
                                                           : lambda_s.min();
      c.detail = "target eigenvalue outside the spectral range of S (block " +
                 std::to_string(i) + ")";
      return Decision::make_infeasible(std::move(c));
    }
  }

  const double shift = alpha ? alpha->alpha : spectral_norm_of(lambda_s);
  if (lambda_s.min() + shift < -default_tolerances().psd) {
    throw std::invalid_argument("block_feasible_unitary: shift does not make S psd");
  }

  const bool all_rank_one =
      std::all_of(ranks.begin(), ranks.end(), [](int r) { return r == 1; });
  if (all_rank_one && opts.allow_shortcuts) {
    RealVector x(targets.size());
    for (size_t i = 0; i < targets.size(); ++i) x(static_cast<Eigen::Index>(i)) = targets[i][0];
    if (majorizes(lambda_s.values(), x, opts.tol)) return Decision::make_feasible();
    return Decision::make_infeasible(rank_one_certificate(lambda_s, x, shift, opts.tol));
  }

  RealVector shifted0 = lambda_s.values().array() + shift;
  std::vector<Spectrum> padded;
  padded.reserve(targets.size());
  for (const auto& t : targets) padded.push_back(pad_spectrum(t.values(), n, shift));
  return klyachko_feasible_sum(Spectrum::from_sorted(std::move(shifted0)), padded, opts);
}

// ---------------------------------------------------------------------------
// witness constructions

std::vector<Unitary> witness_unitaries_from_contraction(const PsdMatrix& s,
                                                        const Contraction& v,
                                                        const ProjectionSystem& p,
                                                        const Tolerances& tol) {
  const Eigen::Index n = s.order();
  if (v.rows() != n || v.cols() != n || p.order() != n) {
    throw std::invalid_argument("witness_unitaries_from_contraction: order mismatch");
  }
  const Matrix shalf = psd_sqrt(s, tol);
  const Matrix sv = shalf * v.matrix();

  std::vector<Unitary> out;
  out.reserve(p.block_count());
  Matrix used = Matrix::Zero(n, n);
  for (int i = 0; i < p.block_count(); ++i) {
    Matrix t = Matrix::Zero(n, n);
    t.middleCols(p.offset(i), p.ranks()[i]) = sv.middleCols(p.offset(i), p.ranks()[i]);
    Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // V_i with V_i* (T*T) V_i = T T*
    Matrix vi = svd.matrixV() * svd.matrixU().adjoint();
    used += t * t.adjoint();
    out.emplace_back(std::move(vi), tol);
  }
  // sum_i V_i* (embedded block) V_i = sum_i T_i T_i* <= S
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix() - used, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.psd * matrix_scale(s.matrix())) {
    throw std::runtime_error(
        "witness_unitaries_from_contraction: precondition residual too large");
  }
  return out;
}

Contraction witness_contraction_from_unitaries(const PsdMatrix& s,
                                               const std::vector<PsdMatrix>& blocks,
                                               const std::vector<Unitary>& vs,
                                               const ProjectionSystem& p,
                                               const Tolerances& tol) {
  const Eigen::Index n = s.order();
  if (blocks.size() != vs.size() ||
      static_cast<int>(blocks.size()) != p.block_count() || p.order() != n) {
    throw std::invalid_argument("witness_contraction_from_unitaries: shape mismatch");
  }
  Matrix dominated = Matrix::Zero(n, n);
  Matrix r = Matrix::Zero(n, n);
  for (int i = 0; i < p.block_count(); ++i) {
    if (blocks[i].order() != p.ranks()[i] || vs[i].order() != n) {
      throw std::invalid_argument("witness_contraction_from_unitaries: block size mismatch");
    }
    const Matrix emb = embed_block(blocks[i].matrix(), p, i);
    dominated += vs[i].matrix().adjoint() * emb * vs[i].matrix();
    r += vs[i].matrix().adjoint() * embed_block(psd_sqrt(blocks[i], tol), p, i);
  }
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix() - dominated, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.psd * matrix_scale(s.matrix())) {
      throw std::invalid_argument(
          "witness_contraction_from_unitaries: operator inequality precondition violated");
    }
  }

  Matrix rr = r * r.adjoint();
  rr = 0.5 * (rr + rr.adjoint());
  const Contraction w = realize_dominance_contraction(PsdMatrix(rr, tol), s, tol);
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix align = svd.matrixU() * svd.matrixV().adjoint();  // U*(RR*)U = R*R
  Matrix vfinal = w.matrix() * align;

  // C_P(V* S V) must reproduce the blocks
  const Matrix comp = compress_matrix(p, vfinal.adjoint() * s.matrix() * vfinal);
  Matrix want = Matrix::Zero(n, n);
  for (int i = 0; i < p.block_count(); ++i) want += embed_block(blocks[i].matrix(), p, i);
  const double resid = max_abs(comp - want);
  if (resid > 1e4 * tol.witness * matrix_scale(s.matrix())) {
    throw std::runtime_error("witness_contraction_from_unitaries: compression residual " +
                             std::to_string(resid));
  }
  return Contraction(std::move(vfinal), tol);
}

// ---------------------------------------------------------------------------
// multiset splits (shared by the membership searches)

namespace {

// All ways to split a descending-sorted value vector into ordered groups of
// the given sizes.  Groups marked with the same tag are interchangeable;
// enumeration is canonicalized on the smallest used index per equal-tag
// group and deduplicated on values.
std::vector<std::vector<RealVector>> multiset_splits(const RealVector& values,
                                                     const std::vector<int>& sizes,
                                                     const std::vector<long>& tags,
                                                     long cap) {
  const int n = static_cast<int>(values.size());
  const int g = static_cast<int>(sizes.size());
  std::vector<std::vector<RealVector>> out;
  std::set<std::vector<double>> seen;
  std::vector<int> taken(n, 0);
  std::vector<std::vector<int>> chosen(g);

  auto flatten_key = [&]() {
    // group order normalized per tag by the value content
    std::vector<std::pair<long, std::vector<double>>> groups;
    for (int i = 0; i < g; ++i) {
      std::vector<double> vals;
      for (int idx : chosen[i]) vals.push_back(values(idx));
      groups.emplace_back(tags[i], std::move(vals));
    }
    std::sort(groups.begin(), groups.end());
    std::vector<double> key;
    for (auto& [tag, vals] : groups) {
      key.push_back(static_cast<double>(tag));
      key.insert(key.end(), vals.begin(), vals.end());
    }
    return key;
  };

  auto emit = [&]() {
    if (!seen.insert(flatten_key()).second) return;
    std::vector<RealVector> split(g);
    for (int i = 0; i < g; ++i) {
      RealVector v(sizes[i]);
      for (int k = 0; k < sizes[i]; ++k) v(k) = values(chosen[i][k]);
      split[i] = std::move(v);  // indices ascending = values descending
    }
    out.push_back(std::move(split));
  };

  auto pick_group = [&](auto&& self, int group) -> void {
    if (static_cast<long>(out.size()) >= cap) return;
    if (group == g) {
      emit();
      return;
    }
    // canonical ordering for interchangeable groups: the first index used by
    // this group must exceed the first index of the previous equal-tag group
    int floor_idx = 0;
    if (group > 0 && tags[group] == tags[group - 1] && !chosen[group - 1].empty()) {
      floor_idx = chosen[group - 1][0] + 1;
    }
    std::vector<int>& mine = chosen[group];
    auto rec = [&](auto&& inner, int start, int need) -> void {
      if (static_cast<long>(out.size()) >= cap) return;
      if (need == 0) {
        self(self, group + 1);
        return;
      }
      for (int idx = start; idx <= n - need; ++idx) {
        if (taken[idx]) continue;
        taken[idx] = 1;
        mine.push_back(idx);
        inner(inner, idx + 1, need - 1);
        mine.pop_back();
        taken[idx] = 0;
      }
    };
    rec(rec, floor_idx, sizes[group]);
  };
  pick_group(pick_group, 0);
  return out;
}

std::vector<double> grid_values(double lo, double hi, int resolution) {
  std::vector<double> out;
  if (resolution < 1 || hi <= lo) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i <= resolution; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / resolution);
  }
  return out;
}

// Sorted-descending vectors of the given length over the grid values.
void enumerate_sorted_vectors(const std::vector<double>& grid, int length,
                              std::vector<RealVector>& out, long cap) {
  RealVector cur(length);
  // non-increasing values: indices are picked from the top of the grid down
  auto rec = [&](auto&& self, int pos, size_t minidx) -> void {
    if (static_cast<long>(out.size()) >= cap) return;
    if (pos == length) {
      out.push_back(cur);
      return;
    }
    for (size_t i = minidx; i < grid.size(); ++i) {
      cur(pos) = grid[grid.size() - 1 - i];
      self(self, pos + 1, i);
      if (static_cast<long>(out.size()) >= cap) return;
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// partial traces of orbits

Decision partial_trace_feasible(const Spectrum& lambda_s, const Spectrum& target, int d,
                                int m, OrbitMode mode, const KlyachkoOptions& opts,
                                const GridOptions& grid) {
  if (d < 1 || m < 1) throw std::invalid_argument("partial_trace_feasible: need d, m >= 1");
  if (lambda_s.size() != static_cast<Eigen::Index>(d) * m) {
    throw std::invalid_argument("partial_trace_feasible: spectrum length must be d*m");
  }
  if (target.size() != d) {
    throw std::invalid_argument("partial_trace_feasible: target length must be d");
  }
  const bool contractive = (mode == OrbitMode::kContractive);
  if (contractive && lambda_s.min() < -default_tolerances().psd) {
    throw std::invalid_argument("partial_trace_feasible: contractive mode requires psd S");
  }

  // trace conditions
  if (contractive) {
    if (target.min() < -opts.tol) {
      Certificate c;
      c.kind = Certificate::Kind::kStructural;
      c.detail = "contractive mode requires a non-negative target spectrum";
      return Decision::make_infeasible(std::move(c));
    }
    if (target.sum() > lambda_s.sum() + opts.tol) {
      Certificate c;
      c.kind = Certificate::Kind::kTrace;
      c.lhs = lambda_s.sum();
      c.rhs = target.sum();
      c.detail = "trace inequality violated";
      return Decision::make_infeasible(std::move(c));
    }
  } else if (std::abs(target.sum() - lambda_s.sum()) > opts.tol) {
    Certificate c;
    c.kind = Certificate::Kind::kTrace;
    c.lhs = lambda_s.sum();
    c.rhs = target.sum();
    c.detail = "trace equality violated";
    return Decision::make_infeasible(std::move(c));
  }
  if (d == 1 && !contractive) return Decision::make_feasible();  // trace is everything

  // candidate intermediate spectra (lambda^1..lambda^m), each of length d
  const std::vector<int> sizes(m, d);
  const std::vector<long> tags(m, 0);  // all blocks interchangeable
  std::vector<std::vector<RealVector>> candidates =
      multiset_splits(lambda_s.values(), sizes, tags, grid.max_candidates);
  if (contractive && lambda_s.sum() > opts.tol) {
    const double scale_factor = std::max(0.0, target.sum()) / lambda_s.sum();
    const size_t base = candidates.size();
    for (size_t i = 0; i < base; ++i) {
      std::vector<RealVector> scaled = candidates[i];
      for (auto& v : scaled) v *= scale_factor;
      candidates.push_back(std::move(scaled));
    }
  }
  {
    // grid candidates, kept when the trace constraint can be met exactly
    const double want_total = contractive ? target.sum() : lambda_s.sum();
    std::vector<RealVector> vecs;
    enumerate_sorted_vectors(
        grid_values(contractive ? 0.0 : lambda_s.min(), lambda_s.max(), grid.resolution), d,
        vecs, grid.max_candidates);
    if (static_cast<long>(vecs.size()) < grid.max_candidates || m == 1) {
      std::vector<int> pick(m, 0);
      std::vector<std::vector<RealVector>> extra;
      auto rec = [&](auto&& self, int slot, int start, double total) -> void {
        if (static_cast<long>(extra.size()) + static_cast<long>(candidates.size()) >=
            grid.max_candidates) {
          return;
        }
        if (slot == m) {
          if (std::abs(total - want_total) <= opts.tol) {
            std::vector<RealVector> cand;
            for (int j : pick) cand.push_back(vecs[j]);
            extra.push_back(std::move(cand));
          }
          return;
        }
        for (int j = start; j < static_cast<int>(vecs.size()); ++j) {
          pick[slot] = j;
          self(self, slot + 1, j, total + vecs[j].sum());
        }
      };
      rec(rec, 0, 0, 0.0);
      for (auto& e : extra) candidates.push_back(std::move(e));
    }
  }
  if (static_cast<long>(candidates.size()) >= grid.max_candidates) {
    throw std::runtime_error("partial_trace_feasible: candidate cap exceeded; raise "
                             "GridOptions::max_candidates");
  }

  const std::vector<int> ranks(m, d);
  for (const auto& cand : candidates) {
    std::vector<Spectrum> spectra;
    spectra.reserve(m);
    bool ok = true;
    for (const auto& v : cand) {
      if (contractive && v.minCoeff() < -opts.tol) {
        ok = false;
        break;
      }
      spectra.push_back(Spectrum(v));
    }
    if (!ok) continue;
    // stage one: the tuple must be realizable as diagonal blocks of the orbit
    const Decision first =
        contractive ? block_feasible_contractive(lambda_s, spectra, ranks, opts)
                    : block_feasible_unitary(lambda_s, spectra, ranks, std::nullopt, opts);
    if (!first.feasible()) continue;
    // stage two: the target must be the spectrum of the block sum
    const Decision second = klyachko_feasible_sum(target, spectra, opts);
    if (second.feasible()) return Decision::make_feasible();
  }

  Certificate c;
  c.kind = Certificate::Kind::kStructural;
  c.detail = "no intermediate spectra found at resolution " +
             std::to_string(grid.resolution) + " (" + std::to_string(candidates.size()) +
             " candidates tried); infeasible at this resolution";
  Decision dec = Decision::make_infeasible(std::move(c));
  dec.exact = false;
  return dec;
}

// ---------------------------------------------------------------------------
// membership in the conditional-expectation image

namespace {

struct ParsedEta {
  std::vector<RealVector> group_sorted;  ///< per group, sorted descending
  std::vector<RealVector> lambda;        ///< per group, the d distinct run values
};

// eta must be constant on runs of length c inside each group
std::optional<int> check_eta_structure(const std::vector<RealVector>& groups,
                                       const SpectralList& l, double tol,
                                       ParsedEta& parsed) {
  for (int g = 0; g < l.group_count(); ++g) {
    const auto [d, c] = l.entries()[g];
    const RealVector& v = groups[g];
    RealVector lam(d);
    for (int r = 0; r < d; ++r) {
      const double head = v(r * c);
      for (int j = 1; j < c; ++j) {
        if (std::abs(v(r * c + j) - head) > tol) return g;
      }
      lam(r) = head;
    }
    parsed.lambda.push_back(std::move(lam));
  }
  return std::nullopt;
}

}  // namespace

Decision membership_mb(const RealVector& eta, const HermitianMatrix& b,
                       const SpectralList& l, OrbitMode mode, const KlyachkoOptions& opts,
                       const GridOptions& grid) {
  const Eigen::Index n = l.order();
  if (b.order() != n || eta.size() != n) {
    throw std::invalid_argument("membership_mb: order mismatch");
  }
  const bool contractive = (mode == OrbitMode::kContractive);
  const EigSorted eig_b = eig_sorted(b);
  const Spectrum& lambda_b = eig_b.spectrum;
  if (contractive && lambda_b.min() < -default_tolerances().psd * matrix_scale(b.matrix())) {
    throw std::invalid_argument("membership_mb: contractive mode requires psd B");
  }

  // split eta by groups, sort each group
  ParsedEta parsed;
  {
    int off = 0;
    for (int g = 0; g < l.group_count(); ++g) {
      const auto [d, c] = l.entries()[g];
      parsed.group_sorted.push_back(sorted_desc(eta.segment(off, d * c)));
      off += d * c;
    }
  }
  if (contractive) {
    for (int g = 0; g < l.group_count(); ++g) {
      if (parsed.group_sorted[g].minCoeff() < -opts.tol) {
        Certificate c;
        c.kind = Certificate::Kind::kStructural;
        c.detail = "negative entry in group " + std::to_string(g) +
                   " (contractive membership requires non-negative spectra)";
        return Decision::make_infeasible(std::move(c));
      }
    }
  }
  if (auto bad = check_eta_structure(parsed.group_sorted, l, opts.tol, parsed)) {
    Certificate c;
    c.kind = Certificate::Kind::kStructural;
    c.detail = "eta is not constant on the multiplicity runs of group " +
               std::to_string(*bad);
    return Decision::make_infeasible(std::move(c));
  }

  double eta_total = 0.0;
  for (const auto& v : parsed.group_sorted) eta_total += v.sum();
  if (contractive) {
    if (eta_total > b.trace() + opts.tol) {
      Certificate c;
      c.kind = Certificate::Kind::kTrace;
      c.lhs = b.trace();
      c.rhs = eta_total;
      c.detail = "trace inequality violated";
      return Decision::make_infeasible(std::move(c));
    }
  } else if (std::abs(eta_total - b.trace()) > opts.tol) {
    Certificate c;
    c.kind = Certificate::Kind::kTrace;
    c.lhs = b.trace();
    c.rhs = eta_total;
    c.detail = "trace equality violated";
    return Decision::make_infeasible(std::move(c));
  }

  auto make_chain = [&](const std::vector<RealVector>& mu) {
    MembershipChain chain{l, mu, parsed.lambda, eta};
    return chain;
  };

  const std::vector<int> flat = l.flat_ranks();
  if (l.multiplicity_free()) {
    // the chain collapses: mu = lambda, one exact feasibility question
    std::vector<Spectrum> targets;
    std::vector<RealVector> mu;
    for (const auto& lam : parsed.lambda) {
      targets.push_back(Spectrum::from_sorted(lam));
      mu.push_back(lam);
    }
    Decision dec = contractive
                       ? block_feasible_contractive(lambda_b, targets, flat, opts)
                       : block_feasible_unitary(lambda_b, targets, flat, std::nullopt, opts);
    if (dec.feasible()) dec.chain = make_chain(mu);
    return dec;
  }

  // general case: search the intermediate fine-block spectra mu
  const int fine_count = l.c_total();
  std::vector<std::vector<RealVector>> candidates;
  {
    // seeds: the fine diagonal blocks of B itself
    ProjectionSystem p(flat);
    std::vector<RealVector> natural;
    for (int i = 0; i < p.block_count(); ++i) {
      const Matrix blk = b.matrix().block(p.offset(i), p.offset(i), flat[i], flat[i]);
      natural.push_back(
          eig_sorted(HermitianMatrix(0.5 * (blk + blk.adjoint()))).spectrum.values());
    }
    candidates.push_back(std::move(natural));
    // seeds: splits of the spectrum of B into the fine blocks
    std::vector<int> sizes = flat;
    std::vector<long> tags(fine_count);
    {
      int fi = 0;
      for (int g = 0; g < l.group_count(); ++g) {
        for (int j = 0; j < l.entries()[g].c; ++j) tags[fi++] = g;
      }
    }
    for (auto& split : multiset_splits(lambda_b.values(), sizes, tags,
                                       grid.max_candidates / 2)) {
      candidates.push_back(std::move(split));
    }
    // grid candidates per group with multiplicity > 1, groups combined
    // independently is too large in general; grid vectors are only attached
    // groupwise around the forced lambda when the group totals allow it
    std::vector<std::vector<std::vector<RealVector>>> per_group(l.group_count());
    bool grid_ok = true;
    for (int g = 0; g < l.group_count() && grid_ok; ++g) {
      const auto [d, c] = l.entries()[g];
      if (c == 1) {
        per_group[g] = {{parsed.lambda[g]}};
        continue;
      }
      const double group_total = c * parsed.lambda[g].sum();
      std::vector<RealVector> vecs;
      enumerate_sorted_vectors(grid_values(lambda_b.min(), lambda_b.max(), grid.resolution),
                               d, vecs, grid.max_candidates);
      std::vector<std::vector<RealVector>> combos;
      std::vector<int> pick(c, 0);
      auto rec = [&](auto&& self, int slot, int start, double total) -> void {
        if (static_cast<long>(combos.size()) >= grid.max_candidates / 4) return;
        if (slot == c) {
          if (std::abs(total - group_total) <= opts.tol) {
            std::vector<RealVector> cand;
            for (int j : pick) cand.push_back(vecs[j]);
            combos.push_back(std::move(cand));
          }
          return;
        }
        for (int j = start; j < static_cast<int>(vecs.size()); ++j) {
          pick[slot] = j;
          self(self, slot + 1, j, total + vecs[j].sum());
        }
      };
      rec(rec, 0, 0, 0.0);
      if (combos.empty()) grid_ok = false;
      per_group[g] = std::move(combos);
    }
    if (grid_ok) {
      // cartesian product across groups, capped
      std::vector<std::vector<RealVector>> acc = {{}};
      for (int g = 0; g < l.group_count(); ++g) {
        std::vector<std::vector<RealVector>> next;
        for (const auto& pre : acc) {
          for (const auto& gp : per_group[g]) {
            if (static_cast<long>(next.size()) + static_cast<long>(candidates.size()) >=
                grid.max_candidates) {
              break;
            }
            auto merged = pre;
            merged.insert(merged.end(), gp.begin(), gp.end());
            next.push_back(std::move(merged));
          }
        }
        acc.swap(next);
      }
      for (auto& cand : acc) candidates.push_back(std::move(cand));
    }
  }

  bool search_complete = true;
  if (static_cast<long>(candidates.size()) >= grid.max_candidates) search_complete = false;

  for (const auto& mu : candidates) {
    if (static_cast<int>(mu.size()) != fine_count) continue;
    bool ok = true;
    std::vector<Spectrum> mu_spec;
    for (int i = 0; i < fine_count && ok; ++i) {
      if (mu[i].size() != flat[i]) ok = false;
      if (ok && contractive && mu[i].minCoeff() < -opts.tol) ok = false;
      if (ok) {
        RealVector v = sorted_desc(mu[i]);
        mu_spec.push_back(Spectrum::from_sorted(std::move(v)));
      }
    }
    if (!ok) continue;
    // per-group sum conditions: c(g) * lambda_g must be the spectrum of the
    // sum of the group's fine blocks
    for (int g = 0; g < l.group_count() && ok; ++g) {
      const auto [d, c] = l.entries()[g];
      if (c == 1) {
        // the single-summand condition forces mu = lambda exactly
        const int fi = l.group_start(g);
        ok = (mu_spec[fi].values() - parsed.lambda[g]).cwiseAbs().maxCoeff() <= opts.tol;
        continue;
      }
      RealVector scaled = parsed.lambda[g] * static_cast<double>(c);
      std::vector<Spectrum> group_mu;
      for (int j = 0; j < c; ++j) group_mu.push_back(mu_spec[l.group_start(g) + j]);
      ok = klyachko_feasible_sum(Spectrum::from_sorted(std::move(scaled)), group_mu, opts)
               .feasible();
    }
    if (!ok) continue;
    // global condition: mu must be realizable as the fine diagonal blocks
    std::vector<Spectrum> targets = mu_spec;
    const Decision global =
        contractive ? block_feasible_contractive(lambda_b, targets, flat, opts)
                    : block_feasible_unitary(lambda_b, targets, flat, std::nullopt, opts);
    if (global.feasible()) {
      Decision dec = Decision::make_feasible();
      std::vector<RealVector> mu_values;
      for (const auto& s : mu_spec) mu_values.push_back(s.values());
      dec.chain = make_chain(mu_values);
      return dec;
    }
  }

  Certificate c;
  c.kind = Certificate::Kind::kStructural;
  c.detail = "no intermediate block spectra found (" + std::to_string(candidates.size()) +
             " candidates" + (search_complete ? "" : ", search truncated") +
             "); infeasible at this resolution";
  Decision dec = Decision::make_infeasible(std::move(c));
  dec.exact = false;
  return dec;
}

// ---------------------------------------------------------------------------
// extended majorization

namespace {

Decision ext_majorizes_impl(const HermitianMatrix& a, const HermitianMatrix& b,
                            const SpectralList& l, OrbitMode mode,
                            const KlyachkoOptions& opts, const GridOptions& grid) {
  if (a.order() != b.order() || a.order() != l.order()) {
    throw std::invalid_argument("ext_majorizes: order mismatch");
  }
  const Spectrum lambda_a = eig_sorted(a).spectrum;

  std::vector<int> sizes;
  std::vector<long> tags;
  for (int g = 0; g < l.group_count(); ++g) {
    const auto [d, c] = l.entries()[g];
    sizes.push_back(d * c);
    tags.push_back(static_cast<long>(d) * 100000 + c);
  }
  const auto splits = multiset_splits(lambda_a.values(), sizes, tags, 1000000);

  std::optional<Decision> first_infeasible;
  bool all_exact = true;
  long structural = 0;
  for (const auto& split : splits) {
    RealVector eta(l.order());
    int off = 0;
    for (int g = 0; g < l.group_count(); ++g) {
      eta.segment(off, sizes[g]) = split[g];
      off += sizes[g];
    }
    Decision dec = membership_mb(eta, b, l, mode, opts, grid);
    if (dec.feasible()) return dec;
    if (dec.certificate && dec.certificate->kind == Certificate::Kind::kStructural &&
        dec.exact) {
      ++structural;
    }
    all_exact = all_exact && dec.exact;
    if (!first_infeasible) first_infeasible = std::move(dec);
  }

  Decision out = first_infeasible ? *first_infeasible
                                  : Decision::make_infeasible(Certificate{
                                        Certificate::Kind::kStructural,
                                        "spectrum cannot be arranged on the block structure",
                                        0.0, 0.0, std::nullopt});
  out.exact = all_exact;
  if (out.certificate) {
    out.certificate->detail += " [no assignment of the spectrum onto the block structure "
                               "is feasible; " +
                               std::to_string(splits.size()) + " tried]";
  }
  return out;
}

}  // namespace

Decision ext_majorizes(const HermitianMatrix& a, const HermitianMatrix& b,
                       const SpectralList& l, const KlyachkoOptions& opts,
                       const GridOptions& grid) {
  return ext_majorizes_impl(a, b, l, OrbitMode::kUnitary, opts, grid);
}

Decision ext_submajorizes(const PsdMatrix& a, const PsdMatrix& b, const SpectralList& l,
                          const KlyachkoOptions& opts, const GridOptions& grid) {
  return ext_majorizes_impl(a.hermitian(), b.hermitian(), l, OrbitMode::kContractive, opts,
                            grid);
}

// ---------------------------------------------------------------------------
// witness assembly for extended majorization

ExpectationWitnessResult construct_expectation_witness(const HermitianMatrix& a,
                                                       const HermitianMatrix& b,
                                                       const SpectralList& l,
                                                       const OracleBudget& budget,
                                                       const KlyachkoOptions& opts,
                                                       const GridOptions& grid) {
  ExpectationWitnessResult result;
  result.decision = ext_majorizes(a, b, l, opts, grid);
  if (!result.decision.feasible()) {
    result.status = WitnessStatus::kInfeasible;
    return result;
  }
  const MembershipChain& chain = *result.decision.chain;
  const Eigen::Index n = l.order();
  const std::vector<int> flat = l.flat_ranks();
  ProjectionSystem p(flat);
  const Tolerances& tol = default_tolerances();

  // target realization inside the algebra: per group, diag(lambda) repeated
  Matrix realized = Matrix::Zero(n, n);
  for (int g = 0; g < l.group_count(); ++g) {
    const auto [d, c] = l.entries()[g];
    const int base = l.group_offset(g);
    for (int j = 0; j < c; ++j) {
      realized.block(base + j * d, base + j * d, d, d) =
          chain.lambda[g].cast<Complex>().asDiagonal();
    }
  }

  const EigSorted eig_b = eig_sorted(b);

  // maximal abelian case: the classical diagonal construction is exact
  const bool maximal_abelian =
      l.multiplicity_free() &&
      std::all_of(l.entries().begin(), l.entries().end(),
                  [](const SpectralList::Entry& e) { return e.d == 1; });
  if (maximal_abelian) {
    const RealVector diag_target = realized.diagonal().real();
    const HermitianMatrix target =
        schur_horn_construct(diag_target, eig_b.spectrum.values(), tol);
    const EigSorted eig_t = eig_sorted(target);
    Matrix u = eig_b.vectors.matrix() * eig_t.vectors.matrix().adjoint();
    const Matrix conjugated = u.adjoint() * b.matrix() * u;
    ExpectationWitness w{Unitary(std::move(u), tol), realized,
                         max_abs(tce(l, conjugated) - realized)};
    result.witness = std::move(w);
    result.status = WitnessStatus::kFound;
    return result;
  }

  // stage one: realize the fine block spectra by a unitary F
  std::vector<Spectrum> mu;
  for (const auto& v : chain.mu) mu.push_back(Spectrum(v));
  const BlockCompressionOutcome stage1 =
      realize_block_compression(b, mu, flat, OrbitMode::kUnitary, budget);
  if (stage1.status != OracleStatus::kWitnessFound) {
    result.status = WitnessStatus::kInconclusive;
    return result;
  }
  const Matrix f = stage1.x;
  const Matrix compressed = f.adjoint() * b.matrix() * f;

  // stage two: per group, transport the fine blocks onto c copies of
  // diag(lambda) via prescribed-spectra sums
  Matrix w_assembled = Matrix::Zero(n, n);
  for (int g = 0; g < l.group_count(); ++g) {
    const auto [d, c] = l.entries()[g];
    std::vector<Matrix> block_eigvecs(c);
    std::vector<Spectrum> block_spectra;
    for (int j = 0; j < c; ++j) {
      const int fi = l.group_start(g) + j;
      const Matrix blk =
          compressed.block(p.offset(fi), p.offset(fi), flat[fi], flat[fi]);
      const EigSorted e = eig_sorted(HermitianMatrix(0.5 * (blk + blk.adjoint()), tol));
      block_eigvecs[j] = e.vectors.matrix();
      block_spectra.push_back(e.spectrum);
    }
    std::vector<Matrix> rotations(c);
    if (c == 1) {
      rotations[0] = block_eigvecs[0];
    } else {
      RealVector scaled = chain.lambda[g] * static_cast<double>(c);
      OracleBudget group_budget = budget;
      group_budget.seed = derive_seed(budget.seed, 1000 + g);
      const SpectraSumOutcome sum = realize_spectra_sum(
          Spectrum::from_sorted(std::move(scaled)), block_spectra, group_budget);
      if (sum.status != OracleStatus::kWitnessFound) {
        result.status = WitnessStatus::kInconclusive;
        return result;
      }
      for (int j = 0; j < c; ++j) {
        rotations[j] = block_eigvecs[j] * sum.unitaries[j].matrix().adjoint();
      }
    }
    for (int j = 0; j < c; ++j) {
      const int fi = l.group_start(g) + j;
      w_assembled.block(p.offset(fi), p.offset(fi), flat[fi], flat[fi]) = rotations[j];
    }
  }

  Matrix u = f * w_assembled;
  const Matrix conjugated = u.adjoint() * b.matrix() * u;
  ExpectationWitness w{Unitary(std::move(u), tol), realized,
                       max_abs(tce(l, conjugated) - realized)};
  result.witness = std::move(w);
  result.status = WitnessStatus::kFound;
  return result;
}

// ---------------------------------------------------------------------------
// the block Fourier flattening

NcHornResult nc_horn_lemma(const PsdMatrix& a, int d, int m, const Tolerances& tol) {
  if (d < 1 || m < 1 || a.order() != static_cast<Eigen::Index>(d) * m) {
    throw std::invalid_argument("nc_horn_lemma: order must factor as d*m");
  }
  const EigSorted eig_a = eig_sorted(a.hermitian(), tol);

  // block Fourier unitary from the primitive m-th root of unity
  Matrix vt(m, m);
  const double twopi = 6.283185307179586476925286766559;
  for (int j = 1; j <= m; ++j) {
    for (int k = 1; k <= m; ++k) {
      const double angle = twopi * static_cast<double>(j) * (k - 1) / m;
      vt(j - 1, k - 1) = Complex(std::cos(angle), std::sin(angle)) / std::sqrt(double(m));
    }
  }
  const Matrix v = kron(Matrix::Identity(d, d), vt);
  Matrix u_mat = eig_a.vectors.matrix() * v;  // diagonalize first, then mix
  Unitary u(u_mat, tol);

  // D = sum of the diagonal chunks of the sorted spectrum
  RealVector dvals = RealVector::Zero(d);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < d; ++k) dvals(k) += eig_a.spectrum[j * d + k];
  }
  // chunks of a sorted vector need not stay sorted after summing
  PsdMatrix dmat(Matrix(sorted_desc(dvals).cast<Complex>().asDiagonal()), tol);

  const Matrix conjugated = u_mat.adjoint() * a.matrix() * u_mat;
  double block_residual = 0.0;
  {
    Matrix ref = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) ref(k, k) = dvals(k) / m;
    for (int i = 0; i < m; ++i) {
      block_residual =
          std::max(block_residual, max_abs(conjugated.block(i * d, i * d, d, d) - ref));
    }
  }

  // factors of the average decomposition via the converse witness chain
  ProjectionSystem p(std::vector<int>(m, d));
  const std::vector<Unitary> vs =
      witness_unitaries_from_contraction(a, Contraction(u_mat, tol), p, tol);
  NcHornResult result{std::move(u), std::move(dmat), {}, {}, block_residual};
  // rebuild the factor square roots from the actual compressed blocks so the
  // average decomposition reproduces A to machine precision
  for (int i = 0; i < m; ++i) {
    const Matrix ui = vs[i].matrix().adjoint();
    Matrix blk = conjugated.block(i * d, i * d, d, d);
    blk = 0.5 * (blk + blk.adjoint());
    const Matrix bhalf = psd_sqrt(PsdMatrix(Matrix(double(m) * blk), tol), tol);
    result.factors.push_back(ui.middleCols(i * d, d) * bhalf);
    result.unitaries.emplace_back(ui, tol);
  }
  return result;
}

// ---------------------------------------------------------------------------
// non-convexity witness

CounterexampleResult convexity_counterexample(int n, const std::vector<int>& ranks,
                                              const KlyachkoOptions& opts) {
  if (n < 2) throw std::invalid_argument("convexity_counterexample: need n >= 2");
  if (ranks.empty() || ranks[0] < 2) {
    throw std::invalid_argument(
        "convexity_counterexample: the first block must have dimension >= 2 (rank-one "
        "systems give a convex image)");
  }
  ProjectionSystem p(ranks);
  if (p.order() != n) {
    throw std::invalid_argument("convexity_counterexample: ranks must sum to n");
  }

  Matrix s_mat = Matrix::Zero(n, n);
  s_mat(0, 0) = 2.0;
  s_mat(1, 1) = 4.0;
  Matrix v_mat = Matrix::Identity(n, n);
  v_mat(0, 0) = 0.0;
  v_mat(1, 1) = 0.0;
  v_mat(0, 1) = 1.0;
  v_mat(1, 0) = 1.0;

  const Matrix cs = compress_matrix(p, s_mat);
  const Matrix cvs = compress_matrix(p, v_mat.adjoint() * s_mat * v_mat);
  const Matrix t = 0.5 * (cs + cvs);

  PsdMatrix s(s_mat);
  Unitary v(v_mat);
  const Spectrum lambda_s = eig_sorted(s.hermitian()).spectrum;
  std::vector<Spectrum> targets;
  for (int i = 0; i < p.block_count(); ++i) {
    const Matrix blk = t.block(p.offset(i), p.offset(i), p.ranks()[i], p.ranks()[i]);
    targets.push_back(eig_sorted(HermitianMatrix(blk)).spectrum);
  }
  Decision dec = block_feasible_unitary(lambda_s, targets, ranks, std::nullopt, opts);
  const double avg_resid = max_abs(t - 0.5 * (cs + cvs));
  return CounterexampleResult{std::move(s), std::move(v), t, avg_resid, std::move(dec)};
}

// ---------------------------------------------------------------------------
// convexity inequalities

bool jensen_check(const ScalarFunction& f, const HermitianMatrix& a,
                  const ProjectionSystem& p, const Tolerances& tol) {
  if (a.order() != p.order()) throw std::invalid_argument("jensen_check: order mismatch");
  const HermitianMatrix fa = apply_function(f, a, tol);
  const Matrix lhs = compress_matrix(p, fa.matrix());

  const BlockDiagonal ca = compress(p, a.matrix());
  BlockDiagonal fca;
  for (const Matrix& blk : ca.blocks) {
    fca.blocks.push_back(
        apply_function(f, HermitianMatrix(0.5 * (blk + blk.adjoint()), tol), tol).matrix());
  }
  return spectrally_dominates(HermitianMatrix(lhs, tol),
                              HermitianMatrix(fca.assemble(), tol), tol);
}

Contraction monotone_transport(const ScalarFunction& f, const PsdMatrix& b,
                               const Contraction& w, const ProjectionSystem& p,
                               const Tolerances& tol) {
  const Eigen::Index n = b.order();
  if (w.rows() != n || w.cols() != n || p.order() != n) {
    throw std::invalid_argument("monotone_transport: order mismatch");
  }
  if (std::abs(f(0.0)) > 1e-12) {
    throw std::invalid_argument("monotone_transport: f(0) must vanish");
  }

  const Matrix y = w.matrix().adjoint() * b.matrix() * w.matrix();
  const BlockDiagonal ablocks = compress(p, y);

  const HermitianMatrix fb = apply_function(f, b.hermitian(), tol);
  const PsdMatrix fb_psd(fb, tol);
  const Matrix fb_half = psd_sqrt(fb_psd, tol);

  std::vector<PsdMatrix> f_blocks;
  std::vector<Unitary> transported;
  for (int i = 0; i < p.block_count(); ++i) {
    const int d = p.ranks()[i];
    Matrix blk = 0.5 * (ablocks.blocks[i] + ablocks.blocks[i].adjoint());
    const HermitianMatrix fai =
        apply_function(f, HermitianMatrix(std::move(blk), tol), tol);
    f_blocks.emplace_back(fai, tol);

    Matrix x = Matrix::Zero(n, n);
    x.middleCols(p.offset(i), d) = w.matrix().middleCols(p.offset(i), d);
    const Matrix t = fb_half * x;
    Matrix tst = t.adjoint() * t;
    tst = 0.5 * (tst + tst.adjoint());
    const Matrix fembed = embed_block(fai.matrix(), p, i);

    const HermitianMatrix lhs(fembed, tol);
    const HermitianMatrix rhs(tst, tol);
    if (!spectrally_dominates(rhs, lhs, tol)) {
      throw std::runtime_error("monotone_transport: dominance failed at block " +
                               std::to_string(i));
    }
    const Unitary vi = align_order(lhs, rhs, tol);
    Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix utrans = svd.matrixU() * svd.matrixV().adjoint();  // U (T*T) U* = TT*
    transported.emplace_back(Matrix((utrans * vi.matrix()).adjoint()), tol);
  }

  return witness_contraction_from_unitaries(fb_psd, f_blocks, transported, p, tol);
}

// ---------------------------------------------------------------------------
// the doubled-order decomposition

namespace {

Matrix range_projection(const HermitianMatrix& x, const Tolerances& tol) {
  const EigSorted e = eig_sorted(x, tol);
  const double cutoff = tol.rank_cutoff * matrix_scale(x.matrix());
  Matrix q = Matrix::Zero(x.order(), x.order());
  for (Eigen::Index k = 0; k < x.order(); ++k) {
    if (std::abs(e.spectrum[k]) > cutoff) {
      q += e.vectors.matrix().col(k) * e.vectors.matrix().col(k).adjoint();
    }
  }
  return q;
}

// unitary U with Q U = Q U11 where Q is the range projection of fX and
// Q U11 is a partial isometry
Matrix complete_partial_isometry(const Matrix& u11, const Matrix& q) {
  const Matrix k = q * u11;
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

BourinResult bourin_fallback(const ScalarFunction& f, const PsdMatrix& a,
                             const PsdMatrix& b, const OracleBudget& budget,
                             const Tolerances& tol) {
  const Eigen::Index n = a.order();
  const Matrix fa = apply_function(f, a.hermitian(), tol).matrix();
  const Matrix fb = apply_function(f, b.hermitian(), tol).matrix();
  const Matrix fab =
      apply_function(f, HermitianMatrix(a.matrix() + b.matrix(), tol), tol).matrix();

  auto negativity = [&](const Matrix& u, const Matrix& v, Matrix* subgrad) {
    Matrix resid = fab - u.adjoint() * fa * u - v.adjoint() * fb * v;
    resid = 0.5 * (resid + resid.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(resid);
    double h = 0.0;
    if (subgrad) *subgrad = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double lam = es.eigenvalues()(k);
      if (lam < 0) {
        h += lam * lam;
        if (subgrad) {
          *subgrad += 2.0 * lam * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
        }
      }
    }
    return h;
  };

  Matrix best_u = Matrix::Identity(n, n), best_v = Matrix::Identity(n, n);
  double best_min = -std::numeric_limits<double>::infinity();
  auto lambda_min_of = [&](const Matrix& u, const Matrix& v) {
    Matrix resid = fab - u.adjoint() * fa * u - v.adjoint() * fb * v;
    resid = 0.5 * (resid + resid.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(resid, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };

  for (int restart = 0; restart < budget.restarts; ++restart) {
    std::mt19937_64 rng(derive_seed(budget.seed ^ 0xb0a1u, restart));
    Matrix u = restart == 0 ? Matrix::Identity(n, n)
                            : random_unitary(static_cast<int>(n), rng).matrix();
    Matrix v = restart == 0 ? Matrix::Identity(n, n)
                            : random_unitary(static_cast<int>(n), rng).matrix();
    double step = budget.initial_step;
    Matrix ngrad;
    double h = negativity(u, v, &ngrad);
    for (int it = 0; it < budget.iterations && h > 1e-22; ++it) {
      // gradients of h wrt U, V (Euclidean): -2 fX U N with N the negative part
      const Matrix gu = -2.0 * fa * u * ngrad;
      const Matrix gv = -2.0 * fb * v * ngrad;
      const Matrix du = 0.5 * (u.adjoint() * gu - gu.adjoint() * u);
      const Matrix dv = 0.5 * (v.adjoint() * gv - gv.adjoint() * v);
      bool accepted = false;
      while (step > 1e-14) {
        Eigen::SelfAdjointEigenSolver<Matrix> eu((du / Complex(0, 1)).eval());
        // exponential retraction on both factors
        Matrix ut, vt;
        {
          Eigen::VectorXcd ph(n);
          for (Eigen::Index k = 0; k < n; ++k) {
            ph(k) = std::exp(Complex(0, -step * eu.eigenvalues()(k)));
          }
          ut = u * (eu.eigenvectors() * ph.asDiagonal() * eu.eigenvectors().adjoint());
        }
        Eigen::SelfAdjointEigenSolver<Matrix> ev((dv / Complex(0, 1)).eval());
        {
          Eigen::VectorXcd ph(n);
          for (Eigen::Index k = 0; k < n; ++k) {
            ph(k) = std::exp(Complex(0, -step * ev.eigenvalues()(k)));
          }
          vt = v * (ev.eigenvectors() * ph.asDiagonal() * ev.eigenvectors().adjoint());
        }
        Matrix ng;
        const double ht = negativity(ut, vt, &ng);
        if (ht < h) {
          u = ut;
          v = vt;
          h = ht;
          ngrad = ng;
          step *= 1.3;
          accepted = true;
          break;
        }
        step *= 0.4;
      }
      if (!accepted) break;
    }
    const double lm = lambda_min_of(u, v);
    if (lm > best_min) {
      best_min = lm;
      best_u = u;
      best_v = v;
    }
    if (best_min >= -tol.psd) break;
  }
  BourinResult out{Unitary(best_u, tol), Unitary(best_v, tol), best_min};
  return out;
}

}  // namespace

BourinResult bourin_decomposition(const ScalarFunction& f, const PsdMatrix& a,
                                  const PsdMatrix& b, const OracleBudget& budget,
                                  const Tolerances& tol) {
  const Eigen::Index n = a.order();
  if (b.order() != n) throw std::invalid_argument("bourin_decomposition: order mismatch");
  if (std::abs(f(0.0)) > 1e-12) {
    throw std::invalid_argument("bourin_decomposition: f(0) must vanish");
  }

  try {
    const Matrix apb = a.matrix() + b.matrix();
    const PsdMatrix sum(Matrix(apb), tol);
    const EigSorted es = eig_sorted(sum.hermitian(), tol);
    const double cutoff = tol.rank_cutoff * matrix_scale(sum.matrix());
    RealVector inv_half(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      inv_half(k) =
          es.spectrum[k] > cutoff ? 1.0 / std::sqrt(es.spectrum[k]) : 0.0;
    }
    const Matrix pinv_half = es.vectors.matrix() * inv_half.cast<Complex>().asDiagonal() *
                             es.vectors.matrix().adjoint();

    Matrix m2 = Matrix::Zero(2 * n, 2 * n);
    m2.topLeftCorner(n, n) = sum.matrix();
    Matrix w2 = Matrix::Zero(2 * n, 2 * n);
    w2.topLeftCorner(n, n) = pinv_half * psd_sqrt(a, tol);
    w2.block(0, n, n, n) = pinv_half * psd_sqrt(b, tol);

    ProjectionSystem p2({static_cast<int>(n), static_cast<int>(n)});
    const PsdMatrix m2_psd(m2, tol);
    const Contraction w2c(w2, tol);
    // compression check: C_P(W* M W) = A (+) B
    {
      const Matrix got = compress_matrix(p2, w2.adjoint() * m2 * w2);
      Matrix want = Matrix::Zero(2 * n, 2 * n);
      want.topLeftCorner(n, n) = a.matrix();
      want.block(n, n, n, n) = b.matrix();
      if (max_abs(got - want) > 1e4 * tol.witness * matrix_scale(m2)) {
        throw std::runtime_error("bourin: embedding compression defect");
      }
    }

    const Contraction wt = monotone_transport(f, m2_psd, w2c, p2, tol);
    const HermitianMatrix fm2 = apply_function(f, m2_psd.hermitian(), tol);
    const std::vector<Unitary> vs =
        witness_unitaries_from_contraction(PsdMatrix(fm2, tol), wt, p2, tol);

    const HermitianMatrix fa = apply_function(f, a.hermitian(), tol);
    const HermitianMatrix fb = apply_function(f, b.hermitian(), tol);

    // completion: extract the top-left blocks and lift the partial isometries
    auto complete = [&](const Unitary& ut, const HermitianMatrix& fx, int which) {
      const Matrix u_w1 = ut.matrix().block(which * n, 0, n, n);
      const Matrix q = range_projection(fx, tol);
      const Matrix uc = complete_partial_isometry(u_w1, q);
      // the completion must reproduce the compressed block
      const Matrix lhs = uc.adjoint() * fx.matrix() * uc;
      const Matrix rhs = u_w1.adjoint() * fx.matrix() * u_w1;
      if (max_abs(lhs - rhs) > 1e4 * tol.witness * matrix_scale(fx.matrix())) {
        throw std::runtime_error("bourin: partial isometry completion defect");
      }
      return uc;
    };
    const Matrix u_final = complete(vs[0], fa, 0);
    const Matrix v_final = complete(vs[1], fb, 1);

    Matrix resid = apply_function(f, HermitianMatrix(Matrix(apb), tol), tol).matrix() -
                   u_final.adjoint() * fa.matrix() * u_final -
                   v_final.adjoint() * fb.matrix() * v_final;
    resid = 0.5 * (resid + resid.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> esr(resid, Eigen::EigenvaluesOnly);
    return BourinResult{Unitary(u_final, tol), Unitary(v_final, tol),
                        esr.eigenvalues().minCoeff()};
  } catch (const std::runtime_error&) {
    return bourin_fallback(f, a, b, budget, tol);
  }
}

}  // namespace specmaj
