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

#include "specmaj/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace specmaj {

namespace {

RealVector sorted_desc(const RealVector& v) {
  RealVector s = v;
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return s;
}

}  // namespace

bool weak_majorizes(const RealVector& y, const RealVector& x, double tol) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("weak_majorizes: length mismatch");
  }
  const RealVector xs = sorted_desc(x), ys = sorted_desc(y);
  double sx = 0.0, sy = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    sx += xs(k);
    sy += ys(k);
    if (sx > sy + tol) return false;
  }
  return true;
}

bool majorizes(const RealVector& y, const RealVector& x, double tol) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("majorizes: length mismatch");
  }
  if (std::abs(x.sum() - y.sum()) > tol) return false;
  return weak_majorizes(y, x, tol);
}

HermitianMatrix schur_horn_construct(const RealVector& x, const RealVector& y,
                                     const Tolerances& tol) {
  const Eigen::Index n = x.size();
  if (y.size() != n) {
    throw std::invalid_argument("schur_horn_construct: length mismatch");
  }
  if (!majorizes(y, x, tol.majorization)) {
    throw std::invalid_argument("schur_horn_construct: x is not majorized by y");
  }
  if (n == 0) return HermitianMatrix(Matrix(0, 0), tol);

  // sort the targets, remember how to undo it
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return x(a) > x(b); });

  Matrix a = sorted_desc(y).asDiagonal().toDenseMatrix().cast<Complex>();

  // Active positions carry the eigenvalues still to be consumed; the active
  // principal submatrix stays diagonal throughout, so each step reduces to a
  // 2x2 rotation mixing one pair of active values.  Each step fixes the
  // current largest target at the position chosen by the pivot search, so
  // the landing position of every target is recorded for the final
  // reordering.
  std::vector<Eigen::Index> active(n);
  std::iota(active.begin(), active.end(), 0);
  std::vector<double> vals(a.rows());
  std::vector<Eigen::Index> target_at(n, n - 1);  // sorted-rank landing at position
  for (Eigen::Index i = 0; i < n; ++i) vals[i] = a(i, i).real();

  for (Eigen::Index step = 0; step + 1 < n; ++step) {
    const double t = x(perm[step]);
    const Eigen::Index sz = static_cast<Eigen::Index>(active.size());
    // largest k with vals[active[k]] >= t (vals restricted to active is
    // non-increasing by construction)
    Eigen::Index k = -1;
    for (Eigen::Index i = 0; i < sz; ++i) {
      if (vals[active[i]] >= t) k = i;
      else break;
    }
    if (k == sz - 1 || k == -1) {
      // All remaining values on one side of t; majorization forces them all
      // equal to the remaining targets up to accumulated tolerance.  Consume
      // the closest value without a rotation.
      const Eigen::Index pick = (k == -1) ? 0 : k;
      target_at[active[pick]] = step;
      active.erase(active.begin() + pick);
      continue;
    }
    const Eigen::Index p = active[k], q = active[k + 1];
    const double av = vals[p], bv = vals[q];  // av >= t > bv
    const double c = std::sqrt((t - bv) / (av - bv));
    const double s = std::sqrt((av - t) / (av - bv));
    // G = I except G(p,p)=c, G(p,q)=s, G(q,p)=-s, G(q,q)=c; apply A <- G^T A G
    const Matrix colp = a.col(p), colq = a.col(q);
    a.col(p) = c * colp - s * colq;
    a.col(q) = s * colp + c * colq;
    const Matrix rowp = a.row(p), rowq = a.row(q);
    a.row(p) = c * rowp - s * rowq;
    a.row(q) = s * rowp + c * rowq;
    a(p, p) = t;  // exact by choice of c, up to roundoff
    vals[p] = t;
    vals[q] = av + bv - t;
    a(q, q) = vals[q];
    target_at[p] = step;
    active.erase(active.begin() + k);
  }

  // position p holds the target of sorted rank target_at[p]; route it to the
  // original index of that target so diagonal entry i equals x(i) exactly
  Matrix out(n, n);
  std::vector<Eigen::Index> dest(n);
  for (Eigen::Index p = 0; p < n; ++p) dest[p] = perm[target_at[p]];
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(dest[i], dest[j]) = a(i, j);
  }
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = x(i);
  out = 0.5 * (out + out.adjoint());
  return HermitianMatrix(std::move(out), tol);
}

bool convex_trace_test(const HermitianMatrix& a, const HermitianMatrix& b,
                       const std::vector<ScalarFunction>& fs, const Tolerances& tol) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("convex_trace_test: order mismatch");
  }
  for (const auto& f : fs) {
    const double ta = apply_function(f, a, tol).trace();
    const double tb = apply_function(f, b, tol).trace();
    if (ta > tb + tol.majorization) return false;
  }
  return true;
}

RealVector random_majorized_below(const RealVector& y, std::uint64_t seed, int rounds) {
  const Eigen::Index n = y.size();
  if (n == 0) return y;
  if (rounds <= 0) rounds = static_cast<int>(2 * n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  std::uniform_real_distribution<double> theta(0.0, 1.0);
  RealVector x = y;
  for (int r = 0; r < rounds; ++r) {
    const Eigen::Index i = pick(rng);
    const Eigen::Index j = pick(rng);
    if (i == j) continue;
    const double th = theta(rng);
    const double xi = x(i), xj = x(j);
    x(i) = (1.0 - th) * xi + th * xj;
    x(j) = th * xi + (1.0 - th) * xj;
  }
  return x;
}

}  // namespace specmaj
