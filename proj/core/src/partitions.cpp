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

#include "specmaj/partitions.hpp"

#include <numeric>
#include <stdexcept>

namespace specmaj {

namespace {

Partition strip(Partition p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int weight_of(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

// Backtracking counter for LR skew tableaux.  Cells are visited row by row,
// within a row right to left, so the ballot (lattice word) condition can be
// checked prefix by prefix while the semistandard constraints only look at
// the right neighbor and the cell above.
class LrCounter {
 public:
  LrCounter(const Partition& lambda, const Partition& mu, const Partition& nu)
      : mu_(mu) {
    rows_ = static_cast<int>(nu.size());
    lam_.assign(rows_, 0);
    for (size_t i = 0; i < lambda.size(); ++i) lam_[i] = lambda[i];
    nu_ = nu;
    for (int i = 0; i < rows_; ++i) {
      for (int j = nu_[i] - 1; j >= lam_[i]; --j) cells_.push_back({i, j});
    }
    grid_.assign(rows_, std::vector<int>(nu.empty() ? 0 : nu[0], 0));
    counts_.assign(mu_.size() + 1, 0);
  }

  std::int64_t count() {
    total_ = 0;
    rec(0);
    return total_;
  }

 private:
  void rec(size_t idx) {
    if (idx == cells_.size()) {
      ++total_;
      return;
    }
    const auto [i, j] = cells_[idx];
    const int m = static_cast<int>(mu_.size());
    for (int v = 1; v <= m; ++v) {
      if (counts_[v] + 1 > mu_[v - 1]) continue;
      if (v > 1 && counts_[v] + 1 > counts_[v - 1]) continue;     // ballot
      if (j + 1 < nu_[i] && grid_[i][j + 1] && v > grid_[i][j + 1]) continue;  // row
      if (i > 0 && j < nu_[i - 1] && j >= lam_[i - 1] && v <= grid_[i - 1][j]) {
        continue;  // column strict
      }
      grid_[i][j] = v;
      ++counts_[v];
      rec(idx + 1);
      --counts_[v];
      grid_[i][j] = 0;
    }
  }

  Partition mu_, nu_;
  std::vector<int> lam_;
  int rows_ = 0;
  std::vector<std::pair<int, int>> cells_;
  std::vector<std::vector<int>> grid_;
  std::vector<int> counts_;
  std::int64_t total_ = 0;
};

}  // namespace

BoxPartition::BoxPartition(int rows_, int width_, Partition parts_)
    : rows(rows_), width(width_), parts(strip(std::move(parts_))) {
  if (rows < 0 || width < 0) {
    throw std::invalid_argument("BoxPartition: negative box");
  }
  if (static_cast<int>(parts.size()) > rows) {
    throw std::invalid_argument("BoxPartition: more parts than rows");
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0 || parts[i] > width) {
      throw std::invalid_argument("BoxPartition: part outside box");
    }
    if (i + 1 < parts.size() && parts[i] < parts[i + 1]) {
      throw std::invalid_argument("BoxPartition: parts not non-increasing");
    }
  }
}

int BoxPartition::weight() const { return weight_of(parts); }

std::int64_t lr_coefficient(const Partition& lambda_in, const Partition& mu_in,
                            const Partition& nu_in) {
  const Partition lambda = strip(lambda_in), mu = strip(mu_in), nu = strip(nu_in);
  if (weight_of(nu) != weight_of(lambda) + weight_of(mu)) return 0;
  if (lambda.size() > nu.size()) return 0;
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > nu[i]) return 0;
  }
  if (mu.empty()) return 1;  // nu == lambda at this point
  return LrCounter(lambda, mu, nu).count();
}

std::int64_t lr_coefficient(const BoxPartition& lambda, const BoxPartition& mu,
                            const BoxPartition& nu) {
  return lr_coefficient(lambda.parts, mu.parts, nu.parts);
}

std::vector<Partition> partitions_in_box(int rows, int width, int weight) {
  std::vector<Partition> out;
  if (weight == 0) {
    out.push_back({});
    return out;
  }
  if (rows <= 0 || width <= 0 || weight > rows * width) return out;
  Partition acc;
  // parts tried largest first so the output is reverse-lexicographic
  auto rec = [&](auto&& self, int prev, int left) -> void {
    if (left == 0) {
      out.push_back(acc);
      return;
    }
    if (static_cast<int>(acc.size()) == rows) return;
    for (int p = std::min(prev, left); p >= 1; --p) {
      acc.push_back(p);
      self(self, p, left - p);
      acc.pop_back();
    }
  };
  rec(rec, width, weight);
  return out;
}

SchubertExpansion schubert_product(const std::vector<BoxPartition>& factors, int r, int n) {
  if (r < 1 || r >= n) {
    throw std::invalid_argument("schubert_product: need 1 <= r < n");
  }
  const int box = r * (n - r);
  SchubertExpansion acc;
  acc[{}] = 1;
  for (const BoxPartition& f : factors) {
    if (f.rows != r || f.width != n - r) {
      throw std::invalid_argument("schubert_product: factor box mismatch");
    }
    SchubertExpansion next;
    const int fw = f.weight();
    for (const auto& [lam, coef] : acc) {
      const int w = weight_of(lam) + fw;
      if (w > box) continue;
      for (const Partition& nu : partitions_in_box(r, n - r, w)) {
        const std::int64_t k = lr_coefficient(lam, f.parts, nu);
        if (k) next[nu] += coef * k;
      }
    }
    acc.swap(next);
    if (acc.empty()) break;
  }
  return acc;
}

bool schubert_product_nonzero(const std::vector<BoxPartition>& factors, int r, int n) {
  return !schubert_product(factors, r, n).empty();
}

}  // namespace specmaj
