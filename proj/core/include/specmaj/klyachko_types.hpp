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

#include <string>
#include <vector>

#include "specmaj/partitions.hpp"
#include "specmaj/types.hpp"

namespace specmaj {

/// Strictly increasing 1-based indices drawn from {1, ..., n}, with
/// 1 <= cardinality < n.
class SubsetIndex {
 public:
  SubsetIndex(int n, std::vector<int> elems);

  int n() const { return n_; }
  int cardinality() const { return static_cast<int>(elems_.size()); }
  const std::vector<int>& elems() const { return elems_; }

  /// The dual r-subset: i'_j = n + 1 - i_{r+1-j}.  An involution.
  SubsetIndex dual() const;

  /// Schubert index in the r x (n-r) box: lambda_j = (n-r) + j - i_j.
  /// Under this convention {1..r} is the point class and {n-r+1..n} is the
  /// fundamental class.
  BoxPartition partition() const;

  std::string to_string() const;
  bool operator==(const SubsetIndex& o) const = default;
  bool operator<(const SubsetIndex& o) const;

 private:
  int n_;
  std::vector<int> elems_;
};

/// sum of x_i over i in I (x indexed from 1 in the formulas, from 0 here).
double subset_sum(const RealVector& x, const SubsetIndex& i);

/// An (m+1)-tuple of r-subsets (I_0, ..., I_m) whose Schubert classes
/// sigma(I_0) * prod_j sigma(I_j') have nonzero product; each such tuple
/// indexes one compatibility inequality
///   lambda^0[I_0'] >= sum_j lambda^j[I_j'].
struct AdmissibleTuple {
  int n = 0;
  int r = 0;
  std::vector<SubsetIndex> subsets;

  std::string to_string() const;
  bool operator==(const AdmissibleTuple& o) const = default;
};

}  // namespace specmaj
