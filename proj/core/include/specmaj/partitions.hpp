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
#include <map>
#include <vector>

namespace specmaj {

/// Integer partition, non-increasing parts, trailing zeros stripped.
using Partition = std::vector<int>;

/// Non-increasing non-negative parts constrained to an r x width box
/// (at most r parts, each at most width).  The empty partition is allowed.
struct BoxPartition {
  int rows = 0;   ///< r
  int width = 0;  ///< typically n - r
  Partition parts;

  BoxPartition() = default;
  BoxPartition(int rows_, int width_, Partition parts_);

  int weight() const;
  bool operator==(const BoxPartition& o) const = default;
};

/// Littlewood-Richardson coefficient: the number of skew semistandard
/// tableaux of shape nu/lambda and content mu whose reverse reading word is a
/// lattice word, counted by direct backtracking.  Zero unless
/// |nu| = |lambda| + |mu| and lambda is contained in nu.
std::int64_t lr_coefficient(const Partition& lambda, const Partition& mu,
                            const Partition& nu);
std::int64_t lr_coefficient(const BoxPartition& lambda, const BoxPartition& mu,
                            const BoxPartition& nu);

/// All partitions of the given weight fitting in a rows x width box.
std::vector<Partition> partitions_in_box(int rows, int width, int weight);

/// Expansion of a product of Schubert classes in the cohomology of the
/// Grassmannian of r-planes in n-space: iterated Littlewood-Richardson
/// expansion, discarding terms that leave the r x (n-r) box.
using SchubertExpansion = std::map<Partition, std::int64_t>;
SchubertExpansion schubert_product(const std::vector<BoxPartition>& factors, int r, int n);

/// Whether the product above is nonzero.
bool schubert_product_nonzero(const std::vector<BoxPartition>& factors, int r, int n);

}  // namespace specmaj
