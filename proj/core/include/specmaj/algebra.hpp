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

#include "specmaj/types.hpp"

namespace specmaj {

/// Invariant of a unital *-subalgebra of the n x n matrices up to unitary
/// conjugation: an ordered list of (block dimension d, multiplicity c) pairs
/// describing a direct sum of d x d full matrix algebras, each tensored with
/// the identity of size c.  n = sum d(i) * c(i).
class SpectralList {
 public:
  struct Entry {
    int d;  ///< block dimension, >= 1
    int c;  ///< multiplicity, >= 1
  };

  explicit SpectralList(std::vector<Entry> entries);
  /// Parses "d:c,d:c,..."; a bare "d" means multiplicity 1.
  static SpectralList parse(const std::string& text);

  const std::vector<Entry>& entries() const { return entries_; }
  int group_count() const { return static_cast<int>(entries_.size()); }
  int order() const { return order_; }            ///< n
  int c_total() const { return c_total_; }        ///< total number of fine blocks
  bool multiplicity_free() const;

  /// Fine block ranks: d(i) repeated c(i) times, in list order.
  std::vector<int> flat_ranks() const;
  /// Start of group i in the fine-block indexing (0-based).
  int group_start(int i) const;
  /// Start of group i in coordinates (0-based row/column offset).
  int group_offset(int i) const;

  std::string to_string() const;

 private:
  std::vector<Entry> entries_;
  int order_ = 0;
  int c_total_ = 0;
};

/// Equal as multisets of (d, c) pairs; such lists label unitarily conjugate
/// subalgebras.
bool lists_equivalent(const SpectralList& a, const SpectralList& b);

/// Refinement between multiplicity-free lists: contiguous groups of `fine`
/// blocks sum to the blocks of `coarse`, matching a nested pair of
/// subalgebras in coordinate position.  Throws if either list has a
/// multiplicity above 1.
bool refines(const SpectralList& fine, const SpectralList& coarse);

/// Ordered coordinate-interval projections summing to the identity.
class ProjectionSystem {
 public:
  explicit ProjectionSystem(std::vector<int> ranks);

  const std::vector<int>& ranks() const { return ranks_; }
  int block_count() const { return static_cast<int>(ranks_.size()); }
  int order() const { return order_; }
  int offset(int i) const { return offsets_[i]; }

 private:
  std::vector<int> ranks_;
  std::vector<int> offsets_;
  int order_ = 0;
};

/// Ordered diagonal blocks cut along a projection system.
struct BlockDiagonal {
  std::vector<Matrix> blocks;

  Matrix assemble() const;
  Eigen::Index order() const;
};

/// Diagonal-block compression: keeps the blocks of X along P, discards the
/// rest.  Trace preserving.
BlockDiagonal compress(const ProjectionSystem& p, const Matrix& x);

/// compress() with the blocks reassembled into a block-diagonal matrix.
Matrix compress_matrix(const ProjectionSystem& p, const Matrix& x);

/// Partial trace over the second (size m) factor under the identification of
/// the (d*m)-order matrix algebra with an m x m array of d x d blocks
/// (A tensor B written as the array b_ij * A).  Returns the sum of the m
/// diagonal d x d blocks.
Matrix partial_trace_right(const Matrix& c, int d, int m);

/// Partial trace over the first (size d) factor: the m x m matrix of block
/// traces.
Matrix partial_trace_left(const Matrix& c, int d, int m);

/// Kronecker product under the fixed identification: (a tensor b)(i,j) blocks
/// are b_ij * a.
Matrix kron(const Matrix& a, const Matrix& b);

/// Trace-preserving conditional expectation onto the subalgebra described by
/// the spectral list: per group, average the c(i) fine diagonal blocks and
/// re-tensor with the identity of size c(i).  Idempotent, unital, positive,
/// trace preserving, and self-adjoint for the trace inner product.
Matrix tce(const SpectralList& l, const Matrix& x);

}  // namespace specmaj
