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

#include "specmaj/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace specmaj {

SpectralList::SpectralList(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("SpectralList: empty list");
  }
  for (const Entry& e : entries_) {
    if (e.d < 1 || e.c < 1) {
      throw std::invalid_argument("SpectralList: dimensions and multiplicities must be >= 1");
    }
    order_ += e.d * e.c;
    c_total_ += e.c;
  }
}

SpectralList SpectralList::parse(const std::string& text) {
  std::vector<Entry> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    Entry e{0, 1};
    try {
      if (colon == std::string::npos) {
        e.d = std::stoi(item);
      } else {
        e.d = std::stoi(item.substr(0, colon));
        e.c = std::stoi(item.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("SpectralList::parse: bad entry '" + item + "'");
    }
    entries.push_back(e);
  }
  return SpectralList(std::move(entries));
}

bool SpectralList::multiplicity_free() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.c == 1; });
}

std::vector<int> SpectralList::flat_ranks() const {
  std::vector<int> ranks;
  ranks.reserve(c_total_);
  for (const Entry& e : entries_) {
    for (int j = 0; j < e.c; ++j) ranks.push_back(e.d);
  }
  return ranks;
}

int SpectralList::group_start(int i) const {
  int s = 0;
  for (int j = 0; j < i; ++j) s += entries_[j].c;
  return s;
}

int SpectralList::group_offset(int i) const {
  int s = 0;
  for (int j = 0; j < i; ++j) s += entries_[j].d * entries_[j].c;
  return s;
}

std::string SpectralList::to_string() const {
  std::string out;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i].d) + ":" + std::to_string(entries_[i].c);
  }
  return out;
}

bool lists_equivalent(const SpectralList& a, const SpectralList& b) {
  auto key = [](const SpectralList& l) {
    std::vector<std::pair<int, int>> v;
    for (const auto& e : l.entries()) v.emplace_back(e.d, e.c);
    std::sort(v.begin(), v.end());
    return v;
  };
  return key(a) == key(b);
}

bool refines(const SpectralList& fine, const SpectralList& coarse) {
  if (!fine.multiplicity_free() || !coarse.multiplicity_free()) {
    throw std::invalid_argument("refines: both lists must be multiplicity free");
  }
  if (fine.order() != coarse.order()) return false;
  // contiguous grouping: the coarse prefix sums must occur among the fine ones
  size_t fi = 0;
  for (const auto& ce : coarse.entries()) {
    int want = ce.d;
    while (want > 0 && fi < fine.entries().size()) {
      want -= fine.entries()[fi++].d;
    }
    if (want != 0) return false;
  }
  return fi == fine.entries().size();
}

ProjectionSystem::ProjectionSystem(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  if (ranks_.empty()) {
    throw std::invalid_argument("ProjectionSystem: empty rank list");
  }
  offsets_.reserve(ranks_.size());
  for (int r : ranks_) {
    if (r < 1) throw std::invalid_argument("ProjectionSystem: ranks must be >= 1");
    offsets_.push_back(order_);
    order_ += r;
  }
}

Matrix BlockDiagonal::assemble() const {
  Eigen::Index n = 0;
  for (const Matrix& b : blocks) n += b.rows();
  Matrix out = Matrix::Zero(n, n);
  Eigen::Index o = 0;
  for (const Matrix& b : blocks) {
    out.block(o, o, b.rows(), b.cols()) = b;
    o += b.rows();
  }
  return out;
}

Eigen::Index BlockDiagonal::order() const {
  Eigen::Index n = 0;
  for (const Matrix& b : blocks) n += b.rows();
  return n;
}

BlockDiagonal compress(const ProjectionSystem& p, const Matrix& x) {
  if (x.rows() != x.cols() || x.rows() != p.order()) {
    throw std::invalid_argument("compress: order mismatch with projection system");
  }
  BlockDiagonal out;
  out.blocks.reserve(p.block_count());
  for (int i = 0; i < p.block_count(); ++i) {
    out.blocks.push_back(x.block(p.offset(i), p.offset(i), p.ranks()[i], p.ranks()[i]));
  }
  return out;
}

Matrix compress_matrix(const ProjectionSystem& p, const Matrix& x) {
  return compress(p, x).assemble();
}

Matrix partial_trace_right(const Matrix& c, int d, int m) {
  if (d < 1 || m < 1 || c.rows() != c.cols() ||
      c.rows() != static_cast<Eigen::Index>(d) * m) {
    throw std::invalid_argument("partial_trace_right: order must equal d*m");
  }
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < m; ++i) out += c.block(i * d, i * d, d, d);
  return out;
}

Matrix partial_trace_left(const Matrix& c, int d, int m) {
  if (d < 1 || m < 1 || c.rows() != c.cols() ||
      c.rows() != static_cast<Eigen::Index>(d) * m) {
    throw std::invalid_argument("partial_trace_left: order must equal d*m");
  }
  Matrix out(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out(i, j) = c.block(i * d, j * d, d, d).trace();
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      out.block(i * a.rows(), j * a.cols(), a.rows(), a.cols()) = b(i, j) * a;
    }
  }
  return out;
}

Matrix tce(const SpectralList& l, const Matrix& x) {
  if (x.rows() != x.cols() || x.rows() != l.order()) {
    throw std::invalid_argument("tce: order mismatch with spectral list");
  }
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (int g = 0; g < l.group_count(); ++g) {
    const auto [d, c] = l.entries()[g];
    const int base = l.group_offset(g);
    Matrix avg = Matrix::Zero(d, d);
    for (int j = 0; j < c; ++j) {
      avg += x.block(base + j * d, base + j * d, d, d);
    }
    avg /= static_cast<double>(c);
    for (int j = 0; j < c; ++j) {
      out.block(base + j * d, base + j * d, d, d) = avg;
    }
  }
  return out;
}

}  // namespace specmaj
