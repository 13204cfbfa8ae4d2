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

#include "specmaj/klyachko.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "specmaj/version.hpp"

namespace specmaj {

// ---------------------------------------------------------------------------
// subsets

SubsetIndex::SubsetIndex(int n, std::vector<int> elems) : n_(n), elems_(std::move(elems)) {
  if (n_ < 2) throw std::invalid_argument("SubsetIndex: ambient size must be >= 2");
  if (elems_.empty() || static_cast<int>(elems_.size()) >= n_) {
    throw std::invalid_argument("SubsetIndex: cardinality must satisfy 1 <= r < n");
  }
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i] < 1 || elems_[i] > n_) {
      throw std::invalid_argument("SubsetIndex: element out of range");
    }
    if (i + 1 < elems_.size() && elems_[i] >= elems_[i + 1]) {
      throw std::invalid_argument("SubsetIndex: elements must be strictly increasing");
    }
  }
}

SubsetIndex SubsetIndex::dual() const {
  const int r = cardinality();
  std::vector<int> out(r);
  for (int j = 1; j <= r; ++j) out[j - 1] = n_ + 1 - elems_[r - j];
  return SubsetIndex(n_, std::move(out));
}

BoxPartition SubsetIndex::partition() const {
  const int r = cardinality();
  Partition parts(r);
  for (int j = 1; j <= r; ++j) parts[j - 1] = (n_ - r) + j - elems_[j - 1];
  return BoxPartition(r, n_ - r, std::move(parts));
}

std::string SubsetIndex::to_string() const {
  std::string out;
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(elems_[i]);
  }
  return out;
}

bool SubsetIndex::operator<(const SubsetIndex& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  return elems_ < o.elems_;
}

double subset_sum(const RealVector& x, const SubsetIndex& i) {
  if (x.size() != i.n()) throw std::invalid_argument("subset_sum: length mismatch");
  double s = 0.0;
  for (int e : i.elems()) s += x(e - 1);
  return s;
}

std::string AdmissibleTuple::to_string() const {
  std::string out;
  for (size_t i = 0; i < subsets.size(); ++i) {
    if (i) out += "|";
    out += subsets[i].to_string();
  }
  return out;
}

bool is_admissible(const std::vector<SubsetIndex>& tuple) {
  if (tuple.empty()) throw std::invalid_argument("is_admissible: empty tuple");
  const int n = tuple[0].n();
  const int r = tuple[0].cardinality();
  for (const auto& s : tuple) {
    if (s.n() != n || s.cardinality() != r) {
      throw std::invalid_argument("is_admissible: ragged tuple");
    }
  }
  std::vector<BoxPartition> factors;
  factors.reserve(tuple.size());
  factors.push_back(tuple[0].partition());
  int degree = factors[0].weight();
  for (size_t j = 1; j < tuple.size(); ++j) {
    factors.push_back(tuple[j].dual().partition());
    degree += factors.back().weight();
  }
  if (degree > r * (n - r)) return false;
  return schubert_product_nonzero(factors, r, n);
}

// ---------------------------------------------------------------------------
// enumeration and memo store

namespace {

std::vector<std::vector<int>> combinations(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == r) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n - (r - depth - 1); ++v) {
      cur[depth] = v;
      self(self, v + 1, depth + 1);
    }
  };
  rec(rec, 1, 0);
  return out;
}

struct PairProductCache {
  std::map<std::pair<Partition, Partition>, SchubertExpansion> cache;
  int r, n;

  const SchubertExpansion& product(const Partition& a, const Partition& b) {
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SchubertExpansion exp;
    const int box = r * (n - r);
    const int w = static_cast<int>(std::accumulate(a.begin(), a.end(), 0) +
                                   std::accumulate(b.begin(), b.end(), 0));
    if (w <= box) {
      for (const Partition& nu : partitions_in_box(r, n - r, w)) {
        const std::int64_t k = lr_coefficient(a, b, nu);
        if (k) exp[nu] = k;
      }
    }
    return cache.emplace(std::move(key), std::move(exp)).first->second;
  }

  bool product_nonzero(const std::vector<Partition>& parts) {
    SchubertExpansion acc;
    acc[{}] = 1;
    for (const Partition& p : parts) {
      SchubertExpansion next;
      for (const auto& [lam, coef] : acc) {
        for (const auto& [nu, k] : product(lam, p)) next[nu] += coef * k;
      }
      acc.swap(next);
      if (acc.empty()) return false;
    }
    return true;
  }
};

std::filesystem::path memo_file(const std::filesystem::path& dir, int n, int m, int r) {
  return dir / ("admissible_n" + std::to_string(n) + "_m" + std::to_string(m) + "_r" +
                std::to_string(r) + ".txt");
}

std::optional<std::vector<AdmissibleTuple>> load_memo(const std::filesystem::path& file,
                                                      int n, int m, int r) try {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string line;
  std::map<std::string, std::string> header;
  std::vector<AdmissibleTuple> out;
  long expected = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key, value;
      ls >> key >> value;
      header[key] = value;
      continue;
    }
    AdmissibleTuple t;
    t.n = n;
    t.r = r;
    std::stringstream ls(line);
    std::string part;
    while (std::getline(ls, part, '|')) {
      std::vector<int> elems;
      std::stringstream ps(part);
      std::string num;
      while (std::getline(ps, num, ',')) elems.push_back(std::stoi(num));
      t.subsets.emplace_back(n, std::move(elems));
    }
    if (static_cast<int>(t.subsets.size()) != m + 1) return std::nullopt;
    out.push_back(std::move(t));
  }
  if (header["conventions"] != kConventionsVersion) return std::nullopt;
  if (header["n"] != std::to_string(n) || header["m"] != std::to_string(m) ||
      header["r"] != std::to_string(r)) {
    return std::nullopt;
  }
  if (header.count("count")) expected = std::stol(header["count"]);
  if (expected >= 0 && expected != static_cast<long>(out.size())) return std::nullopt;
  return out;
} catch (const std::exception&) {
  return std::nullopt;  // corrupt memo files are recomputed
}

void store_memo(const std::filesystem::path& file, int n, int m, int r,
                const std::vector<AdmissibleTuple>& tuples) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) return;  // memo is best effort
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << "# conventions " << kConventionsVersion << "\n";
    out << "# n " << n << "\n# m " << m << "\n# r " << r << "\n";
    out << "# count " << tuples.size() << "\n";
    for (const auto& t : tuples) out << t.to_string() << "\n";
  }
  std::filesystem::rename(tmp, file, ec);
}

std::mutex g_memo_mutex;
std::map<std::tuple<int, int, int>, std::vector<AdmissibleTuple>> g_memory_cache;

std::vector<AdmissibleTuple> compute_admissible_r(int n, int m, int r) {
  const auto subs = combinations(n, r);
  const int count = static_cast<int>(subs.size());
  std::vector<SubsetIndex> subsets;
  std::vector<Partition> plain(count), dualized(count);
  std::vector<int> plain_w(count), dual_w(count);
  subsets.reserve(count);
  for (int i = 0; i < count; ++i) {
    subsets.emplace_back(n, subs[i]);
    plain[i] = subsets[i].partition().parts;
    dualized[i] = subsets[i].dual().partition().parts;
    plain_w[i] = std::accumulate(plain[i].begin(), plain[i].end(), 0);
    dual_w[i] = std::accumulate(dualized[i].begin(), dualized[i].end(), 0);
  }
  PairProductCache cache{{}, r, n};
  const int box = r * (n - r);
  std::vector<AdmissibleTuple> out;

  // The product is symmetric in the m dualized slots, so candidates are
  // enumerated as non-decreasing index multisets and expanded to ordered
  // tuples only after the admissibility check.
  std::vector<int> pick(m, 0);
  auto emit = [&](int i0) {
    std::vector<int> perm = pick;
    std::sort(perm.begin(), perm.end());
    do {
      AdmissibleTuple t;
      t.n = n;
      t.r = r;
      t.subsets.push_back(subsets[i0]);
      for (int j : perm) t.subsets.push_back(subsets[j]);
      out.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  auto rec = [&](auto&& self, int slot, int start, int degree, int i0) -> void {
    if (degree > box) return;
    if (slot == m) {
      std::vector<Partition> parts;
      parts.reserve(m + 1);
      parts.push_back(plain[i0]);
      for (int j : pick) parts.push_back(dualized[j]);
      if (cache.product_nonzero(parts)) emit(i0);
      return;
    }
    for (int j = start; j < count; ++j) {
      pick[slot] = j;
      self(self, slot + 1, j, degree + dual_w[j], i0);
    }
  };
  for (int i0 = 0; i0 < count; ++i0) rec(rec, 0, 0, plain_w[i0], i0);

  std::sort(out.begin(), out.end(), [](const AdmissibleTuple& a, const AdmissibleTuple& b) {
    for (size_t i = 0; i < a.subsets.size(); ++i) {
      if (a.subsets[i].elems() != b.subsets[i].elems()) {
        return a.subsets[i].elems() < b.subsets[i].elems();
      }
    }
    return false;
  });
  return out;
}

}  // namespace

std::filesystem::path memo_directory(const EnumerationOptions& opts) {
  if (opts.memo_dir) return *opts.memo_dir;
  if (const char* env = std::getenv("SPECMAJ_MEMO_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return std::filesystem::path(xdg) / "specmaj";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "specmaj";
  }
  return std::filesystem::temp_directory_path() / "specmaj-memo";
}

std::vector<AdmissibleTuple> enumerate_admissible_r(int n, int m, int r,
                                                    const EnumerationOptions& opts) {
  if (n < 1) throw std::invalid_argument("enumerate_admissible: n must be >= 1");
  if (m < 1) throw std::invalid_argument("enumerate_admissible: m must be >= 1");
  if (r < 1 || r >= n) throw std::invalid_argument("enumerate_admissible: need 1 <= r < n");
  if (!opts.force && (n > opts.max_n || m > opts.max_m)) {
    throw std::runtime_error(
        "enumerate_admissible: (n=" + std::to_string(n) + ", m=" + std::to_string(m) +
        ") exceeds the enumeration cap (max_n=" + std::to_string(opts.max_n) +
        ", max_m=" + std::to_string(opts.max_m) + "); set force to override");
  }

  const auto key = std::make_tuple(n, m, r);
  std::vector<AdmissibleTuple> result;
  bool have = false;
  {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    auto it = g_memory_cache.find(key);
    if (it != g_memory_cache.end()) {
      result = it->second;
      have = true;
    }
  }
  const std::filesystem::path file =
      opts.use_memo ? memo_file(memo_directory(opts), n, m, r) : std::filesystem::path{};
  if (!have && opts.use_memo) {
    if (auto loaded = load_memo(file, n, m, r)) {
      result = std::move(*loaded);
      have = true;
    }
  }
  if (!have) result = compute_admissible_r(n, m, r);
  if (opts.use_memo) {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    std::error_code ec;
    if (!std::filesystem::exists(file, ec)) store_memo(file, n, m, r, result);
  }
  {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    g_memory_cache[key] = result;
  }
  return result;
}

std::vector<AdmissibleTuple> enumerate_admissible(int n, int m,
                                                  const EnumerationOptions& opts) {
  if (n < 1) throw std::invalid_argument("enumerate_admissible: n must be >= 1");
  std::vector<AdmissibleTuple> out;
  for (int r = 1; r < n; ++r) {
    auto part = enumerate_admissible_r(n, m, r, opts);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// decisions

namespace {

Certificate trace_certificate(double lhs, double rhs, bool equality) {
  Certificate c;
  c.kind = Certificate::Kind::kTrace;
  c.lhs = lhs;
  c.rhs = rhs;
  c.detail = equality ? "trace equality violated" : "trace inequality violated";
  return c;
}

Certificate inequality_certificate(const AdmissibleTuple& t, double lhs, double rhs) {
  Certificate c;
  c.kind = Certificate::Kind::kInequality;
  c.tuple = t;
  c.lhs = lhs;
  c.rhs = rhs;
  c.detail = "compatibility inequality violated by tuple " + t.to_string();
  return c;
}

// Diagonal pair (I, I) with I' = S; always admissible, and for m = 1 the
// associated inequality reads lambda^0[S] >= lambda^1[S].
AdmissibleTuple diagonal_tuple(int n, const std::vector<int>& s) {
  SubsetIndex sprime(n, s);
  SubsetIndex i0 = sprime.dual();
  AdmissibleTuple t;
  t.n = n;
  t.r = static_cast<int>(s.size());
  t.subsets = {i0, i0};
  return t;
}

std::vector<int> iota_range(int lo, int hi) {  // inclusive bounds, 1-based
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

// m = 1: a sum decision is equality of sorted spectra, a dominated decision
// is entrywise dominance.  Violations are converted into genuine violated
// compatibility inequalities over partial-sum subsets.
Decision decide_m1(const Spectrum& l0, const Spectrum& l1, bool dominated, double tol) {
  const Eigen::Index n = l0.size();
  if (dominated) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (l0[k] < l1[k] - tol) {
        if (n >= 2) {
          auto t = diagonal_tuple(static_cast<int>(n), {static_cast<int>(k) + 1});
          return Decision::make_infeasible(inequality_certificate(t, l0[k], l1[k]));
        }
        return Decision::make_infeasible(trace_certificate(l0[k], l1[k], false));
      }
    }
    return Decision::make_feasible();
  }
  // traces already checked equal; find a violated top or bottom partial sum
  if (n == 1) return Decision::make_feasible();
  double top0 = 0, top1 = 0;
  double worst = tol;
  std::optional<std::pair<std::vector<int>, std::pair<double, double>>> found;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    top0 += l0[k];
    top1 += l1[k];
    const int kk = static_cast<int>(k) + 1;
    if (top1 - top0 > worst) {  // top-k inequality violated
      worst = top1 - top0;
      found = {iota_range(1, kk), {top0, top1}};
    }
    const double bot0 = l0.sum() - top0, bot1 = l1.sum() - top1;
    if (bot1 - bot0 > worst) {  // bottom-(n-k) inequality violated
      worst = bot1 - bot0;
      found = {iota_range(kk + 1, static_cast<int>(n)), {bot0, bot1}};
    }
  }
  if (!found) return Decision::make_feasible();
  auto t = diagonal_tuple(static_cast<int>(n), found->first);
  return Decision::make_infeasible(
      inequality_certificate(t, found->second.first, found->second.second));
}

Decision decide(const Spectrum& l0, const std::vector<Spectrum>& ls, bool dominated,
                const KlyachkoOptions& opts) {
  const Eigen::Index n = l0.size();
  if (ls.empty()) throw std::invalid_argument("klyachko decision: at least one summand");
  for (const auto& l : ls) {
    if (l.size() != n) throw std::invalid_argument("klyachko decision: length mismatch");
  }
  double rhs_trace = 0.0;
  for (const auto& l : ls) rhs_trace += l.sum();
  const double lhs_trace = l0.sum();
  if (dominated ? (lhs_trace < rhs_trace - opts.tol)
                : (std::abs(lhs_trace - rhs_trace) > opts.tol)) {
    return Decision::make_infeasible(trace_certificate(lhs_trace, rhs_trace, !dominated));
  }
  const int m = static_cast<int>(ls.size());
  if (m == 1 && opts.allow_shortcuts) {
    return decide_m1(l0, ls[0], dominated, opts.tol);
  }
  if (n == 1) return Decision::make_feasible();  // trace condition is everything

  for (int r = 1; r < n; ++r) {
    for (const AdmissibleTuple& t : enumerate_admissible_r(static_cast<int>(n), m, r,
                                                           opts.enumeration)) {
      const double lhs = subset_sum(l0.values(), t.subsets[0].dual());
      double rhs = 0.0;
      for (int j = 1; j <= m; ++j) {
        rhs += subset_sum(ls[j - 1].values(), t.subsets[j].dual());
      }
      if (lhs < rhs - opts.tol) {
        return Decision::make_infeasible(inequality_certificate(t, lhs, rhs));
      }
    }
  }
  return Decision::make_feasible();
}

}  // namespace

Decision klyachko_feasible_sum(const Spectrum& lambda0, const std::vector<Spectrum>& lambdas,
                               const KlyachkoOptions& opts) {
  return decide(lambda0, lambdas, /*dominated=*/false, opts);
}

Decision klyachko_feasible_dominated(const Spectrum& lambda0,
                                     const std::vector<Spectrum>& lambdas,
                                     const KlyachkoOptions& opts) {
  return decide(lambda0, lambdas, /*dominated=*/true, opts);
}

}  // namespace specmaj
