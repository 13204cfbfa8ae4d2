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

// Acceptance gate: every release-blocking property of the toolkit, one
// criterion per function, each printing a single PASS/FAIL line.  Run all
// with no arguments or a single one with --criterion N.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "specmaj/majorization.hpp"
#include "specmaj/ncsh.hpp"
#include "specmaj/random.hpp"
#include "../support/test_oracles.hpp"

using namespace specmaj;

namespace {

struct Criterion {
  int number;
  std::string name;
  std::function<bool(std::ostream&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------- 1
bool schur_horn_bulk(std::ostream& os) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> ud(-3, 3);
  double worst_diag = 0, worst_spec = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = dim(rng);
    RealVector y(n);
    for (int i = 0; i < n; ++i) y(i) = ud(rng);
    RealVector x = random_majorized_below(y, 40000 + t);
    std::shuffle(x.data(), x.data() + n, rng);
    const HermitianMatrix a = schur_horn_construct(x, y);
    worst_diag = std::max(worst_diag,
                          (a.matrix().diagonal().real() - x).cwiseAbs().maxCoeff());
    RealVector ys = y;
    std::sort(ys.data(), ys.data() + n, std::greater<double>());
    const Spectrum s = eig_sorted(a).spectrum;
    for (int i = 0; i < n; ++i) worst_spec = std::max(worst_spec, std::abs(s[i] - ys(i)));
  }
  const double dt = seconds_since(t0);
  os << "1000 pairs, worst diagonal residual " << worst_diag << ", worst spectrum residual "
     << worst_spec << ", " << dt << " s";
  return worst_diag < 1e-9 && worst_spec < 1e-9 && dt < 5.0;
}

// ---------------------------------------------------------------------- 2
bool nonconvexity_witness(std::ostream& os) {
  const CounterexampleResult r = convexity_counterexample(2, {2});
  const bool values_ok = std::abs(r.s.matrix()(0, 0).real() - 2.0) == 0.0 &&
                         std::abs(r.s.matrix()(1, 1).real() - 4.0) == 0.0 &&
                         std::abs(r.t(0, 0).real() - 3.0) == 0.0 &&
                         std::abs(r.t(1, 1).real() - 3.0) == 0.0;
  const bool average_exact = r.average_residual == 0.0;
  const bool infeasible = !r.decision.feasible() && r.decision.certificate.has_value();

  OracleBudget budget;  // default: 64 restarts
  const BlockCompressionOutcome out = realize_block_compression(
      r.s.hermitian(), {eig_sorted(HermitianMatrix(r.t)).spectrum}, {2},
      OrbitMode::kUnitary, budget);
  const bool oracle_blocked =
      out.status == OracleStatus::kExhausted && out.best_residual > 0.1;
  os << "values " << (values_ok ? "exact" : "WRONG") << ", average residual "
     << r.average_residual << ", verdict "
     << (infeasible ? "infeasible with certificate" : "UNEXPECTED") << ", oracle residual "
     << out.best_residual;
  return values_ok && average_exact && infeasible && oracle_blocked;
}

// ---------------------------------------------------------------------- 3
bool klyachko_agreement(std::ostream& os) {
  const auto t0 = std::chrono::steady_clock::now();
  long hard = 0, feasible = 0, with_witness = 0, total = 0;
  for (int n = 2; n <= 4; ++n) {
    std::mt19937_64 rng(7000 + n);
    std::uniform_int_distribution<int> half(-4, 4);
    std::vector<SumInstance> instances;
    for (int t = 0; t < 200; ++t) {
      auto draw = [&]() {
        RealVector v(n);
        for (int i = 0; i < n; ++i) v(i) = half(rng) / 2.0;
        return Spectrum(std::move(v));
      };
      const Spectrum l1 = draw(), l2 = draw();
      RealVector l0(n);
      if (t % 2 == 0) {
        // feasible by construction: a permuted diagonal sum
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < n; ++i) l0(i) = l1[i] + l2[perm[i]];
      } else {
        // trace balanced, otherwise arbitrary
        for (int i = 0; i < n - 1; ++i) l0(i) = half(rng) / 2.0;
        l0(n - 1) = l1.sum() + l2.sum() - l0.head(n - 1).sum();
      }
      instances.push_back(SumInstance{Spectrum(l0), {l1, l2}});
    }
    OracleBudget budget;
    budget.seed = 900 + n;
    const ValidationReport report = cross_validate(
        instances,
        [](const SumInstance& inst) {
          return klyachko_feasible_sum(inst.lambda0, inst.lambdas);
        },
        budget);
    hard += report.hard_failures;
    total += report.total;
    for (const auto& e : report.entries) {
      if (e.decision.feasible()) {
        ++feasible;
        if (e.residual < 1e-6) ++with_witness;
      }
    }
  }
  const double dt = seconds_since(t0);
  const double rate = feasible ? static_cast<double>(with_witness) / feasible : 1.0;
  os << total << " instances, " << hard << " hard failures, " << feasible
     << " feasible of which " << with_witness << " realized (" << 100.0 * rate << "%), "
     << dt << " s";
  return hard == 0 && rate >= 0.99 && dt < 600.0;
}

// ---------------------------------------------------------------------- 4
bool reduction_to_majorization(std::ostream& os) {
  std::mt19937_64 rng(401);
  std::uniform_int_distribution<int> dim(1, 6);
  long agree = 0;
  const long cases = 500;
  for (long t = 0; t < cases; ++t) {
    const int n = dim(rng);
    std::vector<SpectralList::Entry> entries(n, {1, 1});
    const SpectralList l{entries};
    const HermitianMatrix b = random_hermitian(n, rng);
    HermitianMatrix a =
        (t % 2 == 0)
            ? random_hermitian(n, rng,
                               Spectrum(random_majorized_below(
                                   eig_sorted(b).spectrum.values(), 90000 + t)))
            : random_hermitian(n, rng);
    const bool expected =
        majorizes(eig_sorted(b).spectrum.values(), eig_sorted(a).spectrum.values());
    const bool got = ext_majorizes(a, b, l).feasible();
    if (got == expected) ++agree;
  }
  os << agree << "/" << cases << " agreements with vector majorization";
  return agree == cases;
}

// ---------------------------------------------------------------------- 5
bool refinement_monotonicity(std::ostream& os) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"1,1,1,1", "2,2"}, {"2,2", "4"}, {"1,1,2", "2,2"},
      {"2,2,2", "4,2"},   {"1,1,1,1,1,1", "3,3"},
  };
  long ok = 0, total = 0;
  for (const auto& [fine_text, coarse_text] : pairs) {
    const SpectralList fine = SpectralList::parse(fine_text);
    const SpectralList coarse = SpectralList::parse(coarse_text);
    if (!refines(fine, coarse)) {
      os << "list pair " << fine_text << " / " << coarse_text << " is not a refinement";
      return false;
    }
    std::mt19937_64 rng(std::hash<std::string>{}(fine_text + coarse_text));
    for (int t = 0; t < 100; ++t) {
      const int n = coarse.order();
      const HermitianMatrix b = random_hermitian(n, rng);
      const Unitary u = random_unitary(n, rng);
      const HermitianMatrix a{tce(coarse, u.matrix().adjoint() * b.matrix() * u.matrix())};
      ++total;
      if (ext_majorizes(a, b, coarse).feasible() && ext_majorizes(a, b, fine).feasible()) {
        ++ok;
      }
    }
  }
  os << ok << "/" << total << " constructed instances stay feasible under refinement";
  return ok == total;
}

// ---------------------------------------------------------------------- 6
bool tce_axioms(std::ostream& os) {
  std::mt19937_64 rng(601);
  std::normal_distribution<double> nd;
  const std::vector<std::string> lists = {"1,1,1,1", "2:1,2:1", "2:2", "1:2,2:1", "4:1",
                                          "1:4", "3:1,1:1"};
  double worst = 0;
  long count = 0;
  for (const auto& text : lists) {
    const SpectralList l = SpectralList::parse(text);
    const int n = l.order();
    for (int t = 0; t < 30; ++t) {
      Matrix x(n, n), y(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          x(i, j) = Complex(nd(rng), nd(rng));
          y(i, j) = Complex(nd(rng), nd(rng));
        }
      }
      const Matrix ex = tce(l, x);
      worst = std::max(worst, max_abs(tce(l, ex) - ex));
      worst = std::max(worst, std::abs(ex.trace() - x.trace()));
      worst = std::max(worst,
                       std::abs((y.adjoint() * ex).trace() - (tce(l, y).adjoint() * x).trace()));
      ++count;
    }
    for (int t = 0; t < 10; ++t) {
      const PsdMatrix p = random_psd(n, rng);
      Eigen::SelfAdjointEigenSolver<Matrix> es(tce(l, p.matrix()), Eigen::EigenvaluesOnly);
      worst = std::max(worst, std::max(0.0, -es.eigenvalues().minCoeff()));
      ++count;
    }
  }
  os << count << " inputs across " << lists.size() << " lists, worst defect " << worst;
  return worst <= 1e-12;
}

// ---------------------------------------------------------------------- 7
bool partial_trace_duality(std::ostream& os) {
  std::mt19937_64 rng(701);
  std::normal_distribution<double> nd;
  double worst = 0;
  long count = 0;
  for (const auto& [d, m] : std::vector<std::pair<int, int>>{{1, 4}, {2, 2}, {2, 3}, {3, 2}}) {
    for (int t = 0; t < 50; ++t) {
      const int n = d * m;
      Matrix c(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) c(i, j) = Complex(nd(rng), nd(rng));
      }
      const Matrix a = random_hermitian(d, rng).matrix();
      const Matrix b = random_hermitian(m, rng).matrix();
      worst = std::max(worst, std::abs((partial_trace_right(c, d, m) * a).trace() -
                                       (c * kron(a, Matrix::Identity(m, m))).trace()));
      worst = std::max(worst, std::abs((partial_trace_left(c, d, m) * b).trace() -
                                       (c * kron(Matrix::Identity(d, d), b)).trace()));
      ++count;
    }
  }
  os << count << " inputs, worst duality defect " << worst;
  return worst <= 1e-12;
}

// ---------------------------------------------------------------------- 8
bool nc_horn_bulk(std::ostream& os) {
  std::mt19937_64 rng(801);
  double worst_block = 0, worst_trace = 0, worst_factor = 0;
  for (const auto& [d, m] : std::vector<std::pair<int, int>>{{1, 4}, {2, 2}, {2, 3}, {3, 3}}) {
    for (int t = 0; t < 100; ++t) {
      const PsdMatrix a = random_psd(d * m, rng);
      const NcHornResult r = nc_horn_lemma(a, d, m);
      worst_block = std::max(worst_block, r.block_residual);
      worst_trace = std::max(worst_trace, std::abs(r.d.trace() - a.trace()));
      Matrix acc = Matrix::Zero(d * m, d * m);
      const Matrix conj = r.u.matrix().adjoint() * a.matrix() * r.u.matrix();
      for (int i = 0; i < m; ++i) {
        const Matrix xxs = r.factors[i] * r.factors[i].adjoint();
        acc += xxs;
        const Matrix rot = r.unitaries[i].matrix().adjoint() * xxs * r.unitaries[i].matrix();
        Matrix want = Matrix::Zero(d * m, d * m);
        want.block(i * d, i * d, d, d) = r.d.matrix();
        worst_factor = std::max(worst_factor, max_abs(rot - want));
        worst_factor = std::max(worst_factor, max_abs(partial_trace_right(rot, d, m) -
                                                      partial_trace_right(conj, d, m)));
      }
      worst_factor =
          std::max(worst_factor, max_abs(a.matrix() - acc / static_cast<double>(m)));
    }
  }
  os << "400 matrices; worst block " << worst_block << ", trace " << worst_trace
     << ", factor " << worst_factor;
  return worst_block <= 1e-10 && worst_trace <= 1e-10 && worst_factor <= 1e-8;
}

// ---------------------------------------------------------------------- 9
bool jensen_sweep(std::ostream& os) {
  std::mt19937_64 rng(901);
  long pass = 0;
  const long cases = 500;
  long rechecked = 0;
  for (long t = 0; t < cases; ++t) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const auto f = testing::random_monotone_convex(rng);
    const HermitianMatrix a = random_hermitian(n, rng);
    const ProjectionSystem p(testing::random_ranks(n, rng));
    if (jensen_check([&](double v) { return f(v); }, a, p)) {
      ++pass;
    } else {
      // re-check boundary failures at ten times the dominance tolerance
      ++rechecked;
      Tolerances loose = default_tolerances();
      loose.dominance *= 10.0;
      if (jensen_check([&](double v) { return f(v); }, a, p, loose)) ++pass;
    }
  }
  os << pass << "/" << cases << " dominance checks hold (" << rechecked
     << " re-checked at 10x tolerance)";
  return pass == cases;
}

// --------------------------------------------------------------------- 10
bool bourin_bulk(std::ostream& os) {
  std::mt19937_64 rng(1001);
  const std::vector<ScalarFunction> fs = {
      [](double t) { return t * t; },
      [](double t) { return 2.0 * std::max(t - 1.0, 0.0); },
      [](double t) { return t * std::exp(t) / std::exp(1.0); },
  };
  double worst = 0;
  long pass = 0;
  const long cases = 100;
  for (long t = 0; t < cases; ++t) {
    const int n = 2 + static_cast<int>(t % 3);
    const PsdMatrix a = random_psd(n, rng);
    const PsdMatrix b = random_psd(n, rng);
    OracleBudget budget;
    budget.seed = 5000 + t;
    const BourinResult r = bourin_decomposition(fs[t % fs.size()], a, b, budget);
    worst = std::min(worst, r.lambda_min);
    if (r.lambda_min >= -1e-7) ++pass;
  }
  os << pass << "/" << cases << " decompositions psd within 1e-7 (worst lambda_min "
     << worst << ")";
  return pass == cases;
}

// --------------------------------------------------------------------- 11
bool transport_bulk(std::ostream& os) {
  std::mt19937_64 rng(1101);
  double worst = 0;
  long pass = 0;
  const long cases = 100;
  auto f = [](double v) { return v * v; };
  for (long t = 0; t < cases; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const PsdMatrix b = random_psd(n, rng);
    const Contraction w = random_contraction(n, rng);
    const ProjectionSystem p(testing::random_ranks(n, rng));
    const Contraction wt = monotone_transport(f, b, w, p);
    const Matrix fb = apply_function(f, b.hermitian()).matrix();
    const Matrix got = compress_matrix(p, wt.matrix().adjoint() * fb * wt.matrix());
    const BlockDiagonal ab = compress(p, w.matrix().adjoint() * b.matrix() * w.matrix());
    BlockDiagonal want;
    for (const Matrix& blk : ab.blocks) {
      want.blocks.push_back(
          apply_function(f, HermitianMatrix(0.5 * (blk + blk.adjoint()))).matrix());
    }
    const double resid = max_abs(got - want.assemble());
    worst = std::max(worst, resid);
    if (resid < 1e-7) ++pass;
  }
  os << pass << "/" << cases << " transports complete (worst residual " << worst << ")";
  return pass == cases;
}

// --------------------------------------------------------------------- 12
bool witness_round_trip(std::ostream& os) {
  std::mt19937_64 rng(1201);
  double worst = 0;
  long pass = 0;
  const long cases = 100;
  for (long t = 0; t < cases; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);  // 2..6
    const PsdMatrix s = random_psd(n, rng);
    const Contraction v = random_contraction(n, rng);
    const ProjectionSystem p(testing::random_ranks(n, rng));
    const Matrix compressed =
        compress_matrix(p, v.matrix().adjoint() * s.matrix() * v.matrix());
    std::vector<PsdMatrix> blocks;
    for (int i = 0; i < p.block_count(); ++i) {
      blocks.emplace_back(
          Matrix(compressed.block(p.offset(i), p.offset(i), p.ranks()[i], p.ranks()[i])));
    }
    const auto vs = witness_unitaries_from_contraction(s, v, p);
    const Contraction v2 = witness_contraction_from_unitaries(s, blocks, vs, p);
    const Matrix again = compress_matrix(p, v2.matrix().adjoint() * s.matrix() * v2.matrix());
    const double resid = max_abs(again - compressed);
    worst = std::max(worst, resid);
    if (resid < 1e-8) ++pass;
  }
  os << pass << "/" << cases << " round trips reproduce the block targets (worst "
     << worst << ")";
  return pass == cases;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "schur-horn constructor bulk residuals", schur_horn_bulk},
      {2, "non-convexity witness reproduced exactly", nonconvexity_witness},
      {3, "inequality engine / orbit search agreement", klyachko_agreement},
      {4, "reduction to vector majorization", reduction_to_majorization},
      {5, "refinement monotonicity", refinement_monotonicity},
      {6, "conditional expectation axioms", tce_axioms},
      {7, "partial trace duality", partial_trace_duality},
      {8, "block fourier flattening identities", nc_horn_bulk},
      {9, "jensen spectral dominance sweep", jensen_sweep},
      {10, "doubled-order decomposition positivity", bourin_bulk},
      {11, "monotone transport chain", transport_bulk},
      {12, "witness construction round trip", witness_round_trip},
  };

  int selected = 0;
  bool list_only = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--list") == 0) {
      list_only = true;
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N] [--list]\n";
      return 64;
    }
  }
  if (list_only) {
    for (const auto& c : criteria) std::cout << c.number << ": " << c.name << "\n";
    return 0;
  }

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (selected != 0 && c.number != selected) continue;
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.name
              << " - " << detail.str() << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
