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

// Command line surface for the spectral-majorization toolkit: feasibility
// checks, witness constructions, admissible-tuple enumeration and
// cross-validation sweeps.  Exit codes: 0 feasible/success, 1 infeasible,
// 2 inconclusive, 64 usage, 65 bad data, 70 internal error.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "specmaj/io.hpp"
#include "specmaj/majorization.hpp"
#include "specmaj/ncsh.hpp"
#include "specmaj/random.hpp"
#include "specmaj/version.hpp"

namespace {

using namespace specmaj;
using nlohmann::json;

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

RealVector parse_reals(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    vals.push_back(v);
  }
  if (vals.empty()) throw std::invalid_argument("empty number list");
  RealVector out(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out(static_cast<Eigen::Index>(i)) = vals[i];
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  const RealVector v = parse_reals(text);
  std::vector<int> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const int k = static_cast<int>(std::llround(v(i)));
    if (std::abs(v(i) - k) > 1e-9) throw std::invalid_argument("expected integer list");
    out.push_back(k);
  }
  return out;
}

ScalarFunction named_function(const std::string& name) {
  if (name == "t2" || name == "square") return [](double t) { return t * t; };
  if (name == "abs") return [](double t) { return std::abs(t); };
  if (name == "relu1") return [](double t) { return 2.0 * std::max(t - 1.0, 0.0); };
  if (name == "texp") return [](double t) { return t * std::exp(t) / std::exp(1.0); };
  if (name == "id" || name == "identity") return [](double t) { return t; };
  throw std::invalid_argument("unknown function '" + name +
                              "' (choices: t2, abs, relu1, texp, id)");
}

int emit_decision(const Decision& d) {
  std::cout << decision_to_json_text(d);
  return d.feasible() ? kExitFeasible : kExitInfeasible;
}

json verification_block(std::initializer_list<std::pair<std::string, double>> entries) {
  json v;
  for (const auto& [k, val] : entries) v[k] = val;
  v["conventions_version"] = kConventionsVersion;
  return v;
}

struct BudgetFlags {
  int restarts = 64;
  int iterations = 2000;
  std::uint64_t seed = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--restarts", restarts, "oracle restarts");
    cmd->add_option("--iterations", iterations, "oracle iterations per restart");
    cmd->add_option("--seed", seed, "oracle master seed");
  }
  OracleBudget budget() const {
    OracleBudget b;
    b.restarts = restarts;
    b.iterations = iterations;
    b.seed = seed;
    return b;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral majorization toolkit (" + std::string(kVersion) + ")"};
  app.require_subcommand(1);
  int exit_code = kExitFeasible;

  bool force = false;
  app.add_flag("--force", force, "lift the admissible-tuple enumeration caps");

  auto kopts = [&]() {
    KlyachkoOptions o;
    o.enumeration.force = force;
    return o;
  };

  // ------------------------------------------------------------------ check
  auto* check = app.add_subcommand("check", "decide a spectral relation");
  check->require_subcommand(1);

  {
    auto* c = check->add_subcommand("majorize", "vector majorization x majorized by y");
    auto x = std::make_shared<std::string>();
    auto y = std::make_shared<std::string>();
    c->add_option("--x", *x, "candidate vector")->required();
    c->add_option("--y", *y, "dominating vector")->required();
    c->callback([&exit_code, x, y]() {
      Decision d = majorizes(parse_reals(*y), parse_reals(*x))
                       ? Decision::make_feasible()
                       : Decision::make_infeasible(Certificate{
                             Certificate::Kind::kStructural,
                             "a partial-sum or trace condition fails", 0, 0, std::nullopt});
      exit_code = emit_decision(d);
    });
  }

  for (const bool sub : {false, true}) {
    auto* c = check->add_subcommand(sub ? "ext-submajorize" : "ext-majorize",
                                    sub ? "extended submajorization (contractive orbit)"
                                        : "extended majorization");
    auto list = std::make_shared<std::string>();
    auto files = std::make_shared<std::vector<std::string>>();
    c->add_option("--list", *list, "spectral list d:c,d:c,...")->required();
    c->add_option("files", *files, "A.json B.json")->expected(2);
    c->callback([&exit_code, &kopts, list, files, sub]() {
      const SpectralList l = SpectralList::parse(*list);
      const MatrixDocument da = read_matrix_document((*files)[0]);
      const MatrixDocument db = read_matrix_document((*files)[1]);
      Tolerances tol = default_tolerances();
      if (da.hermitian_tol) tol.hermitian = *da.hermitian_tol;
      Decision d;
      if (sub) {
        d = ext_submajorizes(PsdMatrix(da.matrix, tol), PsdMatrix(db.matrix, tol), l,
                             kopts());
      } else {
        d = ext_majorizes(HermitianMatrix(da.matrix, tol), HermitianMatrix(db.matrix, tol),
                          l, kopts());
      }
      exit_code = emit_decision(d);
    });
  }

  {
    auto* c = check->add_subcommand("block", "diagonal-block compression feasibility");
    auto spec = std::make_shared<std::string>();
    auto ranks = std::make_shared<std::string>();
    auto targets = std::make_shared<std::vector<std::string>>();
    auto mode = std::make_shared<std::string>("unitary");
    auto alpha = std::make_shared<double>(std::nan(""));
    c->add_option("--spectrum", *spec, "spectrum of S")->required();
    c->add_option("--ranks", *ranks, "block ranks")->required();
    c->add_option("--target", *targets, "per-block target spectrum (repeat)")->required();
    c->add_option("--mode", *mode, "unitary | contractive")
        ->check(CLI::IsMember({"unitary", "contractive"}));
    c->add_option("--alpha", *alpha, "shift parameter (unitary mode)");
    c->callback([&exit_code, &kopts, spec, ranks, targets, mode, alpha]() {
      const Spectrum s{parse_reals(*spec)};
      std::vector<Spectrum> ts;
      for (const auto& t : *targets) ts.push_back(Spectrum(parse_reals(t)));
      const std::vector<int> rk = parse_ints(*ranks);
      Decision d;
      if (*mode == "contractive") {
        d = block_feasible_contractive(s, ts, rk, kopts());
      } else {
        std::optional<ShiftParameter> sp;
        if (!std::isnan(*alpha)) sp = ShiftParameter{*alpha};
        d = block_feasible_unitary(s, ts, rk, sp, kopts());
      }
      exit_code = emit_decision(d);
    });
  }

  {
    auto* c = check->add_subcommand("partial-trace", "partial-trace image feasibility");
    auto spec = std::make_shared<std::string>();
    auto target = std::make_shared<std::string>();
    auto d_ = std::make_shared<int>(0);
    auto m_ = std::make_shared<int>(0);
    auto mode = std::make_shared<std::string>("unitary");
    auto res = std::make_shared<int>(GridOptions{}.resolution);
    c->add_option("--spectrum", *spec, "spectrum of S (length d*m)")->required();
    c->add_option("--target", *target, "target spectrum (length d)")->required();
    c->add_option("--d", *d_, "block dimension")->required();
    c->add_option("--m", *m_, "number of blocks")->required();
    c->add_option("--mode", *mode)->check(CLI::IsMember({"unitary", "contractive"}));
    c->add_option("--resolution", *res, "grid resolution for the intermediate search");
    c->callback([&exit_code, &kopts, spec, target, d_, m_, mode, res]() {
      GridOptions g;
      g.resolution = *res;
      const Decision d = partial_trace_feasible(
          Spectrum(parse_reals(*spec)), Spectrum(parse_reals(*target)), *d_, *m_,
          *mode == "contractive" ? OrbitMode::kContractive : OrbitMode::kUnitary, kopts(),
          g);
      exit_code = emit_decision(d);
    });
  }

  for (const bool dominated : {false, true}) {
    auto* c = check->add_subcommand(dominated ? "klyachko-dominated" : "klyachko-sum",
                                    dominated
                                        ? "spectra of a dominated sum of Hermitian matrices"
                                        : "spectra of an exact sum of Hermitian matrices");
    auto l0 = std::make_shared<std::string>();
    auto li = std::make_shared<std::vector<std::string>>();
    c->add_option("--l0", *l0, "spectrum of the sum")->required();
    c->add_option("--li", *li, "summand spectrum (repeat)")->required();
    c->callback([&exit_code, &kopts, l0, li, dominated]() {
      std::vector<Spectrum> ls;
      for (const auto& t : *li) ls.push_back(Spectrum(parse_reals(t)));
      const Spectrum s0{parse_reals(*l0)};
      const Decision d = dominated ? klyachko_feasible_dominated(s0, ls, kopts())
                                   : klyachko_feasible_sum(s0, ls, kopts());
      exit_code = emit_decision(d);
    });
  }

  // -------------------------------------------------------------- construct
  auto* construct = app.add_subcommand("construct", "build and verify witnesses");
  construct->require_subcommand(1);

  {
    auto* c = construct->add_subcommand("schur-horn",
                                        "Hermitian matrix with given diagonal and spectrum");
    auto x = std::make_shared<std::string>();
    auto y = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("schur_horn.json");
    c->add_option("--x", *x, "target diagonal")->required();
    c->add_option("--y", *y, "target spectrum")->required();
    c->add_option("-o,--output", *out, "output matrix document");
    c->callback([&exit_code, x, y, out]() {
      const RealVector xv = parse_reals(*x), yv = parse_reals(*y);
      const HermitianMatrix a = schur_horn_construct(xv, yv);
      const EigSorted e = eig_sorted(a);
      double spec_resid = 0.0;
      RealVector ys = yv;
      std::sort(ys.data(), ys.data() + ys.size(), std::greater<double>());
      for (Eigen::Index i = 0; i < ys.size(); ++i) {
        spec_resid = std::max(spec_resid, std::abs(ys(i) - e.spectrum[i]));
      }
      double diag_resid = (a.matrix().diagonal().real() - xv).cwiseAbs().maxCoeff();
      write_matrix_document(*out, MatrixDocument::from_matrix(a.matrix(), "schur-horn"));
      std::cout << verification_block(
                       {{"diagonal_residual", diag_resid}, {"spectrum_residual", spec_resid}})
                       .dump(2)
                << "\n";
      exit_code = (diag_resid < default_tolerances().witness &&
                   spec_resid < 1e3 * default_tolerances().witness)
                      ? kExitFeasible
                      : kExitInternal;
    });
  }

  {
    auto* c = construct->add_subcommand(
        "witness", "unitary carrying B onto a conditional-expectation preimage of A");
    auto list = std::make_shared<std::string>();
    auto files = std::make_shared<std::vector<std::string>>();
    auto outdir = std::make_shared<std::string>(".");
    auto flags = std::make_shared<BudgetFlags>();
    c->add_option("--list", *list, "spectral list d:c,...")->required();
    c->add_option("files", *files, "A.json B.json")->expected(2);
    c->add_option("--outdir", *outdir, "output directory");
    flags->attach(c);
    c->callback([&exit_code, &kopts, list, files, outdir, flags]() {
      const SpectralList l = SpectralList::parse(*list);
      const HermitianMatrix a(read_matrix_document((*files)[0]).matrix);
      const HermitianMatrix b(read_matrix_document((*files)[1]).matrix);
      const ExpectationWitnessResult r =
          construct_expectation_witness(a, b, l, flags->budget(), kopts());
      if (r.status == WitnessStatus::kInfeasible) {
        exit_code = emit_decision(r.decision);
        return;
      }
      if (r.status == WitnessStatus::kInconclusive) {
        std::cout << "{\n  \"status\": \"inconclusive\",\n  \"detail\": \"oracle budget "
                     "exhausted before a verified witness was found\"\n}\n";
        exit_code = kExitInconclusive;
        return;
      }
      const auto& w = *r.witness;
      if (w.residual > 1e-6) {  // refuse to emit unverified witnesses
        std::cout << "{\n  \"status\": \"inconclusive\",\n  \"residual\": "
                  << w.residual << "\n}\n";
        exit_code = kExitInconclusive;
        return;
      }
      const std::filesystem::path dir(*outdir);
      write_matrix_document(dir / "U.json",
                            MatrixDocument::from_matrix(w.u.matrix(), "witness unitary"));
      write_matrix_document(dir / "A_realized.json",
                            MatrixDocument::from_matrix(w.realized, "realized target"));
      std::cout << verification_block({{"residual", w.residual}}).dump(2) << "\n";
      exit_code = kExitFeasible;
    });
  }

  {
    auto* c = construct->add_subcommand("nc-horn",
                                        "equalize all block compressions of a psd matrix");
    auto d_ = std::make_shared<int>(0);
    auto m_ = std::make_shared<int>(0);
    auto file = std::make_shared<std::string>();
    auto outdir = std::make_shared<std::string>(".");
    c->add_option("--d", *d_, "block dimension")->required();
    c->add_option("--m", *m_, "number of blocks")->required();
    c->add_option("file", *file, "A.json (psd, order d*m)")->required();
    c->add_option("--outdir", *outdir, "output directory");
    c->callback([&exit_code, d_, m_, file, outdir]() {
      const PsdMatrix a(read_matrix_document(*file).matrix);
      const NcHornResult r = nc_horn_lemma(a, *d_, *m_);
      const std::filesystem::path dir(*outdir);
      write_matrix_document(dir / "U.json",
                            MatrixDocument::from_matrix(r.u.matrix(), "flattening unitary"));
      write_matrix_document(dir / "D.json",
                            MatrixDocument::from_matrix(r.d.matrix(), "common block"));
      for (size_t i = 0; i < r.factors.size(); ++i) {
        write_matrix_document(dir / ("X" + std::to_string(i + 1) + ".json"),
                              MatrixDocument::from_matrix(r.factors[i], "factor"));
      }
      double avg_resid = 0.0;
      {
        Matrix acc = Matrix::Zero(a.order(), a.order());
        for (const Matrix& x : r.factors) acc += x * x.adjoint();
        avg_resid = max_abs(a.matrix() - acc / static_cast<double>(*m_));
      }
      std::cout << verification_block({{"block_residual", r.block_residual},
                                       {"average_decomposition_residual", avg_resid},
                                       {"trace_defect",
                                        std::abs(r.d.trace() - a.trace())}})
                       .dump(2)
                << "\n";
      exit_code = r.block_residual < 1e-8 ? kExitFeasible : kExitInternal;
    });
  }

  {
    auto* c = construct->add_subcommand("bourin", "unitaries with U*f(A)U + V*f(B)V <= f(A+B)");
    auto files = std::make_shared<std::vector<std::string>>();
    auto fname = std::make_shared<std::string>("t2");
    auto outdir = std::make_shared<std::string>(".");
    auto flags = std::make_shared<BudgetFlags>();
    c->add_option("files", *files, "A.json B.json")->expected(2);
    c->add_option("--f", *fname, "convex function with f(0)=0 (t2, relu1, texp, id)");
    c->add_option("--outdir", *outdir, "output directory");
    flags->attach(c);
    c->callback([&exit_code, files, fname, outdir, flags]() {
      const PsdMatrix a(read_matrix_document((*files)[0]).matrix);
      const PsdMatrix b(read_matrix_document((*files)[1]).matrix);
      const BourinResult r = bourin_decomposition(named_function(*fname), a, b,
                                                  flags->budget());
      const std::filesystem::path dir(*outdir);
      write_matrix_document(dir / "U.json", MatrixDocument::from_matrix(r.u.matrix(), "U"));
      write_matrix_document(dir / "V.json", MatrixDocument::from_matrix(r.v.matrix(), "V"));
      std::cout << verification_block({{"lambda_min", r.lambda_min}}).dump(2) << "\n";
      exit_code = r.lambda_min >= -default_tolerances().psd ? kExitFeasible
                                                            : kExitInconclusive;
    });
  }

  {
    auto* c = construct->add_subcommand(
        "transport", "transport a compression witness through a convex function");
    auto files = std::make_shared<std::vector<std::string>>();
    auto fname = std::make_shared<std::string>("t2");
    auto ranks = std::make_shared<std::string>();
    auto outdir = std::make_shared<std::string>(".");
    c->add_option("files", *files, "B.json W.json")->expected(2);
    c->add_option("--f", *fname, "convex function with f(0)=0");
    c->add_option("--ranks", *ranks, "projection system ranks")->required();
    c->add_option("--outdir", *outdir, "output directory");
    c->callback([&exit_code, files, fname, ranks, outdir]() {
      const PsdMatrix b(read_matrix_document((*files)[0]).matrix);
      const Contraction w(read_matrix_document((*files)[1]).matrix);
      const ProjectionSystem p(parse_ints(*ranks));
      const ScalarFunction f = named_function(*fname);
      const Contraction wt = monotone_transport(f, b, w, p);
      // verify: C_P(W~* f(B) W~) = f(C_P(W* B W))
      const Matrix fb = apply_function(f, b.hermitian()).matrix();
      const Matrix lhs = compress_matrix(p, wt.matrix().adjoint() * fb * wt.matrix());
      const BlockDiagonal ablocks =
          compress(p, w.matrix().adjoint() * b.matrix() * w.matrix());
      BlockDiagonal want;
      for (const Matrix& blk : ablocks.blocks) {
        want.blocks.push_back(
            apply_function(f, HermitianMatrix(0.5 * (blk + blk.adjoint()))).matrix());
      }
      const double resid = max_abs(lhs - want.assemble());
      const std::filesystem::path dir(*outdir);
      write_matrix_document(dir / "W_transported.json",
                            MatrixDocument::from_matrix(wt.matrix(), "transported witness"));
      std::cout << verification_block({{"residual", resid}}).dump(2) << "\n";
      exit_code = resid < 1e-6 ? kExitFeasible : kExitInternal;
    });
  }

  {
    auto* c = construct->add_subcommand(
        "counterexample", "non-convexity witness for block compressions of a unitary orbit");
    auto n_ = std::make_shared<int>(2);
    auto ranks = std::make_shared<std::string>("2");
    auto outdir = std::make_shared<std::string>(".");
    c->add_option("--n", *n_, "ambient order")->required();
    c->add_option("--ranks", *ranks, "projection ranks (first >= 2)")->required();
    c->add_option("--outdir", *outdir, "output directory");
    c->callback([&exit_code, &kopts, n_, ranks, outdir]() {
      const CounterexampleResult r =
          convexity_counterexample(*n_, parse_ints(*ranks), kopts());
      const std::filesystem::path dir(*outdir);
      write_matrix_document(dir / "S.json", MatrixDocument::from_matrix(r.s.matrix(), "S"));
      write_matrix_document(dir / "V.json", MatrixDocument::from_matrix(r.v.matrix(), "V"));
      write_matrix_document(dir / "T.json", MatrixDocument::from_matrix(r.t, "midpoint"));
      std::cout << "{\n  \"average_residual\": " << r.average_residual
                << ",\n  \"midpoint_verdict\": ";
      std::cout << decision_to_json_text(r.decision);
      std::cout << "}\n";
      // the point of the construction is the infeasibility of the midpoint
      exit_code = r.decision.feasible() ? kExitInternal : kExitFeasible;
    });
  }

  // ------------------------------------------------------------- admissible
  {
    auto* c = app.add_subcommand("admissible", "enumerate admissible subset tuples");
    auto n_ = std::make_shared<int>(0);
    auto m_ = std::make_shared<int>(2);
    auto r_ = std::make_shared<int>(0);
    c->add_option("--n", *n_, "ambient size")->required();
    c->add_option("--m", *m_, "number of summands");
    c->add_option("--r", *r_, "restrict to one subset cardinality");
    c->callback([&exit_code, &force, n_, m_, r_]() {
      EnumerationOptions opts;
      opts.force = force;
      std::vector<AdmissibleTuple> tuples;
      if (*n_ <= 1) {
        // no 1 <= r < n exists
      } else if (*r_ > 0) {
        tuples = enumerate_admissible_r(*n_, *m_, *r_, opts);
      } else {
        tuples = enumerate_admissible(*n_, *m_, opts);
      }
      std::cout << "# conventions " << kConventionsVersion << "\n";
      std::cout << "# n " << *n_ << " m " << *m_ << " count " << tuples.size() << "\n";
      for (const auto& t : tuples) std::cout << t.to_string() << "\n";
      exit_code = kExitFeasible;
    });
  }

  // --------------------------------------------------------------- validate
  {
    auto* c = app.add_subcommand("validate",
                                 "cross-validate the inequality engine against the "
                                 "numeric orbit search");
    auto n_ = std::make_shared<int>(3);
    auto m_ = std::make_shared<int>(2);
    auto samples = std::make_shared<int>(100);
    auto flags = std::make_shared<BudgetFlags>();
    flags->seed = 7;
    c->add_option("--n", *n_, "matrix order");
    c->add_option("--m", *m_, "number of summands");
    c->add_option("--samples", *samples, "number of random instances");
    flags->attach(c);
    c->callback([&exit_code, &kopts, n_, m_, samples, flags]() {
      std::mt19937_64 rng(flags->seed);
      std::uniform_int_distribution<int> entry(-4, 4);
      std::vector<SumInstance> instances;
      for (int s = 0; s < *samples; ++s) {
        auto draw = [&]() {
          RealVector v(*n_);
          for (int i = 0; i < *n_; ++i) v(i) = entry(rng) / 2.0;
          return Spectrum(std::move(v));
        };
        std::vector<Spectrum> ls;
        for (int j = 0; j < *m_; ++j) ls.push_back(draw());
        // half the instances are exact sums by construction
        if (s % 2 == 0) {
          std::mt19937_64 wr(derive_seed(flags->seed, 7777 + s));
          Matrix sum = Matrix::Zero(*n_, *n_);
          for (const auto& l : ls) {
            const Matrix u = random_unitary(*n_, wr).matrix();
            sum += u * l.values().cast<Complex>().asDiagonal() * u.adjoint();
          }
          instances.push_back(
              {eig_sorted(HermitianMatrix(0.5 * (sum + sum.adjoint()))).spectrum, ls});
        } else {
          instances.push_back({draw(), ls});
        }
      }
      const auto opts = kopts();
      const ValidationReport report = cross_validate(
          instances,
          [&](const SumInstance& inst) {
            return klyachko_feasible_sum(inst.lambda0, inst.lambdas, opts);
          },
          flags->budget());
      json j;
      j["total"] = report.total;
      j["feasible"] = report.feasible;
      j["witness_found"] = report.witness_found;
      j["hard_failures"] = report.hard_failures;
      j["suspicious"] = report.suspicious;
      j["failure_notes"] = report.failure_notes;
      j["conventions_version"] = kConventionsVersion;
      std::cout << j.dump(2) << "\n";
      exit_code = report.clean() ? kExitFeasible : kExitInfeasible;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return exit_code;
}
