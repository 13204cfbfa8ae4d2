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

#include "specmaj/oracle.hpp"

#include <cmath>

#include "specmaj/algebra.hpp"
#include "specmaj/hermitian.hpp"
#include "specmaj/random.hpp"

namespace specmaj {

namespace {

Matrix skew_part(const Matrix& m) { return 0.5 * (m - m.adjoint()); }

// exp(Omega) for skew-Hermitian Omega, via the eigendecomposition of the
// Hermitian matrix H = -i Omega.
Matrix exp_skew(const Matrix& omega) {
  const Matrix h = omega / Complex(0, 1);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const Eigen::Index n = omega.rows();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    phases(i) = std::exp(Complex(0, es.eigenvalues()(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix retract(const Matrix& u, const Matrix& direction, double step) {
  // direction given in Lie-algebra coordinates at u (Omega with dU = U Omega)
  return u * exp_skew(step * direction);
}

struct SpectraSumProblem {
  RealVector d0;
  std::vector<RealVector> ds;

  Matrix defect(const std::vector<Matrix>& us) const {
    Matrix m = d0.cast<Complex>().asDiagonal();
    for (size_t i = 0; i < us.size(); ++i) {
      m -= us[i] * ds[i].cast<Complex>().asDiagonal() * us[i].adjoint();
    }
    return 0.5 * (m + m.adjoint());
  }

  double objective(const std::vector<Matrix>& us) const {
    return defect(us).squaredNorm();
  }

  // Euclidean gradient at U_i is -4 M U_i D_i with M the Hermitian defect.
  Matrix lie_gradient(const Matrix& m, const std::vector<Matrix>& us, size_t i) const {
    const Matrix g = -4.0 * m * us[i] * ds[i].cast<Complex>().asDiagonal();
    return skew_part(us[i].adjoint() * g);
  }

  // One Gauss-Seidel alignment sweep: with the other factors held fixed, the
  // best U_i pairs the descending eigenbasis of the residual with the sorted
  // spectrum (the rearrangement bound for the trace).  Never increases the
  // objective; breaks the spurious stationary points of pure gradient flow
  // at mismatched diagonal configurations.
  void align_sweep(std::vector<Matrix>& us) const {
    const Eigen::Index n = d0.size();
    for (size_t i = 0; i < us.size(); ++i) {
      Matrix r = d0.cast<Complex>().asDiagonal();
      for (size_t j = 0; j < us.size(); ++j) {
        if (j == i) continue;
        r -= us[j] * ds[j].cast<Complex>().asDiagonal() * us[j].adjoint();
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (r + r.adjoint()));
      Matrix q(n, n);
      for (Eigen::Index k = 0; k < n; ++k) q.col(k) = es.eigenvectors().col(n - 1 - k);
      us[i] = q;
    }
  }
};

// Damped Gauss-Newton polish in tangent coordinates.  First-order descent
// slows to a crawl on boundary instances where the solution set is
// degenerate; the damped normal equations keep quadratic-ish local
// convergence there.  Variables are one skew-Hermitian generator per factor,
// residuals the real and imaginary parts of the Hermitian defect.
void lm_polish(const SpectraSumProblem& prob, std::vector<Matrix>& us, double& f,
               int max_iters, double target) {
  const Eigen::Index n = prob.d0.size();
  const int m = static_cast<int>(prob.ds.size());
  const int vars_per = static_cast<int>(n * n);
  const int vars = m * vars_per;
  const int res_dim = static_cast<int>(2 * n * n);

  // basis of the skew-Hermitian matrices
  std::vector<Matrix> basis;
  basis.reserve(vars_per);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p + 1; q < n; ++q) {
      Matrix e = Matrix::Zero(n, n);
      e(p, q) = 1.0;
      e(q, p) = -1.0;
      basis.push_back(e);
      e.setZero();
      e(p, q) = Complex(0, 1);
      e(q, p) = Complex(0, 1);
      basis.push_back(e);
    }
    Matrix e = Matrix::Zero(n, n);
    e(p, p) = Complex(0, 1);
    basis.push_back(e);
  }

  auto vec_real = [&](const Matrix& x, Eigen::VectorXd& out) {
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        out(k++) = x(i, j).real();
        out(k++) = x(i, j).imag();
      }
    }
  };

  double mu = 1e-4;
  Eigen::VectorXd r(res_dim), col(res_dim);
  Eigen::MatrixXd jac(res_dim, vars);
  for (int it = 0; it < max_iters && f > target; ++it) {
    const Matrix defect = prob.defect(us);
    vec_real(defect, r);
    for (int i = 0; i < m; ++i) {
      const Matrix base = us[i] * prob.ds[i].cast<Complex>().asDiagonal();
      for (int k = 0; k < vars_per; ++k) {
        // d defect = -U (E D - D E) U* for the generator E of factor i
        const Matrix de = -(us[i] * basis[k] * prob.ds[i].cast<Complex>().asDiagonal() -
                            base * basis[k]) *
                          us[i].adjoint();
        vec_real(de, col);
        jac.col(i * vars_per + k) = col;
      }
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool stepped = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
      std::vector<Matrix> trial(us.size());
      for (int i = 0; i < m; ++i) {
        Matrix omega = Matrix::Zero(n, n);
        for (int k = 0; k < vars_per; ++k) omega += delta(i * vars_per + k) * basis[k];
        trial[i] = us[i] * exp_skew(omega);
      }
      const double ft = prob.objective(trial);
      if (ft < f) {
        us.swap(trial);
        f = ft;
        mu = std::max(mu * 0.3, 1e-12);
        stepped = true;
        break;
      }
      mu *= 8.0;
    }
    if (!stepped) break;
  }
}

}  // namespace

double spectra_sum_objective(const Spectrum& lambda0, const std::vector<Spectrum>& lambdas,
                             const std::vector<Matrix>& us) {
  SpectraSumProblem prob;
  prob.d0 = lambda0.values();
  for (const auto& l : lambdas) prob.ds.push_back(l.values());
  return prob.objective(us);
}

Matrix spectra_sum_riemannian_gradient(const Spectrum& lambda0,
                                       const std::vector<Spectrum>& lambdas,
                                       const std::vector<Matrix>& us, int which) {
  SpectraSumProblem prob;
  prob.d0 = lambda0.values();
  for (const auto& l : lambdas) prob.ds.push_back(l.values());
  const Matrix m = prob.defect(us);
  // tangent vector at U: U * Omega
  return us[which] * prob.lie_gradient(m, us, which);
}

SpectraSumOutcome realize_spectra_sum(const Spectrum& lambda0,
                                      const std::vector<Spectrum>& lambdas,
                                      const OracleBudget& budget) {
  const Eigen::Index n = lambda0.size();
  if (lambdas.empty()) throw std::invalid_argument("realize_spectra_sum: no summands");
  for (const auto& l : lambdas) {
    if (l.size() != n) throw std::invalid_argument("realize_spectra_sum: length mismatch");
  }
  const int m = static_cast<int>(lambdas.size());
  SpectraSumProblem prob;
  prob.d0 = lambda0.values();
  for (const auto& l : lambdas) prob.ds.push_back(l.values());

  SpectraSumOutcome best;
  std::vector<Matrix> best_us;
  for (int restart = 0; restart < budget.restarts; ++restart) {
    std::mt19937_64 rng(derive_seed(budget.seed, static_cast<std::uint64_t>(restart)));
    std::vector<Matrix> us(m);
    for (int i = 0; i < m; ++i) {
      us[i] = (restart == 0) ? Matrix::Identity(n, n)
                             : random_unitary(static_cast<int>(n), rng).matrix();
    }
    double f = prob.objective(us);
    double step = budget.initial_step;
    const double floor_step = 1e-14;
    for (int it = 0; it < budget.iterations; ++it) {
      bool improved = false;
      if (it % 3 == 0) {
        std::vector<Matrix> swept = us;
        prob.align_sweep(swept);
        const double fs = prob.objective(swept);
        if (fs < f) {
          us.swap(swept);
          f = fs;
          improved = true;
        }
      }
      const Matrix defect = prob.defect(us);
      std::vector<Matrix> dirs(m);
      double gnorm2 = 0.0;
      for (int i = 0; i < m; ++i) {
        dirs[i] = prob.lie_gradient(defect, us, i);
        gnorm2 += dirs[i].squaredNorm();
      }
      if (f < 1e-30) break;
      if (gnorm2 >= 1e-32) {
        std::vector<Matrix> trial(m);
        double local = step;
        while (local > floor_step) {
          for (int i = 0; i < m; ++i) trial[i] = retract(us[i], dirs[i], -local);
          const double ft = prob.objective(trial);
          if (ft < f) {
            us.swap(trial);
            f = ft;
            step = local * budget.step_grow;
            improved = true;
            break;
          }
          local *= budget.step_shrink;
        }
      }
      if (!improved && it % 3 == 0) break;  // neither sweep nor gradient moved
      if (std::sqrt(f) <= 0.1 * budget.success_tol) break;
    }
    if (f > 1e-30) {
      lm_polish(prob, us, f, 80, 1e-2 * budget.success_tol * budget.success_tol);
    }
    const double resid = std::sqrt(prob.objective(us));
    if (resid < best.best_residual) {
      best.best_residual = resid;
      best_us = us;
    }
    if (best.best_residual <= budget.success_tol) break;
  }

  if (!best_us.empty() && best.best_residual <= budget.success_tol) {
    best.status = OracleStatus::kWitnessFound;
    for (const auto& u : best_us) best.unitaries.emplace_back(u);
  }
  return best;
}

// ---------------------------------------------------------------------------
// block compression search

namespace {

struct BlockProblem {
  Matrix b;
  std::vector<RealVector> targets;  // sorted non-increasing
  std::vector<int> ranks;
  std::vector<int> offsets;

  // residual^2 and the Hermitian weight matrix (block-embedded spectral
  // subgradient) at Y = X* B X
  std::pair<double, Matrix> eval(const Matrix& y) const {
    double g = 0.0;
    Matrix w = Matrix::Zero(y.rows(), y.cols());
    for (size_t i = 0; i < ranks.size(); ++i) {
      const int d = ranks[i], o = offsets[i];
      const Matrix block = 0.5 * (y.block(o, o, d, d) + y.block(o, o, d, d).adjoint());
      Eigen::SelfAdjointEigenSolver<Matrix> es(block);
      // ascending -> descending alignment with the sorted target
      RealVector t(d);
      for (int k = 0; k < d; ++k) t(k) = targets[i](d - 1 - k);  // ascending copy
      const RealVector dev = es.eigenvalues() - t;
      g += dev.squaredNorm();
      w.block(o, o, d, d) = 2.0 * es.eigenvectors() * dev.cast<Complex>().asDiagonal() *
                            es.eigenvectors().adjoint();
    }
    return {g, w};
  }
};

}  // namespace

BlockCompressionOutcome realize_block_compression(const HermitianMatrix& b,
                                                  const std::vector<Spectrum>& targets,
                                                  const std::vector<int>& ranks,
                                                  OrbitMode mode,
                                                  const OracleBudget& budget) {
  const Eigen::Index n = b.order();
  if (targets.size() != ranks.size()) {
    throw std::invalid_argument("realize_block_compression: targets/ranks mismatch");
  }
  BlockProblem prob;
  prob.b = b.matrix();
  prob.ranks = ranks;
  int total = 0;
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (targets[i].size() != ranks[i]) {
      throw std::invalid_argument("realize_block_compression: target length mismatch");
    }
    prob.targets.push_back(targets[i].values());
    prob.offsets.push_back(total);
    total += ranks[i];
  }
  if (total != n) {
    throw std::invalid_argument("realize_block_compression: ranks must sum to the order");
  }

  const bool contractive = (mode == OrbitMode::kContractive);
  BlockCompressionOutcome best;
  Matrix best_x;

  for (int restart = 0; restart < budget.restarts; ++restart) {
    std::mt19937_64 rng(derive_seed(budget.seed ^ 0x5bd1e995u,
                                    static_cast<std::uint64_t>(restart)));
    Matrix u = Matrix::Identity(n, n), v = Matrix::Identity(n, n);
    RealVector theta = RealVector::Zero(n);
    if (restart != 0) {
      u = random_unitary(static_cast<int>(n), rng).matrix();
      if (contractive) {
        v = random_unitary(static_cast<int>(n), rng).matrix();
        std::uniform_real_distribution<double> ud(0.0, 1.5707963267948966);
        for (Eigen::Index k = 0; k < n; ++k) theta(k) = ud(rng);
      }
    }
    auto make_x = [&](const Matrix& uu, const Matrix& vv, const RealVector& th) -> Matrix {
      if (!contractive) return uu;
      RealVector c(n);
      for (Eigen::Index k = 0; k < n; ++k) c(k) = std::cos(th(k));
      return uu * c.cast<Complex>().asDiagonal() * vv.adjoint();
    };

    Matrix x = make_x(u, v, theta);
    auto [f, w] = prob.eval(x.adjoint() * prob.b * x);
    double step = budget.initial_step;
    const double floor_step = 1e-14;
    for (int it = 0; it < budget.iterations; ++it) {
      const Matrix gx = 2.0 * prob.b * x * w;  // Euclidean gradient at X
      Matrix du, dv;
      RealVector dth;
      double gnorm2 = 0.0;
      if (!contractive) {
        du = skew_part(u.adjoint() * gx);
        gnorm2 = du.squaredNorm();
      } else {
        RealVector c(n), s(n);
        for (Eigen::Index k = 0; k < n; ++k) {
          c(k) = std::cos(theta(k));
          s(k) = std::sin(theta(k));
        }
        du = skew_part(u.adjoint() * gx * v * c.cast<Complex>().asDiagonal());
        dv = skew_part(v.adjoint() * gx.adjoint() * u * c.cast<Complex>().asDiagonal());
        const Matrix inner = u.adjoint() * gx * v;
        dth.resize(n);
        for (Eigen::Index k = 0; k < n; ++k) dth(k) = -s(k) * inner(k, k).real();
        gnorm2 = du.squaredNorm() + dv.squaredNorm() + dth.squaredNorm();
      }
      if (gnorm2 < 1e-32 || f < 1e-30) break;

      bool accepted = false;
      while (step > floor_step) {
        const Matrix ut = retract(u, du, -step);
        Matrix vt = v;
        RealVector tht = theta;
        if (contractive) {
          vt = retract(v, dv, -step);
          tht = theta - step * dth;
        }
        const Matrix xt = make_x(ut, vt, tht);
        auto [ft, wt] = prob.eval(xt.adjoint() * prob.b * xt);
        if (ft < f) {
          u = ut;
          v = vt;
          theta = tht;
          x = xt;
          f = ft;
          w = wt;
          step *= budget.step_grow;
          accepted = true;
          break;
        }
        step *= budget.step_shrink;
      }
      if (!accepted) break;
      if (std::sqrt(f) <= 0.1 * budget.success_tol) break;
    }
    const double resid = std::sqrt(prob.eval(x.adjoint() * prob.b * x).first);
    if (resid < best.best_residual) {
      best.best_residual = resid;
      best_x = x;
    }
    if (best.best_residual <= budget.success_tol) break;
  }

  if (best_x.size() > 0 && best.best_residual <= budget.success_tol) {
    best.status = OracleStatus::kWitnessFound;
    best.x = best_x;
  } else if (best_x.size() > 0) {
    best.x = best_x;
  }
  return best;
}

ValidationReport cross_validate(const std::vector<SumInstance>& instances,
                                const std::function<Decision(const SumInstance&)>& decider,
                                const OracleBudget& budget) {
  ValidationReport report;
  for (size_t idx = 0; idx < instances.size(); ++idx) {
    const SumInstance& inst = instances[idx];
    ValidationEntry entry;
    entry.decision = decider(inst);
    OracleBudget b = budget;
    b.seed = derive_seed(budget.seed, idx);
    const SpectraSumOutcome out = realize_spectra_sum(inst.lambda0, inst.lambdas, b);
    entry.oracle = out.status;
    entry.residual = out.best_residual;

    ++report.total;
    if (entry.decision.feasible()) ++report.feasible;
    if (out.status == OracleStatus::kWitnessFound) ++report.witness_found;
    if (!entry.decision.feasible() && out.status == OracleStatus::kWitnessFound) {
      ++report.hard_failures;
      report.failure_notes.push_back("instance " + std::to_string(idx) +
                                     ": infeasible verdict but witness found (residual " +
                                     std::to_string(out.best_residual) + ")");
    }
    if (!entry.decision.feasible() && entry.decision.certificate &&
        entry.decision.certificate->kind == Certificate::Kind::kInequality) {
      // the certified inequality must actually be violated
      if (entry.decision.certificate->lhs >= entry.decision.certificate->rhs) {
        ++report.hard_failures;
        report.failure_notes.push_back("instance " + std::to_string(idx) +
                                       ": certificate inequality not violated");
      }
    }
    if (entry.decision.feasible() && out.status == OracleStatus::kExhausted) {
      ++report.suspicious;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace specmaj
