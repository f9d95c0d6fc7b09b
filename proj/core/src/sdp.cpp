// Copyright 2026 The qcomb developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcomb/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qcomb {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

Matrix sym(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Real coordinates of a Hermitian matrix in an orthonormal basis (so the
// trace inner product becomes the Euclidean dot product): n diagonal entries
// followed by sqrt(2)*(Re, Im) of each strict upper entry in row-major order.
Eigen::VectorXd svec(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd v(n * n);
  for (int k = 0; k < n; ++k) v(k) = m(k, k).real();
  int p = n;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      v(p++) = kSqrt2 * m(k, l).real();
      v(p++) = kSqrt2 * m(k, l).imag();
    }
  }
  return v;
}

Matrix smat(const Eigen::VectorXd& v, int n) {
  Matrix m(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = v(k);
  int p = n;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      double re = v(p++) / kSqrt2;
      double im = v(p++) / kSqrt2;
      m(k, l) = cxd(re, im);
      m(l, k) = cxd(re, -im);
    }
  }
  return m;
}

// f applied to the eigenvalues of a Hermitian matrix, floored at eps.
Matrix spectral_map(const Matrix& m, double (*f)(double), double eps) {
  HermitianEig eig = hermitian_eig(m);
  Eigen::VectorXd mapped(eig.values.size());
  for (int k = 0; k < eig.values.size(); ++k) {
    mapped(k) = f(std::max(eig.values(k), eps));
  }
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

double sqrt_fn(double x) { return std::sqrt(x); }
double invsqrt_fn(double x) { return 1.0 / std::sqrt(x); }

// Nesterov-Todd scaling point: W Z W = X.
Matrix nt_scaling(const Matrix& x, const Matrix& z) {
  Matrix xh = spectral_map(x, sqrt_fn, 1e-14);
  Matrix mid = spectral_map(xh * z * xh, invsqrt_fn, 1e-16);
  return sym(xh * mid * xh);
}

// Largest alpha in (0, 1] keeping s + alpha*ds positive definite, damped.
double step_length(const Matrix& s, const Matrix& ds, double tau) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(sym(ds), sym(s));
  double lmin = ges.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return 1.0;
  return std::min(1.0, -tau / lmin);
}

// Hermitian operator basis of dimension d as labeled operators on `layout`.
std::vector<Matrix> hermitian_basis(int d, bool traceless) {
  std::vector<Matrix> basis;
  if (!traceless) {
    for (int k = 0; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(k, k) = 1.0;
      basis.push_back(std::move(m));
    }
  } else {
    for (int k = 0; k + 1 < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(k, k) = 1.0;
      m(k + 1, k + 1) = -1.0;
      basis.push_back(std::move(m));
    }
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      Matrix re = Matrix::Zero(d, d);
      re(k, l) = 1.0;
      re(l, k) = 1.0;
      basis.push_back(std::move(re));
      Matrix im = Matrix::Zero(d, d);
      im(k, l) = cxd(0.0, 1.0);
      im(l, k) = cxd(0.0, -1.0);
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

std::vector<std::string> names_of(const SpaceLayout& layout) {
  std::vector<std::string> names;
  for (const auto& s : layout.systems()) names.push_back(s.name);
  return names;
}

}  // namespace

std::vector<SdpConstraint> comb_constraints(const FragmentShape& shape) {
  const SpaceLayout canonical = shape.open_layout();
  const auto order = names_of(canonical);

  std::vector<SystemLabel> all_inputs, all_outputs;
  for (const auto& st : shape.steps()) {
    all_inputs.insert(all_inputs.end(), st.inputs.begin(), st.inputs.end());
    all_outputs.insert(all_outputs.end(), st.outputs.begin(),
                       st.outputs.end());
  }

  std::vector<SdpConstraint> out;

  // Trace preservation: Tr_outputs[X] = 1_inputs, paired with a Hermitian
  // basis F of the input space: Tr[(F (x) 1_out) X] = Tr[F].
  {
    SpaceLayout in_layout(all_inputs);
    for (const auto& f : hermitian_basis(in_layout.dim(), false)) {
      LabeledOperator a = kron(LabeledOperator(in_layout, f),
                               identity_on(all_outputs));
      out.push_back(
          {permute_systems(a, order).mat, f.trace().real()});
    }
  }

  // Non-signaling of each step's input to everything earlier: for every F on
  // the earlier open systems and traceless K on in_i,
  // Tr[(F (x) K (x) 1_rest) X] = 0.
  const auto& steps = shape.steps();
  for (size_t i = 1; i < steps.size(); ++i) {
    if (steps[i].inputs.empty()) continue;
    std::vector<SystemLabel> earlier;
    for (size_t k = 0; k < i; ++k) {
      earlier.insert(earlier.end(), steps[k].inputs.begin(),
                     steps[k].inputs.end());
      earlier.insert(earlier.end(), steps[k].outputs.begin(),
                     steps[k].outputs.end());
    }
    std::vector<SystemLabel> later;
    for (size_t k = i; k < steps.size(); ++k) {
      if (k > i) {
        later.insert(later.end(), steps[k].inputs.begin(),
                     steps[k].inputs.end());
      }
      later.insert(later.end(), steps[k].outputs.begin(),
                   steps[k].outputs.end());
    }
    SpaceLayout early_layout(earlier);
    SpaceLayout in_layout(steps[i].inputs);
    for (const auto& f : hermitian_basis(early_layout.dim(), false)) {
      for (const auto& k : hermitian_basis(in_layout.dim(), true)) {
        LabeledOperator a =
            kron(kron(LabeledOperator(early_layout, f),
                      LabeledOperator(in_layout, k)),
                 identity_on(later));
        out.push_back({permute_systems(a, order).mat, 0.0});
      }
    }
  }
  return out;
}

Matrix depolarizing_comb(const FragmentShape& shape) {
  const int dim = shape.open_layout().dim();
  return Matrix::Identity(dim, dim) / shape.output_dim();
}

SdpSolution solve_sdp(const SdpProblem& p, double tol,
                      const std::optional<Matrix>& x0) {
  const int n = static_cast<int>(p.objective.rows());
  if (n < 1 || p.objective.cols() != n) {
    throw ShapeError("objective must be a square matrix");
  }
  if (p.constraints.empty()) {
    throw EmptyInput("SDP needs at least one equality constraint");
  }
  const Matrix c = sym(p.objective);
  if (max_abs(p.objective - c) > 1e-10) {
    throw DomainError("objective is not Hermitian");
  }

  const int nn = n * n;
  const int m_raw = static_cast<int>(p.constraints.size());
  Eigen::MatrixXd g(m_raw, nn);
  Eigen::VectorXd b_raw(m_raw);
  for (int i = 0; i < m_raw; ++i) {
    const auto& con = p.constraints[i];
    if (con.a.rows() != n || con.a.cols() != n) {
      throw ShapeError("constraint dimension mismatch");
    }
    if (max_abs(con.a - sym(con.a)) > 1e-10) {
      throw DomainError("constraint operator is not Hermitian");
    }
    g.row(i) = svec(sym(con.a)).transpose();
    b_raw(i) = con.b;
  }

  // Replace the raw rows with an orthonormal basis of their span, so the
  // Schur system below has full rank and stays well conditioned.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g.transpose());
  const int r = static_cast<int>(qr.rank());
  if (r == 0) throw DomainError("all constraints are zero");
  Eigen::MatrixXd q_r =
      qr.householderQ() * Eigen::MatrixXd::Identity(nn, r);
  Eigen::MatrixXd a_mat = q_r.transpose();  // r x nn, orthonormal rows
  Eigen::MatrixXd r_top = qr.matrixR()
                              .topLeftCorner(r, r)
                              .template triangularView<Eigen::Upper>();
  Eigen::VectorXd pb = qr.colsPermutation().transpose() * b_raw;
  Eigen::VectorXd b = r_top.transpose()
                          .template triangularView<Eigen::Lower>()
                          .solve(pb.head(r));
  // Consistency of the dropped (dependent) equations.
  Eigen::VectorXd residual_b = g * (a_mat.transpose() * b) - b_raw;
  if (residual_b.lpNorm<Eigen::Infinity>() > 1e-7) {
    throw Infeasible("equality constraints are inconsistent");
  }

  auto apply_a = [&](const Matrix& xm) -> Eigen::VectorXd {
    return a_mat * svec(xm);
  };
  auto apply_adj = [&](const Eigen::VectorXd& y) -> Matrix {
    return smat(a_mat.transpose() * y, n);
  };

  Matrix x = Matrix::Identity(n, n);
  if (x0) {
    Matrix hint = sym(*x0);
    if (hint.rows() == n && min_eigenvalue(hint) > 1e-9) x = hint;
  }
  Matrix z = Matrix::Identity(n, n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(r);

  const int kMaxIter = 200;
  const double tau = 0.98;
  double gap = 0.0, resid = 0.0, pobj = 0.0, dobj = 0.0;

  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::VectorXd rp = b - apply_a(x);
    Matrix rd = c - apply_adj(y) + z;  // want A*(y) - z = c
    pobj = svec(c).dot(svec(x));
    dobj = b.dot(y);
    gap = std::abs(pobj - dobj);
    resid = std::max(rp.lpNorm<Eigen::Infinity>(), max_abs(rd));
    if (gap <= tol && resid <= tol) {
      return SdpSolution{x, pobj, dobj, gap, resid, it};
    }
    if (std::getenv("QCOMB_SDP_TRACE")) {
      fprintf(stderr, "it=%d pobj=%.12g gap=%.3g resid=%.3g minX=%.3g minZ=%.3g\n",
              it, pobj, gap, resid, min_eigenvalue(x), min_eigenvalue(z));
    }

    const double mu = (x * z).trace().real() / n;
    Matrix w = nt_scaling(x, z);
    Matrix zinv = spectral_map(z, invsqrt_fn, 1e-16);
    zinv = zinv * zinv;

    // Schur complement M_ij = <A_i, W A_j W>.
    Eigen::MatrixXd s_cols(nn, r);
    for (int j = 0; j < r; ++j) {
      Matrix aj = smat(a_mat.row(j).transpose(), n);
      s_cols.col(j) = svec(sym(w * aj * w));
    }
    Eigen::MatrixXd schur = a_mat * s_cols;
    schur = 0.5 * (schur + schur.transpose());
    Eigen::LDLT<Eigen::MatrixXd> fac(schur);
    if (fac.info() != Eigen::Success) {
      throw Unconverged("Schur system factorization failed", gap, resid, it);
    }

    auto newton = [&](const Matrix& rc) {
      Eigen::VectorXd rhs = a_mat * svec(sym(rc + w * rd * w)) - rp;
      Eigen::VectorXd dy = fac.solve(rhs);
      Matrix dz = sym(apply_adj(dy) - rd);
      Matrix dx = sym(rc - w * dz * w);
      return std::tuple<Matrix, Matrix, Eigen::VectorXd>(dx, dz, dy);
    };

    // Mehrotra predictor (sigma = 0) ...
    auto [dxa, dza, dya] = newton(-x);
    double apa = step_length(x, dxa, 1.0);
    double ada = step_length(z, dza, 1.0);
    double mu_aff =
        ((x + apa * dxa) * (z + ada * dza)).trace().real() / n;
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // ... and recentered corrector. The usual second-order term dXa dZa Z^-1
    // is omitted: near the optimal face Z^-1 is huge and the term destroys
    // the search direction, stalling the endgame.
    Matrix rc = sigma * mu * zinv - x;
    auto [dx, dz, dy] = newton(rc);
    double ap = step_length(x, dx, tau);
    double ad = step_length(z, dz, tau);
    if (std::getenv("QCOMB_SDP_TRACE")) {
      fprintf(stderr, "   sigma=%.3g apa=%.3g ada=%.3g ap=%.3g ad=%.3g mu=%.3g\n",
              sigma, apa, ada, ap, ad, mu);
    }

    x = sym(x + ap * dx);
    z = sym(z + ad * dz);
    y += ad * dy;
  }
  throw Unconverged("iteration cap reached", gap, resid, kMaxIter);
}

}  // namespace qcomb
