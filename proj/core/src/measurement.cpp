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

#include "qcomb/measurement.hpp"

#include <cmath>
#include <numbers>

namespace qcomb {

namespace {

constexpr double kBuildTol = 1e-8;

void check_unitary(const Matrix& u, int d) {
  if (u.rows() != d || u.cols() != d ||
      max_abs(u.adjoint() * u - Matrix::Identity(d, d)) > kBuildTol) {
    throw InvalidChannel("indicator parameter is not a d x d unitary");
  }
}

}  // namespace

LabeledOperator InteractiveMeasurement::dual_comb() const {
  if (elements.empty()) throw EmptyInput("measurement has no outcomes");
  LabeledOperator total = elements.front();
  for (size_t x = 1; x < elements.size(); ++x) total.mat += elements[x].mat;
  return total;
}

std::vector<CVector> bell_basis(int d) {
  if (d < 2) throw InvalidDimension("bell_basis requires d >= 2");
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  const cxd omega = std::exp(cxd(0.0, 2.0 * std::numbers::pi / d));
  std::vector<CVector> basis;
  basis.reserve(d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      CVector v = CVector::Zero(d * d);
      for (int k = 0; k < d; ++k) {
        // (X^a Z^b)|k> = omega^{bk} |k+a mod d> on the second factor.
        v(k * d + (k + a) % d) = norm * std::pow(omega, b * k);
      }
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

InteractiveMeasurement build_tester(const FragmentShape& shape,
                                    const std::vector<Channel>& interventions,
                                    const std::vector<LabeledOperator>& povm) {
  if (povm.empty()) throw InvalidPOVM("empty POVM");
  Matrix completeness =
      Matrix::Zero(povm.front().dim(), povm.front().dim());
  for (const auto& m : povm) {
    if (!(m.layout == povm.front().layout)) {
      throw InvalidPOVM("POVM elements live on different layouts");
    }
    if (m.hermiticity_defect() > kBuildTol ||
        min_eigenvalue(m.mat) < -kBuildTol) {
      throw InvalidPOVM("POVM element is not positive semidefinite");
    }
    completeness += m.mat;
  }
  if (max_abs(completeness -
              Matrix::Identity(completeness.rows(), completeness.cols())) >
      kBuildTol) {
    throw InvalidPOVM("POVM does not sum to the identity");
  }

  LabeledOperator chain(SpaceLayout{}, Matrix::Ones(1, 1));
  bool have_chain = false;
  for (const auto& ch : interventions) {
    chain = have_chain ? link_product(chain, ch.choi) : ch.choi;
    have_chain = true;
  }

  SpaceLayout canonical = shape.open_layout();
  std::vector<std::string> order;
  for (const auto& s : canonical.systems()) order.push_back(s.name);

  InteractiveMeasurement t;
  t.shape = shape;
  for (const auto& m : povm) {
    LabeledOperator mt(m.layout, m.mat.transpose());
    LabeledOperator elem = have_chain ? link_product(chain, mt) : mt;
    try {
      elem = permute_systems(elem, order);
    } catch (const Error&) {
      throw ShapeError(
          "intervention/POVM register chain does not produce elements on the "
          "fragment's open systems");
    }
    if (!(elem.layout == canonical)) {
      throw ShapeError("tester element dimensions do not match the shape");
    }
    t.elements.push_back(std::move(elem));
  }
  return t;
}

OutcomeDistribution outcome_distribution(const CircuitFragment& f,
                                         const InteractiveMeasurement& t) {
  if (!(f.shape == t.shape)) {
    throw ShapeError("fragment and measurement have incompatible shapes");
  }
  OutcomeDistribution dist;
  double sum = 0.0;
  for (const auto& elem : t.elements) {
    cxd p = link_product(f.choi, elem).scalar();
    if (p.real() < -1e-12 || std::abs(p.imag()) > 1e-9) {
      throw DomainError("outcome probability is not a nonnegative real");
    }
    double pr = std::max(0.0, p.real());
    sum += pr;
    dist.probs.push_back(pr);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("outcome probabilities sum to " + std::to_string(sum));
  }
  for (auto& p : dist.probs) p /= sum;
  return dist;
}

FragmentShape causal_map_shape(int d) {
  if (d < 2) throw InvalidDimension("causal maps need d >= 2");
  return FragmentShape({FragmentStep{{}, {{"A", d}}},
                        FragmentStep{{{"B", d}}, {{"C", d}}}});
}

InteractiveMeasurement cc_indicator(const Matrix& u1, const Matrix& u2) {
  const int d = static_cast<int>(u1.rows());
  check_unitary(u1, d);
  check_unitary(u2, d);

  SpaceLayout ac({{"A", d}, {"C", d}});
  SpaceLayout b({{"B", d}});
  Matrix rot = Matrix::Zero(d * d, d * d);
  {
    Matrix u12(d * d, d * d);  // U1 (x) U2
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        u12.block(i * d, j * d, d, d) = u1(i, j) * u2;
      }
    }
    rot = u12;
  }

  InteractiveMeasurement t;
  t.shape = causal_map_shape(d);
  for (const auto& phi : bell_basis(d)) {
    Matrix proj = phi * phi.adjoint();
    Matrix k = rot.adjoint() * proj * rot;  // (U1^dag (x) U2^dag) Phi (U1 (x) U2)
    LabeledOperator on_ac(ac, k.transpose());
    LabeledOperator elem =
        kron(LabeledOperator(b, Matrix::Identity(d, d) / d), on_ac);
    t.elements.push_back(permute_systems(elem, {"A", "B", "C"}));
  }
  return t;
}

InteractiveMeasurement cc_indicator(int d) {
  return cc_indicator(Matrix::Identity(d, d), Matrix::Identity(d, d));
}

InteractiveMeasurement dc_indicator(const Matrix& u3, const Matrix& u4) {
  const int d = static_cast<int>(u3.rows());
  check_unitary(u3, d);
  check_unitary(u4, d);

  SpaceLayout br({{"B", d}, {"R", d}});
  SpaceLayout cr({{"C", d}, {"R", d}});
  auto lift_first = [d](const Matrix& u) {
    // u (x) 1_R with the acted-on system most significant
    Matrix out = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        out.block(i * d, j * d, d, d) = u(i, j) * Matrix::Identity(d, d);
      }
    }
    return out;
  };
  const Matrix u3r = lift_first(u3);
  const Matrix u4r = lift_first(u4);

  const auto basis = bell_basis(d);
  Matrix phi1 = basis.front() * basis.front().adjoint();
  LabeledOperator probe(br, u3r * phi1 * u3r.adjoint());

  InteractiveMeasurement t;
  t.shape = causal_map_shape(d);
  LabeledOperator id_a(SpaceLayout({{"A", d}}), Matrix::Identity(d, d));
  for (const auto& phi : bell_basis(d)) {
    Matrix proj = phi * phi.adjoint();
    Matrix k = u4r.adjoint() * proj * u4r;  // U4^dag Phi_j U4 on (C,R)
    LabeledOperator meas(cr, k.transpose());
    LabeledOperator bc = link_product(probe, meas);  // contracts R -> [B, C]
    t.elements.push_back(kron(id_a, bc));
  }
  return t;
}

InteractiveMeasurement dc_indicator(int d) {
  return dc_indicator(Matrix::Identity(d, d), Matrix::Identity(d, d));
}

EigencircuitResult is_eigencircuit(const CircuitFragment& f,
                                   const InteractiveMeasurement& t,
                                   double tol) {
  OutcomeDistribution dist = outcome_distribution(f, t);
  EigencircuitResult r;
  for (size_t x = 0; x < dist.probs.size(); ++x) {
    if (dist.probs[x] > r.probability) {
      r.probability = dist.probs[x];
      r.outcome = static_cast<int>(x) + 1;
    }
  }
  r.yes = r.probability >= 1.0 - tol;
  return r;
}

}  // namespace qcomb
