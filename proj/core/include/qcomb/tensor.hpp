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

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcomb/errors.hpp"

namespace qcomb {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Absolute comparison tolerance used when none is given. All operators in
// this library are O(1)-normed, so absolute and relative scales coincide.
inline constexpr double kDefaultTol = 1e-9;

struct SystemLabel {
  std::string name;
  int dim = 0;

  friend bool operator==(const SystemLabel& a, const SystemLabel& b) {
    return a.name == b.name && a.dim == b.dim;
  }
};

// Ordered list of named subsystems. The order is significant: the FIRST
// listed system is the most significant kron index, i.e. a basis vector of
// the composite space is |i_0 i_1 ... i_{k-1}> with row index
// ((i_0*d_1 + i_1)*d_2 + ...).
class SpaceLayout {
 public:
  SpaceLayout() = default;
  explicit SpaceLayout(std::vector<SystemLabel> systems);

  const std::vector<SystemLabel>& systems() const { return systems_; }
  int size() const { return static_cast<int>(systems_.size()); }
  int dim() const { return dim_; }

  bool contains(const std::string& name) const;
  // Position of `name` in the system list; throws LabelNotFound.
  int index_of(const std::string& name) const;
  int dim_of(const std::string& name) const;

  friend bool operator==(const SpaceLayout& a, const SpaceLayout& b) {
    return a.systems_ == b.systems_;
  }

 private:
  std::vector<SystemLabel> systems_;
  int dim_ = 1;
};

// A complex square matrix over a labeled composite space: the universal
// carrier for states, Choi operators, POVM elements and comb operators.
struct LabeledOperator {
  SpaceLayout layout;
  Matrix mat;

  LabeledOperator() : mat(Matrix::Zero(1, 1)) {}
  LabeledOperator(SpaceLayout l, Matrix m);

  int dim() const { return layout.dim(); }
  cxd trace() const { return mat.trace(); }
  bool is_scalar() const { return layout.size() == 0; }
  cxd scalar() const;

  // max|M - M^dagger|; the "hermitian assertion" helper.
  double hermiticity_defect() const;
  void assert_hermitian(double tol = kDefaultTol) const;
};

LabeledOperator identity_on(const SpaceLayout& layout);
LabeledOperator identity_on(const std::vector<SystemLabel>& systems);

// Kronecker product; layouts are concatenated (a's systems first). Label
// sets must be disjoint.
LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b);

LabeledOperator partial_trace(const LabeledOperator& m,
                              const std::vector<std::string>& over);

LabeledOperator partial_transpose(const LabeledOperator& m,
                                  const std::vector<std::string>& over);

// Reorders the subsystems; `new_order` must be a permutation of the names
// in m.layout. Spectrum-preserving.
LabeledOperator permute_systems(const LabeledOperator& m,
                                const std::vector<std::string>& new_order);

double max_abs(const Matrix& m);
double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b);

struct HermitianEig {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns
};

// Dense Hermitian eigendecomposition (the input is symmetrized first to
// strip floating-point dust off the skew part).
HermitianEig hermitian_eig(const Matrix& m);

double min_eigenvalue(const Matrix& m);

}  // namespace qcomb
