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

#include "qcomb/tensor.hpp"

#include <algorithm>
#include <unordered_set>

namespace qcomb {

namespace {

// Mixed-radix index helpers over a subsystem dimension list. Index 0 is the
// most significant digit, matching the layout convention.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    s[k] = s[k + 1] * dims[k + 1];
  }
  return s;
}

std::vector<int> dims_of(const SpaceLayout& layout) {
  std::vector<int> d;
  d.reserve(layout.systems().size());
  for (const auto& s : layout.systems()) d.push_back(s.dim);
  return d;
}

}  // namespace

SpaceLayout::SpaceLayout(std::vector<SystemLabel> systems)
    : systems_(std::move(systems)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : systems_) {
    if (s.dim < 1) {
      throw InvalidDimension("system '" + s.name + "' has dim " +
                             std::to_string(s.dim));
    }
    if (!seen.insert(s.name).second) {
      throw LabelCollision("duplicate system label '" + s.name + "'");
    }
    dim_ *= s.dim;
  }
}

bool SpaceLayout::contains(const std::string& name) const {
  for (const auto& s : systems_) {
    if (s.name == name) return true;
  }
  return false;
}

int SpaceLayout::index_of(const std::string& name) const {
  for (size_t k = 0; k < systems_.size(); ++k) {
    if (systems_[k].name == name) return static_cast<int>(k);
  }
  throw LabelNotFound("no system labeled '" + name + "'");
}

int SpaceLayout::dim_of(const std::string& name) const {
  return systems_[index_of(name)].dim;
}

LabeledOperator::LabeledOperator(SpaceLayout l, Matrix m)
    : layout(std::move(l)), mat(std::move(m)) {
  if (mat.rows() != layout.dim() || mat.cols() != layout.dim()) {
    throw LayoutMismatch("matrix is " + std::to_string(mat.rows()) + "x" +
                         std::to_string(mat.cols()) + " but layout dim is " +
                         std::to_string(layout.dim()));
  }
}

cxd LabeledOperator::scalar() const {
  if (!is_scalar()) throw LayoutMismatch("operator is not a scalar");
  return mat(0, 0);
}

double LabeledOperator::hermiticity_defect() const {
  return max_abs(mat - mat.adjoint());
}

void LabeledOperator::assert_hermitian(double tol) const {
  double defect = hermiticity_defect();
  if (defect > tol) {
    throw DomainError("operator is not Hermitian: max|M - M^dagger| = " +
                      std::to_string(defect));
  }
}

LabeledOperator identity_on(const SpaceLayout& layout) {
  return LabeledOperator(layout, Matrix::Identity(layout.dim(), layout.dim()));
}

LabeledOperator identity_on(const std::vector<SystemLabel>& systems) {
  return identity_on(SpaceLayout(systems));
}

LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b) {
  std::vector<SystemLabel> merged = a.layout.systems();
  for (const auto& s : b.layout.systems()) {
    if (a.layout.contains(s.name)) {
      throw LabelCollision("kron operands share label '" + s.name + "'");
    }
    merged.push_back(s);
  }
  const int da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.mat(i, j) * b.mat;
    }
  }
  return LabeledOperator(SpaceLayout(std::move(merged)), std::move(out));
}

LabeledOperator partial_trace(const LabeledOperator& m,
                              const std::vector<std::string>& over) {
  const auto& systems = m.layout.systems();
  std::vector<bool> traced(systems.size(), false);
  for (const auto& name : over) traced[m.layout.index_of(name)] = true;

  std::vector<SystemLabel> kept_systems;
  std::vector<int> kept_idx, traced_idx;
  for (size_t k = 0; k < systems.size(); ++k) {
    if (traced[k]) {
      traced_idx.push_back(static_cast<int>(k));
    } else {
      kept_idx.push_back(static_cast<int>(k));
      kept_systems.push_back(systems[k]);
    }
  }
  const auto dims = dims_of(m.layout);
  const auto strides = strides_of(dims);

  int dk = 1, dt = 1;
  for (int k : kept_idx) dk *= dims[k];
  for (int k : traced_idx) dt *= dims[k];

  // Flat offsets of every kept multi-index and every traced multi-index.
  auto offsets = [&](const std::vector<int>& idx, int total) {
    std::vector<int> off(total, 0);
    for (int flat = 0; flat < total; ++flat) {
      int rest = flat, o = 0;
      for (int p = static_cast<int>(idx.size()) - 1; p >= 0; --p) {
        int d = dims[idx[p]];
        o += (rest % d) * strides[idx[p]];
        rest /= d;
      }
      off[flat] = o;
    }
    return off;
  };
  const auto keep_off = offsets(kept_idx, dk);
  const auto tr_off = offsets(traced_idx, dt);

  Matrix out = Matrix::Zero(dk, dk);
  for (int r = 0; r < dk; ++r) {
    for (int c = 0; c < dk; ++c) {
      cxd acc = 0.0;
      for (int t = 0; t < dt; ++t) {
        acc += m.mat(keep_off[r] + tr_off[t], keep_off[c] + tr_off[t]);
      }
      out(r, c) = acc;
    }
  }
  return LabeledOperator(SpaceLayout(std::move(kept_systems)), std::move(out));
}

LabeledOperator partial_transpose(const LabeledOperator& m,
                                  const std::vector<std::string>& over) {
  const auto& systems = m.layout.systems();
  std::vector<bool> flipped(systems.size(), false);
  for (const auto& name : over) flipped[m.layout.index_of(name)] = true;

  const auto dims = dims_of(m.layout);
  const auto strides = strides_of(dims);
  const int n = m.dim();

  // Split each flat index into (kept part, flipped part); the flipped parts
  // of row and column are exchanged.
  auto split = [&](int flat) {
    int kept = 0, flip = 0;
    for (size_t k = 0; k < dims.size(); ++k) {
      int digit = (flat / strides[k]) % dims[k];
      (flipped[k] ? flip : kept) += digit * strides[k];
    }
    return std::pair<int, int>(kept, flip);
  };

  Matrix out(n, n);
  for (int r = 0; r < n; ++r) {
    auto [rk, rf] = split(r);
    for (int c = 0; c < n; ++c) {
      auto [ck, cf] = split(c);
      out(rk + cf, ck + rf) = m.mat(r, c);
    }
  }
  return LabeledOperator(m.layout, std::move(out));
}

LabeledOperator permute_systems(const LabeledOperator& m,
                                const std::vector<std::string>& new_order) {
  const auto& systems = m.layout.systems();
  if (new_order.size() != systems.size()) {
    throw LayoutMismatch("permutation has wrong length");
  }
  std::vector<int> src(new_order.size());
  std::vector<bool> used(systems.size(), false);
  std::vector<SystemLabel> new_systems;
  for (size_t p = 0; p < new_order.size(); ++p) {
    int k = m.layout.index_of(new_order[p]);
    if (used[k]) throw LayoutMismatch("label repeated in permutation");
    used[k] = true;
    src[p] = k;
    new_systems.push_back(systems[k]);
  }

  const auto old_dims = dims_of(m.layout);
  const auto old_strides = strides_of(old_dims);
  SpaceLayout new_layout(new_systems);
  std::vector<int> new_dims = dims_of(new_layout);
  const auto new_strides = strides_of(new_dims);
  const int n = m.dim();

  // map[r_old] = r_new
  std::vector<int> map(n, 0);
  for (int r = 0; r < n; ++r) {
    int out = 0;
    for (size_t p = 0; p < src.size(); ++p) {
      int digit = (r / old_strides[src[p]]) % old_dims[src[p]];
      out += digit * new_strides[p];
    }
    map[r] = out;
  }
  Matrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out(map[r], map[c]) = m.mat(r, c);
  }
  return LabeledOperator(std::move(new_layout), std::move(out));
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b) {
  if (!(a.layout == b.layout)) {
    throw LayoutMismatch("operands live on different layouts");
  }
  return max_abs(a.mat - b.mat);
}

HermitianEig hermitian_eig(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("Hermitian eigendecomposition failed to converge");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Matrix& m) {
  return hermitian_eig(m).values.minCoeff();
}

}  // namespace qcomb
