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

#include "qcomb/comb.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace qcomb {

namespace {

constexpr double kBuildTol = 1e-8;

int dim_product(const std::vector<SystemLabel>& systems) {
  int d = 1;
  for (const auto& s : systems) d *= s.dim;
  return d;
}

std::vector<std::string> names_of(const std::vector<SystemLabel>& systems) {
  std::vector<std::string> out;
  out.reserve(systems.size());
  for (const auto& s : systems) out.push_back(s.name);
  return out;
}

}  // namespace

double Channel::cp_defect() const {
  return std::max(0.0, -min_eigenvalue(choi.mat));
}

double Channel::tp_defect() const {
  LabeledOperator marg = partial_trace(choi, names_of(outputs));
  return max_abs(marg.mat -
                 Matrix::Identity(marg.mat.rows(), marg.mat.cols()));
}

Channel choi_of_kraus(const std::vector<Matrix>& kraus,
                      std::vector<SystemLabel> inputs,
                      std::vector<SystemLabel> outputs) {
  if (kraus.empty()) throw InvalidChannel("empty Kraus list");
  const int din = dim_product(inputs);
  const int dout = dim_product(outputs);
  Matrix completeness = Matrix::Zero(din, din);
  for (const auto& k : kraus) {
    if (k.rows() != dout || k.cols() != din) {
      throw InvalidChannel("Kraus operator has wrong dimensions");
    }
    completeness += k.adjoint() * k;
  }
  if (max_abs(completeness - Matrix::Identity(din, din)) > kBuildTol) {
    throw InvalidChannel("Kraus operators do not satisfy sum K^dag K = 1");
  }

  // J[(i,a),(j,b)] = sum_k K[a,i] conj(K[b,j]); inputs are the most
  // significant index block.
  Matrix j = Matrix::Zero(din * dout, din * dout);
  for (const auto& k : kraus) {
    for (int i = 0; i < din; ++i) {
      for (int a = 0; a < dout; ++a) {
        const cxd left = k(a, i);
        if (left == cxd(0.0)) continue;
        for (int jj = 0; jj < din; ++jj) {
          for (int b = 0; b < dout; ++b) {
            j(i * dout + a, jj * dout + b) += left * std::conj(k(b, jj));
          }
        }
      }
    }
  }
  std::vector<SystemLabel> merged = inputs;
  merged.insert(merged.end(), outputs.begin(), outputs.end());
  return Channel{std::move(inputs), std::move(outputs),
                 LabeledOperator(SpaceLayout(std::move(merged)), std::move(j))};
}

Channel choi_of_unitary(const Matrix& u, std::vector<SystemLabel> inputs,
                        std::vector<SystemLabel> outputs) {
  if (u.rows() != u.cols() ||
      max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) >
          kBuildTol) {
    throw InvalidChannel("matrix is not unitary");
  }
  return choi_of_kraus({u}, std::move(inputs), std::move(outputs));
}

Channel choi_of_state(const Matrix& rho, std::vector<SystemLabel> outputs) {
  const int d = dim_product(outputs);
  if (rho.rows() != d || rho.cols() != d) {
    throw InvalidState("state has wrong dimension");
  }
  if (max_abs(rho - rho.adjoint()) > kBuildTol ||
      std::abs(rho.trace() - cxd(1.0)) > kBuildTol ||
      min_eigenvalue(rho) < -kBuildTol) {
    throw InvalidState("not a density matrix");
  }
  SpaceLayout layout(outputs);
  return Channel{{}, std::move(outputs), LabeledOperator(layout, rho)};
}

Channel choi_of_trace(std::vector<SystemLabel> inputs) {
  SpaceLayout layout(inputs);
  return Channel{std::move(inputs), {}, identity_on(layout)};
}

Channel channel_then_trace(const Channel& ch,
                           const std::vector<std::string>& dropped) {
  Channel out = ch;
  out.choi = partial_trace(ch.choi, dropped);
  std::vector<SystemLabel> kept;
  for (const auto& s : ch.outputs) {
    if (std::find(dropped.begin(), dropped.end(), s.name) == dropped.end()) {
      kept.push_back(s);
    } else if (!ch.choi.layout.contains(s.name)) {
      throw LabelNotFound("no output labeled '" + s.name + "'");
    }
  }
  if (kept.size() + dropped.size() != ch.outputs.size()) {
    throw LabelNotFound("dropped label is not an output of the channel");
  }
  out.outputs = std::move(kept);
  return out;
}

LabeledOperator link_product(const LabeledOperator& m,
                             const LabeledOperator& n) {
  std::vector<SystemLabel> m_only, n_only, shared;
  for (const auto& s : m.layout.systems()) {
    if (n.layout.contains(s.name)) {
      if (n.layout.dim_of(s.name) != s.dim) {
        throw LayoutMismatch("shared label '" + s.name +
                             "' has mismatched dims");
      }
      shared.push_back(s);
    } else {
      m_only.push_back(s);
    }
  }
  for (const auto& s : n.layout.systems()) {
    if (!m.layout.contains(s.name)) n_only.push_back(s);
  }

  // Extend both operands by identities so they live on the union space,
  // then align to a common order [m_only..., shared..., n_only...].
  LabeledOperator a = n_only.empty() ? m : kron(m, identity_on(n_only));
  LabeledOperator b = m_only.empty() ? n : kron(n, identity_on(m_only));

  std::vector<std::string> order;
  for (const auto& s : m_only) order.push_back(s.name);
  for (const auto& s : shared) order.push_back(s.name);
  for (const auto& s : n_only) order.push_back(s.name);
  a = permute_systems(a, order);
  b = permute_systems(b, order);

  if (shared.empty()) {
    return a.mat.rows() == b.mat.rows()
               ? LabeledOperator(a.layout, a.mat * b.mat)
               : a;  // unreachable; both live on the union space
  }
  LabeledOperator at = partial_transpose(a, names_of(shared));
  LabeledOperator prod(a.layout, at.mat * b.mat);
  return partial_trace(prod, names_of(shared));
}

FragmentShape::FragmentShape(std::vector<FragmentStep> steps)
    : steps_(std::move(steps)) {
  if (steps_.empty()) throw ShapeError("a comb needs at least one step");
  if (!steps_.front().inputs.empty()) {
    throw ShapeError("step 1 must have an empty input (initial preparation)");
  }
  std::unordered_set<std::string> seen;
  for (const auto& st : steps_) {
    for (const auto& s : st.inputs) {
      if (!seen.insert(s.name).second) {
        throw ShapeError("open system label '" + s.name + "' repeated");
      }
    }
    for (const auto& s : st.outputs) {
      if (!seen.insert(s.name).second) {
        throw ShapeError("open system label '" + s.name + "' repeated");
      }
    }
  }
}

SpaceLayout FragmentShape::open_layout() const {
  std::vector<SystemLabel> systems;
  for (const auto& st : steps_) {
    systems.insert(systems.end(), st.inputs.begin(), st.inputs.end());
    systems.insert(systems.end(), st.outputs.begin(), st.outputs.end());
  }
  return SpaceLayout(systems);
}

int FragmentShape::input_dim() const {
  int d = 1;
  for (const auto& st : steps_) d *= dim_product(st.inputs);
  return d;
}

int FragmentShape::output_dim() const {
  int d = 1;
  for (const auto& st : steps_) d *= dim_product(st.outputs);
  return d;
}

bool operator==(const FragmentShape& a, const FragmentShape& b) {
  if (a.steps_.size() != b.steps_.size()) return false;
  for (size_t i = 0; i < a.steps_.size(); ++i) {
    if (!(a.steps_[i].inputs == b.steps_[i].inputs &&
          a.steps_[i].outputs == b.steps_[i].outputs)) {
      return false;
    }
  }
  return true;
}

CircuitFragment build_fragment(const LabeledOperator& initial,
                               const std::vector<Channel>& steps) {
  if (initial.hermiticity_defect() > kBuildTol ||
      std::abs(initial.trace() - cxd(1.0)) > kBuildTol ||
      min_eigenvalue(initial.mat) < -kBuildTol) {
    throw InvalidState("initial operator is not a unit-trace density matrix");
  }

  // Label flow bookkeeping: a step input must either be pending (produced
  // earlier and not yet consumed: an internal memory) or globally fresh (an
  // open input).
  std::unordered_set<std::string> pending, ever;
  for (const auto& s : initial.layout.systems()) {
    pending.insert(s.name);
    ever.insert(s.name);
  }
  // Which labels are consumed by some step (and are therefore internal).
  std::unordered_set<std::string> consumed;
  for (const auto& ch : steps) {
    for (const auto& s : ch.inputs) consumed.insert(s.name);
  }

  LabeledOperator acc = initial;
  std::vector<FragmentStep> shape_steps;
  {
    FragmentStep first;
    for (const auto& s : initial.layout.systems()) {
      if (!consumed.count(s.name)) first.outputs.push_back(s);
    }
    shape_steps.push_back(std::move(first));
  }

  for (const auto& ch : steps) {
    FragmentStep open;
    for (const auto& s : ch.inputs) {
      if (pending.count(s.name)) {
        pending.erase(s.name);  // memory consumption
      } else if (ever.count(s.name)) {
        throw ShapeError("memory label '" + s.name + "' consumed twice");
      } else {
        ever.insert(s.name);
        open.inputs.push_back(s);  // fresh open input
      }
    }
    for (const auto& s : ch.outputs) {
      if (ever.count(s.name)) {
        throw ShapeError("output label '" + s.name + "' already in use");
      }
      ever.insert(s.name);
      pending.insert(s.name);
      if (!consumed.count(s.name)) open.outputs.push_back(s);
    }
    acc = link_product(acc, ch.choi);
    shape_steps.push_back(std::move(open));
  }

  for (const auto& name : pending) {
    if (consumed.count(name)) {
      throw ShapeError("memory label '" + name + "' never consumed");
    }
  }

  FragmentShape shape(std::move(shape_steps));
  SpaceLayout canonical = shape.open_layout();
  std::vector<std::string> order = names_of(canonical.systems());
  if (order.size() != static_cast<size_t>(acc.layout.size())) {
    throw ShapeError("leftover internal labels after assembly");
  }
  return CircuitFragment{shape, permute_systems(acc, order)};
}

namespace {

// Permute j into the shape's chronological open order, checking labels.
LabeledOperator align_to_shape(const LabeledOperator& j,
                               const FragmentShape& shape) {
  SpaceLayout canonical = shape.open_layout();
  if (j.layout.size() != canonical.size()) {
    throw ShapeError("operator layout does not match shape's open systems");
  }
  for (const auto& s : canonical.systems()) {
    if (!j.layout.contains(s.name) || j.layout.dim_of(s.name) != s.dim) {
      throw ShapeError("operator layout does not match shape's open systems");
    }
  }
  return permute_systems(j, names_of(canonical.systems()));
}

}  // namespace

ValidationReport validate_comb(const LabeledOperator& j,
                               const FragmentShape& shape, double tol) {
  LabeledOperator cur = align_to_shape(j, shape);
  ValidationReport report;
  report.tol = tol;

  {
    double neg = std::max(0.0, -min_eigenvalue(cur.mat));
    double herm = cur.hermiticity_defect();
    double res = std::max(neg, herm);
    report.checks.push_back({"psd", res, res <= tol});
  }
  {
    std::vector<std::string> all_outputs;
    std::vector<SystemLabel> all_inputs;
    for (const auto& st : shape.steps()) {
      for (const auto& s : st.outputs) all_outputs.push_back(s.name);
      for (const auto& s : st.inputs) all_inputs.push_back(s);
    }
    LabeledOperator marg = partial_trace(cur, all_outputs);
    double res = max_abs(
        marg.mat - Matrix::Identity(marg.mat.rows(), marg.mat.cols()));
    report.checks.push_back({"tp", res, res <= tol});
  }

  const auto& steps = shape.steps();
  for (int i = shape.step_count() - 1; i >= 1; --i) {
    const auto out_names = names_of(steps[i].outputs);
    const auto in_names = names_of(steps[i].inputs);
    const int d_in = dim_product(steps[i].inputs);

    LabeledOperator lhs = partial_trace(cur, out_names);
    std::vector<std::string> both = out_names;
    both.insert(both.end(), in_names.begin(), in_names.end());
    LabeledOperator prev = partial_trace(cur, both);
    prev.mat /= static_cast<double>(d_in);

    double res;
    if (steps[i].inputs.empty()) {
      res = max_abs_diff(lhs, prev);  // trivially zero by construction
    } else {
      LabeledOperator expected = kron(prev, identity_on(steps[i].inputs));
      res = max_abs_diff(lhs, expected);
    }
    report.checks.push_back(
        {"ns_level_" + std::to_string(i + 1), res, res <= tol});
    cur = prev;
  }
  return report;
}

ValidationReport validate_dual_comb(const LabeledOperator& t,
                                    const FragmentShape& shape, double tol) {
  LabeledOperator cur = align_to_shape(t, shape);
  ValidationReport report;
  report.tol = tol;

  {
    double neg = std::max(0.0, -min_eigenvalue(cur.mat));
    double herm = cur.hermiticity_defect();
    double res = std::max(neg, herm);
    report.checks.push_back({"psd", res, res <= tol});
  }

  const auto& steps = shape.steps();
  for (int k = shape.step_count() - 1; k >= 0; --k) {
    const auto out_names = names_of(steps[k].outputs);
    const int d_out = dim_product(steps[k].outputs);

    LabeledOperator theta = partial_trace(cur, out_names);
    theta.mat /= static_cast<double>(d_out);
    double res;
    if (steps[k].outputs.empty()) {
      res = 0.0;
    } else {
      LabeledOperator expected = kron(theta, identity_on(steps[k].outputs));
      res = max_abs_diff(cur, expected);
    }
    report.checks.push_back(
        {"factor_level_" + std::to_string(k + 1), res, res <= tol});

    if (k == 0) {
      double norm_res = std::abs(theta.mat(0, 0) - cxd(1.0));
      report.checks.push_back({"normalization", norm_res, norm_res <= tol});
    } else {
      cur = partial_trace(theta, names_of(steps[k].inputs));
    }
  }
  return report;
}

}  // namespace qcomb
