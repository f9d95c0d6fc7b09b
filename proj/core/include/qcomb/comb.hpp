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

#include <string>
#include <vector>

#include "qcomb/tensor.hpp"

namespace qcomb {

// A CPTP map held as its Choi operator J = (id (x) E)(|I><I|) over the
// layout [inputs..., outputs...], |I> = sum_i |ii> unnormalized.
struct Channel {
  std::vector<SystemLabel> inputs;
  std::vector<SystemLabel> outputs;
  LabeledOperator choi;

  // CP/TP residuals; cheap sanity gate used by the constructors below.
  double cp_defect() const;
  double tp_defect() const;
};

Channel choi_of_unitary(const Matrix& u, std::vector<SystemLabel> inputs,
                        std::vector<SystemLabel> outputs);
Channel choi_of_kraus(const std::vector<Matrix>& kraus,
                      std::vector<SystemLabel> inputs,
                      std::vector<SystemLabel> outputs);
// The Choi of a preparation IS the state.
Channel choi_of_state(const Matrix& rho, std::vector<SystemLabel> outputs);
// The Choi of Tr over the inputs is the identity on them.
Channel choi_of_trace(std::vector<SystemLabel> inputs);

// Drops some output systems of a channel (composes with a partial trace on
// the Choi). Used to discard final memories inside a step.
Channel channel_then_trace(const Channel& ch,
                           const std::vector<std::string>& dropped);

// Link product M * N = Tr_Y[M^{T_Y} N] over the shared labels Y, after
// extending both operands by identities and aligning system order. With no
// shared labels this is the Kronecker product. Result layout: m-exclusive
// systems first, then n-exclusive systems.
LabeledOperator link_product(const LabeledOperator& m,
                             const LabeledOperator& n);

// Time-ordered slot structure of a comb: per-step open input/output labels.
// Step 1 has an empty input (the initial preparation); internal memories
// never appear here.
struct FragmentStep {
  std::vector<SystemLabel> inputs;
  std::vector<SystemLabel> outputs;
};

class FragmentShape {
 public:
  FragmentShape() = default;
  explicit FragmentShape(std::vector<FragmentStep> steps);

  const std::vector<FragmentStep>& steps() const { return steps_; }
  int step_count() const { return static_cast<int>(steps_.size()); }

  // All open systems in chronological order: out_1, in_2, out_2, ...
  SpaceLayout open_layout() const;
  int input_dim() const;   // product over open input dims
  int output_dim() const;  // product over open output dims

  friend bool operator==(const FragmentShape& a, const FragmentShape& b);

 private:
  std::vector<FragmentStep> steps_;
};

struct CircuitFragment {
  FragmentShape shape;
  LabeledOperator choi;
};

// Assembles a comb by linking the initial state through the step channels;
// each link product eagerly traces out one internal memory. The final step
// must have discarded its memory already (see channel_then_trace). The open
// slot structure is inferred from the label flow.
CircuitFragment build_fragment(const LabeledOperator& initial,
                               const std::vector<Channel>& steps);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  double tol = 0.0;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  double worst_residual() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
  }
};

// Report-style comb validation (never throws on numerical failure):
//   (i)  J positive semidefinite,
//   (ii) Tr over all open outputs = identity on all open inputs,
//   (iii) recursively for i = a..2, with J(a) = J and
//         J(i-1) = Tr_{out_i, in_i}[J(i)] / d_{in_i}:
//         Tr_{out_i}[J(i)] = J(i-1) (x) 1_{in_i}.
ValidationReport validate_comb(const LabeledOperator& j,
                               const FragmentShape& shape, double tol = 1e-7);

// Validity check for the deterministic dual comb T = sum_x J_x of an
// interactive measurement paired with `shape`: T >= 0 and the recursive
// factorization T = 1_{out_a} (x) Theta with Theta's marginals telescoping
// down to the scalar 1.
ValidationReport validate_dual_comb(const LabeledOperator& t,
                                    const FragmentShape& shape,
                                    double tol = 1e-7);

}  // namespace qcomb
