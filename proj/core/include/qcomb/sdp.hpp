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

#include <optional>
#include <vector>

#include "qcomb/comb.hpp"

namespace qcomb {

// One affine equality Tr[A X] = b with A Hermitian.
struct SdpConstraint {
  Matrix a;
  double b = 0.0;
};

// maximize Tr[C X]  subject to  Tr[A_i X] = b_i,  X >= 0.
struct SdpProblem {
  Matrix objective;
  std::vector<SdpConstraint> constraints;
};

struct SdpSolution {
  Matrix x;
  double value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Equality constraints carving out the valid combs of `shape` (together with
// X >= 0): overall trace preservation plus, per step, non-signaling of the
// step's input to everything earlier. Operators are expressed on
// shape.open_layout() in chronological order.
std::vector<SdpConstraint> comb_constraints(const FragmentShape& shape);

// The maximally depolarizing comb (every step outputs the maximally mixed
// state): identity / prod(output dims). Strictly feasible interior point.
Matrix depolarizing_comb(const FragmentShape& shape);

// Primal-dual interior-point solver (Nesterov-Todd scaling, Mehrotra
// predictor-corrector) on the Hermitian PSD cone. Redundant equality
// constraints are removed by rank-revealing orthogonalization. Throws
// Infeasible on an inconsistent equality system and Unconverged if the
// iteration cap (200) is reached before gap and residual drop below tol.
SdpSolution solve_sdp(const SdpProblem& p, double tol = 1e-8,
                      const std::optional<Matrix>& x0 = std::nullopt);

}  // namespace qcomb
