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

// An interactive measurement (tester): interventions interleaved with the
// fragment's steps, ended by a joint POVM. Stored as the CJ operators J_x
// of its outcome branches, on the open layout of the fragment shape it
// pairs with.
struct InteractiveMeasurement {
  FragmentShape shape;  // the PRIMAL shape this tester measures
  std::vector<LabeledOperator> elements;

  int outcome_count() const { return static_cast<int>(elements.size()); }
  LabeledOperator dual_comb() const;  // sum of elements
};

struct OutcomeDistribution {
  std::vector<double> probs;
};

// Heisenberg-Weyl Bell basis: Phi_i = (1 (x) X^a Z^b)|Phi_1> over (a,b) in
// Z_d x Z_d in lexicographic order, |Phi_1> = sum_k |kk>/sqrt(d). The shift
// and phase act on the second tensor factor.
std::vector<CVector> bell_basis(int d);

// Assembles tester elements J_x by linking the intervention CJ operators
// through their classical/quantum registers and ending with the transposed
// POVM elements. Element layouts must come out on shape.open_layout().
InteractiveMeasurement build_tester(const FragmentShape& shape,
                                    const std::vector<Channel>& interventions,
                                    const std::vector<LabeledOperator>& povm);

// probs[x] = J^Phi * J_x (link product over all systems).
OutcomeDistribution outcome_distribution(const CircuitFragment& f,
                                         const InteractiveMeasurement& t);

// The causal-map slot structure measured by the indicator families below:
// step 1 emits A, step 2 maps B -> C, all of dimension d.
FragmentShape causal_map_shape(int d);

// Maximal common-cause indicator: discard the B leg (feed 1/d), measure A
// and C jointly in the (U1, U2)-rotated Bell basis.
// Elements: J^CC_i = (1_B/d) (x) ((U1^dag (x) U2^dag) Phi_i (U1 (x) U2))^T.
InteractiveMeasurement cc_indicator(const Matrix& u1, const Matrix& u2);
InteractiveMeasurement cc_indicator(int d);  // U1 = U2 = identity

// Maximal direct-cause indicator: entangle B with a register R via the
// U3-rotated Phi_1, then Bell-measure C against R in the U4-rotated basis.
// Elements: J^DC_j = 1_A (x) [ (U3 Phi_1_{BR} U3^dag) * (U4^dag Phi_j_{CR} U4)^T ].
InteractiveMeasurement dc_indicator(const Matrix& u3, const Matrix& u4);
InteractiveMeasurement dc_indicator(int d);

struct EigencircuitResult {
  bool yes = false;
  int outcome = -1;       // 1-based when yes
  double probability = 0.0;
};

// Yes iff some outcome occurs with certainty (prob >= 1 - tol).
EigencircuitResult is_eigencircuit(const CircuitFragment& f,
                                   const InteractiveMeasurement& t,
                                   double tol = 1e-9);

}  // namespace qcomb
