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

#include "qcomb/majorization.hpp"
#include "qcomb/measurement.hpp"

namespace qcomb {

// System-environment qubit gate on (B, E), B most significant:
// e^{i alpha/2} * blockdiag(e^{-i alpha},
//                           [[cos b2, -i sin b2], [-i sin b2, cos b2]],
//                           e^{-i alpha}),  b2 = beta/2.
Matrix u_alpha_beta(double alpha, double beta);

// Three-parameter extension realized as the canonical three-CNOT two-qubit
// circuit with R_Z/R_Y single-qubit rotations; the gamma = 0 slice equals
// u_alpha_beta exactly (including global phase).
Matrix u_alpha_beta_gamma(double alpha, double beta, double gamma);

// Causal-map fragment Tr_F[U(phi+_{AE} (x) .)] for a two-qubit U on (B, E)
// producing (C, F): A and the environment start maximally entangled, the
// environment leg F is discarded.
CircuitFragment two_qubit_fragment(const Matrix& u);

// Partial SWAP: U_* = cos(pi/4) 1 + i sin(pi/4) SWAP, fed through
// two_qubit_fragment. Identical to the (alpha, beta) = (-pi/4, -pi/2) point.
CircuitFragment partial_swap_fragment();

// rho_A = 1/d with an identity channel B -> C. Saturates the causal bound:
// the common-cause indicator is uniform, the direct-cause one deterministic.
CircuitFragment halfmix_fragment(int d);

// phi+ preparation on (A, C) with the B leg discarded: the mirror saturating
// case (deterministic common-cause indicator).
CircuitFragment common_cause_fragment(int d);

struct JointUncertainty {
  double h_cc = 0.0;
  double h_dc = 0.0;
  double sum = 0.0;
};

// Shannon entropies of the two indicator outcome distributions; their sum
// obeys h_cc + h_dc >= 2 log2 d. The fragment must pass validate_comb.
JointUncertainty joint_uncertainty(const CircuitFragment& f, const Matrix& u1,
                                   const Matrix& u2, const Matrix& u3,
                                   const Matrix& u4);
JointUncertainty joint_uncertainty(const CircuitFragment& f);  // identities

struct CausalBoundReport {
  int d = 0;
  double bound = 0.0;      // 2 log2 d
  ProbVector vq;           // increment vector scaled back up by c = 2
  ProbVector w_halved;     // the roulette increments themselves
  double c_basic = 0.0;
  double c_improved = 0.0;
};

// Runs the roulette bound for the CC/DC indicator pair in dimension d.
CausalBoundReport causal_bound_report(int d = 2);

enum class CausalTag {
  PurelyCommonCause,
  PurelyDirectCause,
  Mixture,
  NonMarkovian,
  Inconclusive
};

std::string to_string(CausalTag tag);

struct CausalVerdict {
  CausalTag tag = CausalTag::Inconclusive;
  double h_cc = 0.0;  // smallest entropies witnessed
  double h_dc = 0.0;
  double bound = 0.0;
  bool max_entangled_init = false;
  bool searched = false;
};

// Decision table on the two indicator entropies (tolerance 1e-6 for "zero",
// margin 1e-3 for "strictly inside"). Verdicts that assume a maximally
// entangled initial system-environment state (PurelyCommonCause, Mixture,
// NonMarkovian) require the flag; without it they downgrade to Inconclusive.
CausalVerdict infer_causal_structure(double h_cc, double h_dc, int d,
                                     bool max_entangled_init);

// Fragment overload: evaluates the indicators at identity parameters; with
// `search` set it additionally minimizes each entropy over the indicator
// unitaries (coarse Euler-angle grid + simplex refinement, qubit only)
// before applying the table.
CausalVerdict infer_causal_structure(const CircuitFragment& f,
                                     bool max_entangled_init,
                                     bool search = false);

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
};

struct ScanRow {
  std::vector<double> params;
  double h_cc = 0.0;
  double h_dc = 0.0;
  double sum = 0.0;
};

// Evaluates joint_uncertainty over a parameter grid of a circuit family
// ("u_alpha_beta": 2 axes, "u_alpha_beta_gamma": 3 axes). Rows in row-major
// grid order, computed in parallel but deterministically.
std::vector<ScanRow> scan_landscape(const std::string& family,
                                    const std::vector<GridAxis>& grid);

}  // namespace qcomb
