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

#include <vector>

#include "qcomb/majorization.hpp"
#include "qcomb/measurement.hpp"
#include "qcomb/sdp.hpp"

namespace qcomb {

// The roulette game against c interactive measurements with M = sum_b m_b
// cells total: a player preparing any valid comb places k chips on cells and
// wins if the uniformly chosen measurement lands on a covered cell.
struct PWinResult {
  double value = 0.0;        // best winning probability (already / c)
  double raw = 0.0;          // same before clamping to [0, 1]
  std::vector<int> subset;   // winning cells as global indices (b * m + x)
};

// p_win,k: exhaustive maximization over all size-k cell subsets; each subset
// is one SDP over the valid combs of `shape`. M is capped at 12.
PWinResult p_win(const std::vector<InteractiveMeasurement>& measurements,
                 const FragmentShape& shape, int k);

struct RouletteReport {
  std::vector<InteractiveMeasurement> measurements;
  FragmentShape shape;
  std::vector<double> p_win;      // length M, clamped nondecreasing
  std::vector<double> p_win_raw;  // solver outputs before clamping
  std::vector<std::vector<int>> winning_subsets;
  ProbVector w;       // successive differences of p_win
  ProbVector w_flat;  // flatness(w)
  double c_basic = 0.0;
  double c_improved = 0.0;
};

// Full bound computation: the p_win staircase, its increments w, the
// flattened increments, and the entropic incompatibility bounds
// c_basic = c H(w) - c log c and c_improved = c H(F(w)) - c log c.
RouletteReport uncertainty_bound(
    const std::vector<InteractiveMeasurement>& measurements,
    const FragmentShape& shape);

struct VerificationCheck {
  std::string name;
  double margin = 0.0;  // >= 0 means the inequality holds
  bool pass = false;
};

struct VerificationRecord {
  std::vector<VerificationCheck> checks;
  std::vector<std::vector<double>> outcome_probs;  // per measurement

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

// Checks the uncertainty relation on a concrete fragment: the stacked
// outcome vector (p_1 (+) ... (+) p_c)/c must be majorized by w and by
// w_flat, and the summed Shannon entropies must reach c_basic. The fragment
// must pass validate_comb first (InvalidState otherwise).
VerificationRecord verify_relation(const CircuitFragment& f,
                                   const RouletteReport& report);

}  // namespace qcomb
