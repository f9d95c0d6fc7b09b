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

#include "qcomb/errors.hpp"

namespace qcomb {

// A finite nonnegative vector with an explicit total (usually 1; subnormalized
// vectors appear when distributions are stacked with weights).
struct ProbVector {
  std::vector<double> entries;
  double total = 1.0;

  ProbVector() = default;
  ProbVector(std::vector<double> e, double t);  // validates nonneg + sum
  explicit ProbVector(std::vector<double> e);   // total inferred from the sum
};

// true iff x is majorized by y (x "flatter than" y). Vectors are zero-padded
// to a common length; totals must agree within 1e-9.
bool majorizes(const ProbVector& y, const ProbVector& x);

// b_S: difference sequence of the pointwise maxima of the k-prefix sums of
// the sorted members of S. Need not be sorted.
std::vector<double> aggregate_bound(const std::vector<ProbVector>& s);

// The flatness process F: the averaging step T applied d-1 times. T finds
// the first ascent x_j > x_{j-1}, extends the window leftwards while the
// entry before it stays >= the window mean (x_0 = +inf), and replaces the
// window by its mean. Output is sorted nonincreasing and majorized by v.
ProbVector flatness(const std::vector<double>& v);

// Least upper bound on the majorization lattice: flatness(aggregate_bound).
ProbVector lub(const std::vector<ProbVector>& s);

// Base-2 entropies with 0 log 0 = 0. Defined only for total = 1.
double shannon_entropy(const ProbVector& v);
double renyi_entropy(const ProbVector& v, double alpha);

}  // namespace qcomb
