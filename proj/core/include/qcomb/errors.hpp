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

#include <stdexcept>
#include <string>

namespace qcomb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QCOMB_DEFINE_ERROR(Name)  \
  struct Name : Error {           \
    using Error::Error;           \
  }

QCOMB_DEFINE_ERROR(LabelCollision);
QCOMB_DEFINE_ERROR(LabelNotFound);
QCOMB_DEFINE_ERROR(LayoutMismatch);
QCOMB_DEFINE_ERROR(InvalidDimension);
QCOMB_DEFINE_ERROR(InvalidChannel);
QCOMB_DEFINE_ERROR(InvalidState);
QCOMB_DEFINE_ERROR(InvalidPOVM);
QCOMB_DEFINE_ERROR(InvalidInput);
QCOMB_DEFINE_ERROR(ShapeError);
QCOMB_DEFINE_ERROR(TotalMismatch);
QCOMB_DEFINE_ERROR(EmptyInput);
QCOMB_DEFINE_ERROR(DomainError);
QCOMB_DEFINE_ERROR(Infeasible);

#undef QCOMB_DEFINE_ERROR

// Carries the best iterate's diagnostics when the SDP iteration cap is hit.
struct Unconverged : Error {
  Unconverged(const std::string& msg, double gap_, double residual_, int iterations_)
      : Error(msg), gap(gap_), residual(residual_), iterations(iterations_) {}
  double gap;
  double residual;
  int iterations;
};

}  // namespace qcomb
