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

#include "json.hpp"
#include "qcomb/causal.hpp"
#include "qcomb/roulette.hpp"

namespace qcomb {

using Json = nlohmann::json;

// Matrix literal: array of rows, entries either plain numbers or [re, im].
Matrix parse_matrix(const Json& j);
Json matrix_to_json(const Matrix& m);

// Fragment spec:
//   {"systems": [{"name", "dim"}...],
//    "initial": {"max_entangled": [sysA, sysE]} | {"state": M, "on": [...]},
//    "steps": [{"unitary": M | "kraus": [M...],
//               "in": [...], "out": [...], "trace_out": [...]}...]}
// or the direct form {"systems": ..., "choi": M,
//                     "steps": [{"in": [...], "out": [...]}...]}.
// Malformed input raises InvalidInput.
CircuitFragment parse_fragment(const Json& j);
CircuitFragment load_fragment(const std::string& path);
Json fragment_to_json(const CircuitFragment& f);  // direct (choi) form

// Tester spec: the fragment shape it measures plus interventions and POVM:
//   {"systems": ..., "shape": [{"in", "out"}...],
//    "interventions": [step objects as above],
//    "povm": {"on": [...], "elements": [M...]}}
InteractiveMeasurement parse_tester(const Json& j);
InteractiveMeasurement load_tester(const std::string& path);

Json to_json(const ValidationReport& r);
Json to_json(const RouletteReport& r);
Json to_json(const VerificationRecord& r);
Json to_json(const CausalVerdict& v);

// value printed with 12 significant digits.
std::string format_sig(double x);

// header `param1,param2[,param3],h_cc,h_dc,sum`, LF endings, 12 digits.
std::string scan_to_csv(const std::vector<ScanRow>& rows);

}  // namespace qcomb
