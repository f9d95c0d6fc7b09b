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

#include "qcomb/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qcomb {

namespace {

const Json& require(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput("missing field '" + key + "'");
  }
  return j.at(key);
}

std::vector<std::string> parse_names(const Json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of system names");
  std::vector<std::string> names;
  for (const auto& n : j) {
    if (!n.is_string()) throw InvalidInput("system name must be a string");
    names.push_back(n.get<std::string>());
  }
  return names;
}

using DimMap = std::vector<SystemLabel>;

DimMap parse_systems(const Json& j) {
  const Json& sys = require(j, "systems");
  if (!sys.is_array() || sys.empty()) {
    throw InvalidInput("'systems' must be a nonempty array");
  }
  DimMap dims;
  for (const auto& s : sys) {
    if (!require(s, "name").is_string() ||
        !require(s, "dim").is_number_integer()) {
      throw InvalidInput("each system needs a string 'name' and integer 'dim'");
    }
    dims.push_back({s.at("name").get<std::string>(), s.at("dim").get<int>()});
  }
  return dims;
}

std::vector<SystemLabel> labels_for(const DimMap& dims,
                                    const std::vector<std::string>& names) {
  std::vector<SystemLabel> out;
  for (const auto& name : names) {
    bool found = false;
    for (const auto& s : dims) {
      if (s.name == name) {
        out.push_back(s);
        found = true;
        break;
      }
    }
    if (!found) throw InvalidInput("undeclared system '" + name + "'");
  }
  return out;
}

cxd parse_entry(const Json& e) {
  if (e.is_number()) return cxd(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return cxd(e[0].get<double>(), e[1].get<double>());
  }
  throw InvalidInput("matrix entry must be a number or [re, im]");
}

Matrix phi_plus(int d) {
  CVector v = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k) v(k * d + k) = 1.0 / std::sqrt(double(d));
  return v * v.adjoint();
}

LabeledOperator parse_initial(const Json& j, const DimMap& dims) {
  const Json& init = require(j, "initial");
  if (init.contains("max_entangled")) {
    auto names = parse_names(init.at("max_entangled"));
    if (names.size() != 2) {
      throw InvalidInput("'max_entangled' needs exactly two systems");
    }
    auto labels = labels_for(dims, names);
    if (labels[0].dim != labels[1].dim) {
      throw InvalidInput("maximally entangled systems must share a dimension");
    }
    return LabeledOperator(SpaceLayout(labels), phi_plus(labels[0].dim));
  }
  Matrix state = parse_matrix(require(init, "state"));
  auto labels = labels_for(dims, parse_names(require(init, "on")));
  return LabeledOperator(SpaceLayout(labels), std::move(state));
}

Channel parse_step(const Json& step, const DimMap& dims) {
  auto ins = labels_for(dims, parse_names(require(step, "in")));
  auto outs = labels_for(dims, parse_names(require(step, "out")));
  Channel ch;
  if (step.contains("unitary")) {
    ch = choi_of_unitary(parse_matrix(step.at("unitary")), ins, outs);
  } else if (step.contains("kraus")) {
    const Json& ks = step.at("kraus");
    if (!ks.is_array() || ks.empty()) {
      throw InvalidInput("'kraus' must be a nonempty array of matrices");
    }
    std::vector<Matrix> kraus;
    for (const auto& k : ks) kraus.push_back(parse_matrix(k));
    ch = choi_of_kraus(kraus, ins, outs);
  } else {
    throw InvalidInput("step needs 'unitary' or 'kraus'");
  }
  if (step.contains("trace_out")) {
    ch = channel_then_trace(ch, parse_names(step.at("trace_out")));
  }
  return ch;
}

FragmentShape parse_shape(const Json& steps, const DimMap& dims) {
  if (!steps.is_array() || steps.empty()) {
    throw InvalidInput("'steps' must be a nonempty array");
  }
  std::vector<FragmentStep> shape_steps;
  for (const auto& st : steps) {
    FragmentStep fs;
    fs.inputs = labels_for(dims, parse_names(require(st, "in")));
    fs.outputs = labels_for(dims, parse_names(require(st, "out")));
    shape_steps.push_back(std::move(fs));
  }
  return FragmentShape(std::move(shape_steps));
}

}  // namespace

Matrix parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw InvalidInput("matrix must be a nonempty array of rows");
  }
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw InvalidInput("matrix rows must be nonempty arrays");
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw InvalidInput("ragged matrix rows");
    }
    for (size_t c = 0; c < cols; ++c) m(r, c) = parse_entry(j[r][c]);
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CircuitFragment parse_fragment(const Json& j) {
  DimMap dims = parse_systems(j);
  try {
    if (j.contains("choi")) {
      FragmentShape shape = parse_shape(require(j, "steps"), dims);
      Matrix choi = parse_matrix(j.at("choi"));
      return CircuitFragment{shape,
                             LabeledOperator(shape.open_layout(), choi)};
    }
    LabeledOperator initial = parse_initial(j, dims);
    const Json& steps = require(j, "steps");
    if (!steps.is_array() || steps.empty()) {
      throw InvalidInput("'steps' must be a nonempty array");
    }
    std::vector<Channel> channels;
    for (const auto& st : steps) channels.push_back(parse_step(st, dims));
    return build_fragment(initial, channels);
  } catch (const InvalidInput&) {
    throw;
  } catch (const Error& e) {
    throw InvalidInput(std::string("invalid fragment spec: ") + e.what());
  }
}

CircuitFragment load_fragment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("JSON parse error: ") + e.what());
  }
  return parse_fragment(j);
}

Json fragment_to_json(const CircuitFragment& f) {
  Json j;
  Json systems = Json::array();
  Json steps = Json::array();
  for (const auto& st : f.shape.steps()) {
    Json in = Json::array(), out = Json::array();
    for (const auto& s : st.inputs) {
      in.push_back(s.name);
      systems.push_back({{"name", s.name}, {"dim", s.dim}});
    }
    for (const auto& s : st.outputs) {
      out.push_back(s.name);
      systems.push_back({{"name", s.name}, {"dim", s.dim}});
    }
    steps.push_back({{"in", std::move(in)}, {"out", std::move(out)}});
  }
  j["systems"] = std::move(systems);
  j["steps"] = std::move(steps);
  j["choi"] = matrix_to_json(f.choi.mat);
  return j;
}

InteractiveMeasurement parse_tester(const Json& j) {
  DimMap dims = parse_systems(j);
  try {
    FragmentShape shape = parse_shape(require(j, "shape"), dims);
    std::vector<Channel> interventions;
    if (j.contains("interventions")) {
      for (const auto& st : j.at("interventions")) {
        interventions.push_back(parse_step(st, dims));
      }
    }
    const Json& povm = require(j, "povm");
    auto labels = labels_for(dims, parse_names(require(povm, "on")));
    SpaceLayout layout(labels);
    std::vector<LabeledOperator> elements;
    for (const auto& e : require(povm, "elements")) {
      elements.emplace_back(layout, parse_matrix(e));
    }
    return build_tester(shape, interventions, elements);
  } catch (const InvalidInput&) {
    throw;
  } catch (const Error& e) {
    throw InvalidInput(std::string("invalid tester spec: ") + e.what());
  }
}

InteractiveMeasurement load_tester(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("JSON parse error: ") + e.what());
  }
  return parse_tester(j);
}

Json to_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
  }
  return Json{{"ok", r.ok()},
              {"tol", r.tol},
              {"worst_residual", r.worst_residual()},
              {"checks", std::move(checks)}};
}

Json to_json(const RouletteReport& r) {
  return Json{{"p_win", r.p_win},
              {"p_win_raw", r.p_win_raw},
              {"winning_subsets", r.winning_subsets},
              {"w", r.w.entries},
              {"w_flat", r.w_flat.entries},
              {"c_basic", r.c_basic},
              {"c_improved", r.c_improved}};
}

Json to_json(const VerificationRecord& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"name", c.name}, {"margin", c.margin}, {"pass", c.pass}});
  }
  return Json{{"ok", r.ok()},
              {"checks", std::move(checks)},
              {"outcome_probs", r.outcome_probs}};
}

Json to_json(const CausalVerdict& v) {
  return Json{{"verdict", to_string(v.tag)},
              {"h_cc", v.h_cc},
              {"h_dc", v.h_dc},
              {"bound", v.bound},
              {"max_entangled_init", v.max_entangled_init},
              {"searched", v.searched}};
}

std::string format_sig(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  const size_t arity = rows.empty() ? 2 : rows.front().params.size();
  for (size_t p = 0; p < arity; ++p) out << "param" << (p + 1) << ",";
  out << "h_cc,h_dc,sum\n";
  for (const auto& row : rows) {
    for (double p : row.params) out << format_sig(p) << ",";
    out << format_sig(row.h_cc) << "," << format_sig(row.h_dc) << ","
        << format_sig(row.sum) << "\n";
  }
  return out.str();
}

}  // namespace qcomb
