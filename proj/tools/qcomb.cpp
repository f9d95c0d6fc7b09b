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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcomb/spec_io.hpp"

namespace {

using namespace qcomb;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 2;  // valid request, negative/impossible answer
constexpr int kExitInput = 3;     // unparseable or malformed input

// Round every float in a JSON tree to 12 significant digits before printing.
void round_floats(Json& j) {
  if (j.is_object() || j.is_array()) {
    for (auto& item : j) round_floats(item);
  } else if (j.is_number_float()) {
    j = std::strtod(format_sig(j.get<double>()).c_str(), nullptr);
  }
}

void emit(const Json& j, const std::string& output_path) {
  Json copy = j;
  round_floats(copy);
  if (output_path.empty()) {
    std::cout << copy.dump(2) << "\n";
  } else {
    std::ofstream out(output_path);
    if (!out) throw InvalidInput("cannot write '" + output_path + "'");
    out << copy.dump(2) << "\n";
  }
}

InteractiveMeasurement tester_from_arg(const std::string& arg, int dim) {
  if (arg == "cc_indicator") return cc_indicator(dim);
  if (arg == "dc_indicator") return dc_indicator(dim);
  return load_tester(arg);
}

int cmd_validate(const std::string& path) {
  CircuitFragment f = load_fragment(path);
  ValidationReport report = validate_comb(f.choi, f.shape);
  emit(to_json(report), "");
  return report.ok() ? kExitOk : kExitSemantic;
}

int cmd_bound(const std::string& preset,
              const std::vector<std::string>& tester_args, int dim,
              const std::string& check_path, const std::string& output) {
  std::vector<InteractiveMeasurement> measurements;
  if (preset == "cc_dc_qubit") {
    measurements.push_back(cc_indicator(2));
    measurements.push_back(dc_indicator(2));
    dim = 2;
  } else if (!preset.empty()) {
    throw InvalidInput("unknown preset '" + preset + "'");
  }
  for (const auto& arg : tester_args) {
    measurements.push_back(tester_from_arg(arg, dim));
  }
  if (measurements.empty()) {
    throw InvalidInput("no measurements given (use --preset or testers)");
  }
  const FragmentShape shape = measurements.front().shape;
  RouletteReport report = uncertainty_bound(measurements, shape);
  Json j = to_json(report);

  bool ok = true;
  if (!check_path.empty()) {
    CircuitFragment f = load_fragment(check_path);
    VerificationRecord record = verify_relation(f, report);
    j["verification"] = to_json(record);
    ok = record.ok();
  }
  emit(j, output);
  return ok ? kExitOk : kExitSemantic;
}

int cmd_scan(const std::string& family, int n,
             const std::optional<double>& alpha,
             const std::optional<double>& beta,
             const std::optional<double>& gamma, const std::string& output) {
  const double pi = std::numbers::pi;
  std::string full_family;
  std::vector<std::optional<double>> fixed;
  if (family == "ab" || family == "u_alpha_beta") {
    full_family = "u_alpha_beta";
    fixed = {alpha, beta};
  } else if (family == "abg" || family == "u_alpha_beta_gamma") {
    full_family = "u_alpha_beta_gamma";
    fixed = {alpha, beta, gamma};
  } else {
    throw InvalidInput("unknown family '" + family + "' (use ab or abg)");
  }
  std::vector<GridAxis> grid;
  for (const auto& f : fixed) {
    grid.push_back(f ? GridAxis{*f, *f, 1} : GridAxis{-pi, pi, n});
  }
  std::vector<ScanRow> rows = scan_landscape(full_family, grid);
  double min_sum = rows.front().sum;
  for (const auto& row : rows) min_sum = std::min(min_sum, row.sum);

  const std::string csv = scan_to_csv(rows);
  if (output.empty()) {
    std::cout << csv;
    std::cerr << "min sum = " << format_sig(min_sum) << "\n";
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + output + "'");
    out << csv;
    std::cout << "min sum = " << format_sig(min_sum) << "\n";
  }
  return kExitOk;
}

int cmd_infer(const std::string& fragment_path,
              const std::vector<double>& entropies, int dim,
              bool max_entangled_init, bool search,
              const std::string& output) {
  CausalVerdict verdict;
  try {
    if (!entropies.empty()) {
      if (entropies.size() != 2) {
        throw InvalidInput("--entropies needs exactly two values");
      }
      verdict = infer_causal_structure(entropies[0], entropies[1], dim,
                                       max_entangled_init);
    } else if (!fragment_path.empty()) {
      CircuitFragment f = load_fragment(fragment_path);
      verdict = infer_causal_structure(f, max_entangled_init, search);
    } else {
      throw InvalidInput("give a fragment file or --entropies");
    }
  } catch (const InvalidInput& e) {
    // well-formed request that no theorem can answer
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  emit(to_json(verdict), output);
  return kExitOk;
}

int cmd_lub(const std::string& path, const std::string& output) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("JSON parse error: ") + e.what());
  }
  if (j.is_object() && j.contains("vectors")) j = j.at("vectors");
  if (!j.is_array() || j.empty()) {
    throw InvalidInput("expected a nonempty array of vectors");
  }
  std::vector<ProbVector> vecs;
  for (const auto& v : j) {
    if (!v.is_array()) throw InvalidInput("each vector must be an array");
    std::vector<double> entries;
    for (const auto& x : v) {
      if (!x.is_number()) throw InvalidInput("vector entries must be numbers");
      entries.push_back(x.get<double>());
    }
    vecs.emplace_back(std::move(entries));
  }
  ProbVector result = lub(vecs);
  emit(Json{{"lub", result.entries}, {"total", result.total}}, output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum circuit fragments, uncertainty bounds, causal inference"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (COMB_THREADS wins)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a fragment spec");
  validate->add_option("fragment", validate_path, "fragment JSON file")
      ->required();

  std::string bound_preset, bound_check, bound_output;
  std::vector<std::string> bound_testers;
  int bound_dim = 2;
  auto* bound = app.add_subcommand("bound", "roulette uncertainty bound");
  bound->add_option("testers", bound_testers,
                    "tester files or preset names (cc_indicator/dc_indicator)");
  bound->add_option("--preset", bound_preset, "measurement preset (cc_dc_qubit)");
  bound->add_option("--dim", bound_dim, "dimension for indicator presets");
  bound->add_option("--check", bound_check, "fragment to verify the relation on");
  bound->add_option("--output", bound_output, "write JSON here instead of stdout");

  std::string scan_family = "ab", scan_output;
  int scan_n = 41;
  std::optional<double> scan_alpha, scan_beta, scan_gamma;
  auto* scan = app.add_subcommand("scan", "joint-uncertainty landscape CSV");
  scan->add_option("--family", scan_family, "circuit family: ab or abg");
  scan->add_option("--n", scan_n, "grid points per free axis");
  scan->add_option("--alpha", scan_alpha, "fix alpha");
  scan->add_option("--beta", scan_beta, "fix beta");
  scan->add_option("--gamma", scan_gamma, "fix gamma");
  scan->add_option("--output", scan_output, "write CSV here instead of stdout");

  std::string infer_path, infer_output;
  std::vector<double> infer_entropies;
  int infer_dim = 2;
  bool infer_flag = false, infer_search = false;
  auto* infer = app.add_subcommand("infer", "causal structure verdict");
  infer->add_option("fragment", infer_path, "fragment JSON file");
  infer->add_option("--entropies", infer_entropies, "h_cc h_dc directly")
      ->expected(2);
  infer->add_option("--dim", infer_dim, "system dimension for --entropies");
  infer->add_flag("--max-entangled-init", infer_flag,
                  "initial system-environment state is maximally entangled");
  infer->add_flag("--search", infer_search,
                  "minimize entropies over indicator unitaries first");
  infer->add_option("--output", infer_output, "write JSON here");

  std::string lub_path, lub_output;
  auto* lub_cmd = app.add_subcommand("lub", "majorization least upper bound");
  lub_cmd->add_option("vectors", lub_path, "JSON file with an array of vectors")
      ->required();
  lub_cmd->add_option("--output", lub_output, "write JSON here");

  CLI11_PARSE(app, argc, argv);

  if (threads > 0 && !std::getenv("COMB_THREADS")) {
    setenv("COMB_THREADS", std::to_string(threads).c_str(), 0);
  }

  try {
    if (*validate) return cmd_validate(validate_path);
    if (*bound) {
      return cmd_bound(bound_preset, bound_testers, bound_dim, bound_check,
                       bound_output);
    }
    if (*scan) {
      return cmd_scan(scan_family, scan_n, scan_alpha, scan_beta, scan_gamma,
                      scan_output);
    }
    if (*infer) {
      return cmd_infer(infer_path, infer_entropies, infer_dim, infer_flag,
                       infer_search, infer_output);
    }
    if (*lub_cmd) return cmd_lub(lub_path, lub_output);
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitOk;
}
