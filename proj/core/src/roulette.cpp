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

#include "qcomb/roulette.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qcomb/parallel.hpp"

namespace qcomb {

namespace {

constexpr int kMaxCells = 12;

struct Engine {
  const FragmentShape& shape;
  std::vector<Matrix> cell_objectives;  // transposed tester elements
  std::vector<SdpConstraint> constraints;
  Matrix hint;
  std::vector<double> single_values;
  int c = 0;

  Engine(const std::vector<InteractiveMeasurement>& measurements,
         const FragmentShape& shape_in)
      : shape(shape_in) {
    if (measurements.empty()) throw EmptyInput("no measurements");
    c = static_cast<int>(measurements.size());
    for (const auto& t : measurements) {
      if (!(t.shape == shape)) {
        throw ShapeError("measurement shape does not match the game shape");
      }
      for (const auto& elem : t.elements) {
        cell_objectives.push_back(elem.mat.transpose());
      }
    }
    const int m = static_cast<int>(cell_objectives.size());
    if (m > kMaxCells) {
      throw InvalidInput("exhaustive subset search capped at " +
                         std::to_string(kMaxCells) + " cells, got " +
                         std::to_string(m));
    }
    constraints = comb_constraints(shape);
    const int dim = shape.open_layout().dim();
    hint = depolarizing_comb(shape) + 1e-3 * Matrix::Identity(dim, dim);

    single_values.assign(m, 0.0);
    parallel_for(m, [&](int z) { single_values[z] = solve({z}); });
  }

  int cells() const { return static_cast<int>(cell_objectives.size()); }

  double solve(const std::vector<int>& subset) const {
    Matrix obj = Matrix::Zero(hint.rows(), hint.cols());
    for (int z : subset) obj += cell_objectives[z];
    SdpProblem prob{std::move(obj), constraints};
    try {
      return solve_sdp(prob, 1e-8, hint).value;
    } catch (const Unconverged& e) {
      std::string cells_str;
      for (int z : subset) cells_str += " " + std::to_string(z);
      throw Unconverged(std::string(e.what()) + " (cells:" + cells_str + ")",
                        e.gap, e.residual, e.iterations);
    }
  }

  // max over size-k subsets of the subset SDP value, exhaustively; subsets
  // whose single-cell sum cannot beat the greedy incumbent are skipped.
  PWinResult best_of_size(int k) const {
    const int m = cells();
    PWinResult result;
    if (k == 0) return result;

    std::vector<std::vector<int>> subsets;
    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    for (;;) {
      subsets.push_back(comb);
      int i = k - 1;
      while (i >= 0 && comb[i] == m - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }

    // Greedy incumbent: the k individually best cells.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return single_values[a] > single_values[b];
    });
    std::vector<int> greedy(order.begin(), order.begin() + k);
    std::sort(greedy.begin(), greedy.end());
    const double incumbent = solve(greedy);

    const double kNoValue = -std::numeric_limits<double>::infinity();
    std::vector<double> values(subsets.size(), kNoValue);
    parallel_for(static_cast<int>(subsets.size()), [&](int i) {
      if (subsets[i] == greedy) {
        values[i] = incumbent;
        return;
      }
      double upper = 0.0;
      for (int z : subsets[i]) upper += single_values[z];
      if (upper <= incumbent + 1e-12) return;  // cannot beat the incumbent
      values[i] = solve(subsets[i]);
    });

    double best = incumbent;
    std::vector<int> best_subset = greedy;
    for (size_t i = 0; i < subsets.size(); ++i) {
      if (values[i] > best + 1e-12) {
        best = values[i];
        best_subset = subsets[i];
      }
    }
    result.raw = best / c;
    result.value = std::clamp(result.raw, 0.0, 1.0);
    result.subset = best_subset;
    return result;
  }
};

// min over prefixes of (sorted y prefix sum - sorted x prefix sum).
double majorization_slack(const std::vector<double>& y,
                          const std::vector<double>& x) {
  const size_t n = std::max(x.size(), y.size());
  auto sorted = [n](std::vector<double> v) {
    v.resize(std::max(n, v.size()), 0.0);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return v;
  };
  const auto xs = sorted(x), ys = sorted(y);
  double px = 0.0, py = 0.0;
  double slack = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    px += xs[i];
    py += ys[i];
    slack = std::min(slack, py - px);
  }
  return slack;
}

}  // namespace

PWinResult p_win(const std::vector<InteractiveMeasurement>& measurements,
                 const FragmentShape& shape, int k) {
  Engine engine(measurements, shape);
  if (k < 0 || k > engine.cells()) {
    throw InvalidInput("chip count out of range");
  }
  return engine.best_of_size(k);
}

RouletteReport uncertainty_bound(
    const std::vector<InteractiveMeasurement>& measurements,
    const FragmentShape& shape) {
  Engine engine(measurements, shape);
  const int m = engine.cells();

  RouletteReport report;
  report.measurements = measurements;
  report.shape = shape;
  double prev = 0.0;
  for (int k = 1; k <= m; ++k) {
    PWinResult r = engine.best_of_size(k);
    report.p_win_raw.push_back(r.raw);
    // absorb solver noise: the staircase is nondecreasing and capped at 1
    double clamped = std::clamp(r.value, prev, 1.0);
    report.p_win.push_back(clamped);
    report.winning_subsets.push_back(r.subset);
    prev = clamped;
  }
  if (std::abs(report.p_win.back() - 1.0) > 1e-7) {
    throw DomainError("p_win at full coverage is " +
                      std::to_string(report.p_win.back()) + ", expected 1");
  }

  std::vector<double> w(m);
  for (int k = 0; k < m; ++k) {
    w[k] = (report.p_win[k] - (k == 0 ? 0.0 : report.p_win[k - 1])) /
           report.p_win.back();
  }
  report.w = ProbVector(w);
  report.w_flat = flatness(w);
  const double c = static_cast<double>(engine.c);
  report.c_basic = c * shannon_entropy(report.w) - c * std::log2(c);
  report.c_improved = c * shannon_entropy(report.w_flat) - c * std::log2(c);
  return report;
}

VerificationRecord verify_relation(const CircuitFragment& f,
                                   const RouletteReport& report) {
  if (!(f.shape == report.shape)) {
    throw ShapeError("fragment shape does not match the report");
  }
  ValidationReport vr = validate_comb(f.choi, f.shape);
  if (!vr.ok()) {
    throw InvalidState("fragment fails comb validation, worst residual " +
                       std::to_string(vr.worst_residual()));
  }

  const double c = static_cast<double>(report.measurements.size());
  VerificationRecord record;
  std::vector<double> stacked;
  double entropy_sum = 0.0;
  for (const auto& t : report.measurements) {
    OutcomeDistribution dist = outcome_distribution(f, t);
    record.outcome_probs.push_back(dist.probs);
    entropy_sum += shannon_entropy(ProbVector(dist.probs));
    for (double p : dist.probs) stacked.push_back(p / c);
  }

  double s1 = majorization_slack(report.w.entries, stacked);
  record.checks.push_back({"majorized_by_w", s1, s1 >= -1e-7});
  double s2 = majorization_slack(report.w_flat.entries, stacked);
  record.checks.push_back({"majorized_by_w_flat", s2, s2 >= -1e-7});
  double s3 = entropy_sum - report.c_basic;
  record.checks.push_back({"entropy_sum_vs_c_basic", s3, s3 >= -1e-7});
  return record;
}

}  // namespace qcomb
