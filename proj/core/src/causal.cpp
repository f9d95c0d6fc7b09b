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

#include "qcomb/causal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qcomb/parallel.hpp"
#include "qcomb/roulette.hpp"

namespace qcomb {

namespace {

using std::numbers::pi;

Matrix rz(double t) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(cxd(0.0, -t / 2));
  m(1, 1) = std::exp(cxd(0.0, t / 2));
  return m;
}

Matrix ry(double t) {
  Matrix m(2, 2);
  m(0, 0) = std::cos(t / 2);
  m(0, 1) = -std::sin(t / 2);
  m(1, 0) = std::sin(t / 2);
  m(1, 1) = std::cos(t / 2);
  return m;
}

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block(i * 2, j * 2, 2, 2) = a(i, j) * b;
  }
  return out;
}

// CNOT with control on the first (most significant) qubit.
Matrix cnot12() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1.0;
  return m;
}

// CNOT with control on the second qubit.
Matrix cnot21() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(2, 2) = m(3, 1) = m(1, 3) = 1.0;
  return m;
}

// exp(i (a XX + b YY + c ZZ)) via the three-CNOT canonical circuit.
Matrix canonical_gate(double a, double b, double c) {
  const Matrix pre = kron2(rz(pi / 2) * ry(pi / 2), ry(-pi / 2));
  const Matrix post = kron2(ry(pi / 2), ry(-pi / 2) * rz(-pi / 2));
  const Matrix c12 = cnot12(), c21 = cnot21();
  Matrix core = c21 * kron2(Matrix::Identity(2, 2), ry(2 * c + pi / 2)) *
                c12 * kron2(rz(2 * a + pi / 2), ry(2 * b + pi / 2)) * c21;
  return std::exp(cxd(0.0, -pi / 4)) * post * core * pre;
}

Matrix phi_plus_state(int d) {
  CVector v = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k) v(k * d + k) = 1.0 / std::sqrt(double(d));
  return v * v.adjoint();
}

Matrix euler(double t1, double t2, double t3) {
  return rz(t1) * ry(t2) * rz(t3);
}

int causal_dim(const CircuitFragment& f) {
  const auto& sys = f.shape.open_layout().systems();
  if (sys.empty()) throw ShapeError("fragment has no open systems");
  const int d = sys.front().dim;
  if (!(f.shape == causal_map_shape(d))) {
    throw ShapeError("fragment is not a causal map (A, B -> C)");
  }
  return d;
}

// Minimal Nelder-Mead simplex refinement; budget counts function calls.
std::vector<double> nelder_mead(std::function<double(const std::vector<double>&)> f,
                                std::vector<double> start, double scale,
                                int budget, double* best_value) {
  const size_t n = start.size();
  std::vector<std::pair<double, std::vector<double>>> simplex;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  simplex.push_back({eval(start), start});
  for (size_t k = 0; k < n; ++k) {
    auto p = start;
    p[k] += scale;
    simplex.push_back({eval(p), p});
  }
  auto order = [&] {
    std::sort(simplex.begin(), simplex.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  };
  order();
  while (evals < budget &&
         simplex.back().first - simplex.front().first > 1e-12) {
    std::vector<double> centroid(n, 0.0);
    for (size_t s = 0; s < n; ++s) {
      for (size_t k = 0; k < n; ++k) centroid[k] += simplex[s].second[k] / n;
    }
    auto blend = [&](double coef) {
      std::vector<double> x(n);
      for (size_t k = 0; k < n; ++k) {
        x[k] = centroid[k] + coef * (centroid[k] - simplex.back().second[k]);
      }
      return x;
    };
    auto xr = blend(1.0);
    double fr = eval(xr);
    if (fr < simplex.front().first) {
      auto xe = blend(2.0);
      double fe = eval(xe);
      simplex.back() = fe < fr ? std::make_pair(fe, xe) : std::make_pair(fr, xr);
    } else if (fr < simplex[n - 1].first) {
      simplex.back() = {fr, xr};
    } else {
      auto xc = blend(fr < simplex.back().first ? 0.5 : -0.5);
      double fc = eval(xc);
      if (fc < std::min(fr, simplex.back().first)) {
        simplex.back() = {fc, xc};
      } else {
        for (size_t s = 1; s <= n; ++s) {
          for (size_t k = 0; k < n; ++k) {
            simplex[s].second[k] =
                0.5 * (simplex[s].second[k] + simplex[0].second[k]);
          }
          simplex[s].first = eval(simplex[s].second);
        }
      }
    }
    order();
  }
  *best_value = simplex.front().first;
  return simplex.front().second;
}

// Smallest indicator entropy over one rotated unitary (the partner fixed to
// the identity loses no generality for maximally entangled bases).
double minimized_entropy(const CircuitFragment& f, bool common_cause,
                         int budget) {
  auto objective = [&](const std::vector<double>& t) {
    Matrix u = euler(t[0], t[1], t[2]);
    InteractiveMeasurement ind =
        common_cause ? cc_indicator(Matrix::Identity(2, 2), u)
                     : dc_indicator(Matrix::Identity(2, 2), u);
    return shannon_entropy(ProbVector(outcome_distribution(f, ind).probs));
  };
  double best = objective({0.0, 0.0, 0.0});
  std::vector<double> best_t{0.0, 0.0, 0.0};
  const int g = 5;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      for (int k = 0; k < g; ++k) {
        std::vector<double> t{2 * pi * i / g, pi * j / (g - 1),
                              2 * pi * k / g};
        double v = objective(t);
        if (v < best) {
          best = v;
          best_t = t;
        }
      }
    }
  }
  double refined = best;
  nelder_mead(objective, best_t, 0.2, budget, &refined);
  return std::min(best, refined);
}

}  // namespace

Matrix u_alpha_beta(double alpha, double beta) {
  Matrix m = Matrix::Zero(4, 4);
  const cxd diag = std::exp(cxd(0.0, -alpha));
  m(0, 0) = diag;
  m(3, 3) = diag;
  m(1, 1) = std::cos(beta / 2);
  m(2, 2) = std::cos(beta / 2);
  m(1, 2) = cxd(0.0, -std::sin(beta / 2));
  m(2, 1) = cxd(0.0, -std::sin(beta / 2));
  return std::exp(cxd(0.0, alpha / 2)) * m;
}

Matrix u_alpha_beta_gamma(double alpha, double beta, double gamma) {
  return canonical_gate(-(beta + gamma) / 4, -(beta - gamma) / 4, -alpha / 2);
}

CircuitFragment two_qubit_fragment(const Matrix& u) {
  LabeledOperator initial(SpaceLayout({{"A", 2}, {"E", 2}}),
                          phi_plus_state(2));
  Channel step = channel_then_trace(
      choi_of_unitary(u, {{"B", 2}, {"E", 2}}, {{"C", 2}, {"F", 2}}), {"F"});
  return build_fragment(initial, {step});
}

CircuitFragment partial_swap_fragment() {
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  Matrix u = std::cos(pi / 4) * Matrix::Identity(4, 4) +
             cxd(0.0, std::sin(pi / 4)) * swap;
  return two_qubit_fragment(u);
}

CircuitFragment halfmix_fragment(int d) {
  if (d < 2) throw InvalidDimension("halfmix_fragment needs d >= 2");
  LabeledOperator initial(SpaceLayout({{"A", d}}),
                          Matrix::Identity(d, d) / d);
  Channel step =
      choi_of_unitary(Matrix::Identity(d, d), {{"B", d}}, {{"C", d}});
  return build_fragment(initial, {step});
}

CircuitFragment common_cause_fragment(int d) {
  if (d < 2) throw InvalidDimension("common_cause_fragment needs d >= 2");
  LabeledOperator initial(SpaceLayout({{"A", d}, {"E", d}}),
                          phi_plus_state(d));
  // Discard B, rename the environment to C: K_i = <i|_B (x) 1_{E->C}.
  std::vector<Matrix> kraus;
  for (int i = 0; i < d; ++i) {
    Matrix k = Matrix::Zero(d, d * d);
    for (int e = 0; e < d; ++e) k(e, i * d + e) = 1.0;
    kraus.push_back(std::move(k));
  }
  Channel step = choi_of_kraus(kraus, {{"B", d}, {"E", d}}, {{"C", d}});
  return build_fragment(initial, {step});
}

JointUncertainty joint_uncertainty(const CircuitFragment& f, const Matrix& u1,
                                   const Matrix& u2, const Matrix& u3,
                                   const Matrix& u4) {
  causal_dim(f);
  ValidationReport vr = validate_comb(f.choi, f.shape);
  if (!vr.ok()) {
    throw InvalidState("fragment fails comb validation, worst residual " +
                       std::to_string(vr.worst_residual()));
  }
  JointUncertainty j;
  j.h_cc = shannon_entropy(
      ProbVector(outcome_distribution(f, cc_indicator(u1, u2)).probs));
  j.h_dc = shannon_entropy(
      ProbVector(outcome_distribution(f, dc_indicator(u3, u4)).probs));
  j.sum = j.h_cc + j.h_dc;
  return j;
}

JointUncertainty joint_uncertainty(const CircuitFragment& f) {
  const int d = causal_dim(f);
  Matrix id = Matrix::Identity(d, d);
  return joint_uncertainty(f, id, id, id, id);
}

CausalBoundReport causal_bound_report(int d) {
  RouletteReport r = uncertainty_bound({cc_indicator(d), dc_indicator(d)},
                                       causal_map_shape(d));
  CausalBoundReport out;
  out.d = d;
  out.bound = 2.0 * std::log2(static_cast<double>(d));
  std::vector<double> vq(r.w.entries);
  for (auto& x : vq) x *= 2.0;
  out.vq = ProbVector(std::move(vq), 2.0);
  out.w_halved = r.w;
  out.c_basic = r.c_basic;
  out.c_improved = r.c_improved;
  return out;
}

std::string to_string(CausalTag tag) {
  switch (tag) {
    case CausalTag::PurelyCommonCause:
      return "purely_common_cause";
    case CausalTag::PurelyDirectCause:
      return "purely_direct_cause";
    case CausalTag::Mixture:
      return "mixture";
    case CausalTag::NonMarkovian:
      return "non_markovian";
    case CausalTag::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

CausalVerdict infer_causal_structure(double h_cc, double h_dc, int d,
                                     bool max_entangled_init) {
  if (d < 2) throw InvalidDimension("causal maps need d >= 2");
  const double bound = 2.0 * std::log2(static_cast<double>(d));
  const double zero_tol = 1e-6;
  const double margin = 1e-3;
  for (double h : {h_cc, h_dc}) {
    if (h < -1e-9 || h > bound + zero_tol) {
      throw InvalidInput("indicator entropy " + std::to_string(h) +
                         " outside [0, 2 log d]");
    }
  }
  CausalVerdict v;
  v.h_cc = h_cc;
  v.h_dc = h_dc;
  v.bound = bound;
  v.max_entangled_init = max_entangled_init;

  const bool cc_inside = h_cc > margin && h_cc < bound - margin;
  const bool dc_inside = h_dc > margin && h_dc < bound - margin;
  if (h_cc <= zero_tol) {
    v.tag = max_entangled_init ? CausalTag::PurelyCommonCause
                               : CausalTag::Inconclusive;
  } else if (h_dc <= zero_tol) {
    v.tag = CausalTag::PurelyDirectCause;
  } else if (cc_inside && dc_inside) {
    v.tag = max_entangled_init ? CausalTag::Mixture : CausalTag::Inconclusive;
  } else if (cc_inside) {
    v.tag = max_entangled_init ? CausalTag::NonMarkovian
                               : CausalTag::Inconclusive;
  } else {
    v.tag = CausalTag::Inconclusive;
  }
  return v;
}

CausalVerdict infer_causal_structure(const CircuitFragment& f,
                                     bool max_entangled_init, bool search) {
  const int d = causal_dim(f);
  JointUncertainty j = joint_uncertainty(f);
  double h_cc = j.h_cc, h_dc = j.h_dc;
  if (search) {
    if (d != 2) {
      throw InvalidInput("indicator search is implemented for qubits only");
    }
    h_cc = std::min(h_cc, minimized_entropy(f, true, 2000));
    h_dc = std::min(h_dc, minimized_entropy(f, false, 2000));
  }
  CausalVerdict v = infer_causal_structure(h_cc, h_dc, d, max_entangled_init);
  v.searched = search;
  return v;
}

std::vector<ScanRow> scan_landscape(const std::string& family,
                                    const std::vector<GridAxis>& grid) {
  size_t arity;
  if (family == "u_alpha_beta") {
    arity = 2;
  } else if (family == "u_alpha_beta_gamma") {
    arity = 3;
  } else {
    throw InvalidInput("unknown circuit family '" + family + "'");
  }
  if (grid.size() != arity) {
    throw InvalidInput(family + " needs " + std::to_string(arity) +
                       " grid axes, got " + std::to_string(grid.size()));
  }
  long total = 1;
  for (const auto& ax : grid) {
    if (ax.count < 1) throw InvalidInput("grid axis needs count >= 1");
    total *= ax.count;
  }
  auto value_at = [](const GridAxis& ax, int i) {
    return ax.count == 1 ? ax.lo
                         : ax.lo + (ax.hi - ax.lo) * i / (ax.count - 1);
  };

  const InteractiveMeasurement cc = cc_indicator(2);
  const InteractiveMeasurement dc = dc_indicator(2);
  std::vector<ScanRow> rows(total);
  parallel_for(static_cast<int>(total), [&](int p) {
    int rest = p;
    std::vector<double> params(arity);
    for (int ax = static_cast<int>(arity) - 1; ax >= 0; --ax) {
      params[ax] = value_at(grid[ax], rest % grid[ax].count);
      rest /= grid[ax].count;
    }
    Matrix u = arity == 2 ? u_alpha_beta(params[0], params[1])
                          : u_alpha_beta_gamma(params[0], params[1], params[2]);
    CircuitFragment f = two_qubit_fragment(u);
    ScanRow row;
    row.params = params;
    row.h_cc =
        shannon_entropy(ProbVector(outcome_distribution(f, cc).probs));
    row.h_dc =
        shannon_entropy(ProbVector(outcome_distribution(f, dc).probs));
    row.sum = row.h_cc + row.h_dc;
    rows[p] = std::move(row);
  });
  return rows;
}

}  // namespace qcomb
