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

#include "qcomb/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qcomb {

namespace {

std::vector<double> checked_nonneg(std::vector<double> e) {
  for (auto& x : e) {
    if (x < -1e-12) {
      throw DomainError("negative entry " + std::to_string(x));
    }
    x = std::max(0.0, x);
  }
  return e;
}

// Sorted-descending copy, zero-padded to length n.
std::vector<double> sorted_padded(const std::vector<double>& e, size_t n) {
  std::vector<double> v(e);
  v.resize(std::max(n, v.size()), 0.0);
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

void check_equal_totals(double a, double b) {
  if (std::abs(a - b) > 1e-9) {
    throw TotalMismatch("totals differ: " + std::to_string(a) + " vs " +
                        std::to_string(b));
  }
}

}  // namespace

ProbVector::ProbVector(std::vector<double> e, double t)
    : entries(checked_nonneg(std::move(e))), total(t) {
  double sum = std::accumulate(entries.begin(), entries.end(), 0.0);
  if (std::abs(sum - total) > 1e-9) {
    throw TotalMismatch("entries sum to " + std::to_string(sum) +
                        " but total is " + std::to_string(total));
  }
}

ProbVector::ProbVector(std::vector<double> e)
    : entries(checked_nonneg(std::move(e))) {
  total = std::accumulate(entries.begin(), entries.end(), 0.0);
}

bool majorizes(const ProbVector& y, const ProbVector& x) {
  check_equal_totals(y.total, x.total);
  const size_t n = std::max(x.entries.size(), y.entries.size());
  const auto xs = sorted_padded(x.entries, n);
  const auto ys = sorted_padded(y.entries, n);
  const double tol = 1e-12 * static_cast<double>(std::max<size_t>(n, 1));
  double px = 0.0, py = 0.0;
  for (size_t k = 0; k < n; ++k) {
    px += xs[k];
    py += ys[k];
    if (px > py + tol) return false;
  }
  return true;
}

std::vector<double> aggregate_bound(const std::vector<ProbVector>& s) {
  if (s.empty()) throw EmptyInput("aggregate_bound needs a nonempty set");
  size_t n = 0;
  for (const auto& v : s) {
    check_equal_totals(s.front().total, v.total);
    n = std::max(n, v.entries.size());
  }
  std::vector<double> smax(n, 0.0);
  for (const auto& v : s) {
    const auto vs = sorted_padded(v.entries, n);
    double prefix = 0.0;
    for (size_t k = 0; k < n; ++k) {
      prefix += vs[k];
      smax[k] = std::max(smax[k], prefix);
    }
  }
  std::vector<double> b(n);
  for (size_t k = 0; k < n; ++k) {
    b[k] = smax[k] - (k == 0 ? 0.0 : smax[k - 1]);
  }
  return b;
}

ProbVector flatness(const std::vector<double>& v) {
  std::vector<double> x = checked_nonneg(v);
  const int d = static_cast<int>(x.size());
  for (int pass = 0; pass < d - 1; ++pass) {
    // First strict ascent; if none, x is already nonincreasing.
    int j = -1;
    for (int k = 1; k < d; ++k) {
      if (x[k] > x[k - 1]) {
        j = k;
        break;
      }
    }
    if (j < 0) break;
    // Extend the window leftwards while the entry before it dominates the
    // window mean (the virtual x[-1] is +inf, so i = 0 always qualifies).
    int i = j - 1;
    double a = 0.0;
    for (; i >= 0; --i) {
      double sum = 0.0;
      for (int k = i; k <= j; ++k) sum += x[k];
      a = sum / (j - i + 1);
      if (i == 0 || x[i - 1] >= a) break;
    }
    for (int k = i; k <= j; ++k) x[k] = a;
  }
  std::sort(x.begin(), x.end(), std::greater<double>());
  return ProbVector(std::move(x));
}

ProbVector lub(const std::vector<ProbVector>& s) {
  ProbVector out = flatness(aggregate_bound(s));
  out.total = s.front().total;
  return out;
}

double shannon_entropy(const ProbVector& v) {
  if (std::abs(v.total - 1.0) > 1e-9) {
    throw DomainError("entropy needs a normalized vector");
  }
  double h = 0.0;
  for (double p : v.entries) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double renyi_entropy(const ProbVector& v, double alpha) {
  if (std::abs(v.total - 1.0) > 1e-9) {
    throw DomainError("entropy needs a normalized vector");
  }
  if (alpha < 0.0) throw DomainError("Renyi order must be nonnegative");
  if (std::isinf(alpha)) {
    double pmax = 0.0;
    for (double p : v.entries) pmax = std::max(pmax, p);
    return -std::log2(pmax);
  }
  if (std::abs(alpha - 1.0) < 1e-12) return shannon_entropy(v);
  if (alpha == 0.0) {
    int support = 0;
    for (double p : v.entries) {
      if (p > 0.0) ++support;
    }
    return std::log2(static_cast<double>(support));
  }
  double s = 0.0;
  for (double p : v.entries) {
    if (p > 0.0) s += std::pow(p, alpha);
  }
  return std::log2(s) / (1.0 - alpha);
}

}  // namespace qcomb
