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

#include <random>

#include "benchmark/benchmark.h"
#include "qcomb/causal.hpp"
#include "qcomb/roulette.hpp"

namespace {

using namespace qcomb;

Matrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = cxd(gauss(rng), gauss(rng));
  }
  return 0.5 * (g + g.adjoint());
}

void BM_LinkProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  LabeledOperator m(SpaceLayout({{"A", 4}, {"B", 4}}), random_hermitian(16, rng));
  LabeledOperator n(SpaceLayout({{"B", 4}, {"C", 4}}), random_hermitian(16, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(link_product(m, n));
  }
}
BENCHMARK(BM_LinkProduct);

void BM_Flatness(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> v(static_cast<size_t>(state.range(0)));
  double sum = 0.0;
  for (double& x : v) {
    x = uni(rng);
    sum += x;
  }
  for (double& x : v) x /= sum;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flatness(v));
  }
}
BENCHMARK(BM_Flatness)->Arg(8)->Arg(64)->Arg(512);

void BM_SolveSdp(benchmark::State& state) {
  FragmentShape shape = causal_map_shape(2);
  auto constraints = comb_constraints(shape);
  auto cc = cc_indicator(2);
  auto dc = dc_indicator(2);
  Matrix objective = cc.elements[0].mat.transpose() +
                     dc.elements[2].mat.transpose();
  SdpProblem prob{objective, constraints};
  Matrix hint = depolarizing_comb(shape);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_sdp(prob, 1e-8, hint));
  }
}
BENCHMARK(BM_SolveSdp);

void BM_ScanPoint(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scan_landscape("u_alpha_beta", {{0.3, 0.3, 1}, {-0.8, -0.8, 1}}));
  }
}
BENCHMARK(BM_ScanPoint);

}  // namespace

BENCHMARK_MAIN();
