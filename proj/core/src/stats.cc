// Copyright 2026 The Duplex Authors
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

#include "duplex/stats.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "duplex/errors.h"

namespace duplex {

double Mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double SampleStd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double StandardError(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return SampleStd(xs) / std::sqrt(static_cast<double>(xs.size()));
}

double Median(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorCode::kEmptySet, "median of no values");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double Pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::kDegenerateInput,
                "pearson needs two equal-length lists of at least 2 values");
  }
  const double mx = Mean(xs);
  const double my = Mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0, qx = 0.0, qy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
    qx += xs[i] * xs[i];
    qy += ys[i] * ys[i];
  }
  // Rounding in the mean leaves tiny residuals for constant input.
  constexpr double kRelTol = 1e-24;
  if (!(sxx > kRelTol * qx) || !(syy > kRelTol * qy)) {
    throw Error(ErrorCode::kDegenerateInput, "pearson input has zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace duplex
