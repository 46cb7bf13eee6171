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

#ifndef DUPLEX_STATS_H_
#define DUPLEX_STATS_H_

#include <span>

namespace duplex {

double Mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double SampleStd(std::span<const double> xs);
double StandardError(std::span<const double> xs);
// Average of the two middle values for even sizes. Error(kEmptySet) if empty.
double Median(std::span<const double> xs);

// Product-moment correlation. Throws Error(kDegenerateInput) for unequal
// or fewer than two values, or when either side has zero variance.
double Pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace duplex

#endif  // DUPLEX_STATS_H_
