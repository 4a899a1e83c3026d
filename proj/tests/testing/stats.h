// Copyright 2026 The Friendlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRIENDLINK_TESTS_TESTING_STATS_H_
#define FRIENDLINK_TESTS_TESTING_STATS_H_

#include <cstdint>
#include <vector>

namespace friendlink::testing {

// Pearson chi-square statistic of `counts` against a uniform expectation.
inline double ChiSquareUniform(const std::vector<uint64_t>& counts) {
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  const double expected = static_cast<double>(total) / counts.size();
  double stat = 0;
  for (uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// Upper 1% critical values of the chi-square distribution (scipy.stats.chi2.ppf(0.99, dof)).
inline constexpr double kChiSquare99Dof63 = 92.01002361413214;
inline constexpr double kChiSquare99Dof31 = 52.19139483319193;

}  // namespace friendlink::testing

#endif  // FRIENDLINK_TESTS_TESTING_STATS_H_
