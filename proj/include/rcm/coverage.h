// Copyright 2026 The Authors.
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

//
// Target coverage function F and its incremental forms.
//
// F(X) is the total weight of the targets covered by at least one trajectory
// in X. It is monotone and submodular. CoverageCounter keeps a per-target
// multiplicity count for a working multiset X so that adding, removing, or
// querying one trajectory costs O(|C(p)|).
//

#ifndef RCM_COVERAGE_H_
#define RCM_COVERAGE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rcm/scenario.h"

namespace rcm {

// F over a set of trajectory ids. Duplicates are harmless. Weights are summed
// in ascending target order. Throws std::out_of_range on an unknown id.
double CoverageValue(const Scenario& s, std::span<const TrajectoryId> trajs);

// Raised when a removal would drive a target count below zero.
class CounterUnderflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class CoverageCounter {
 public:
  // The scenario must outlive the counter.
  explicit CoverageCounter(const Scenario& s);

  // Inserts p and returns the weight of targets whose count went 0 -> 1.
  double Add(TrajectoryId p);
  // Removes p and returns the weight of targets whose count went 1 -> 0.
  // Leaves the counter untouched and throws CounterUnderflow if some target
  // of p has count 0.
  double Remove(TrajectoryId p);

  // What Add(p) would return. Counts as one oracle query.
  double MarginalGain(TrajectoryId p) const;
  // What Remove(p) would return, assuming p is held. One oracle query.
  double MarginalLoss(TrajectoryId p) const;

  double value() const { return value_; }
  std::span<const int> counts() const { return counts_; }
  int64_t queries() const { return queries_; }

  // Value recomputed from the counts; used by audits.
  double RecomputeValue() const;

 private:
  const Scenario* scenario_;
  std::vector<int> counts_;
  double value_ = 0.0;
  mutable int64_t queries_ = 0;
};

// Packed per-trajectory coverage bitmasks for exhaustive enumeration. A
// union over any subset is a word-wise OR; its value matches CoverageValue
// bit for bit.
class CoverageBitsets {
 public:
  explicit CoverageBitsets(const Scenario& s);

  size_t words() const { return words_; }
  std::span<const uint64_t> mask(TrajectoryId p) const {
    return {bits_.data() + static_cast<size_t>(p) * words_, words_};
  }
  // F of the targets set in `mask` (length words()).
  double Value(std::span<const uint64_t> mask) const;

 private:
  const Scenario* scenario_;
  size_t words_;
  std::vector<uint64_t> bits_;
};

}  // namespace rcm

#endif  // RCM_COVERAGE_H_
