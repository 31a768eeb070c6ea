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

#include "rcm/coverage.h"

#include <bit>
#include <string>

namespace rcm {

double CoverageValue(const Scenario& s, std::span<const TrajectoryId> trajs) {
  std::vector<char> covered(s.num_targets(), 0);
  for (TrajectoryId p : trajs) {
    if (p < 0 || static_cast<size_t>(p) >= s.num_trajectories()) {
      throw std::out_of_range("unknown trajectory id " + std::to_string(p));
    }
    for (TargetId t : s.covers(p)) covered[t] = 1;
  }
  double sum = 0.0;
  for (size_t t = 0; t < covered.size(); ++t) {
    if (covered[t]) sum += s.weight(static_cast<TargetId>(t));
  }
  return sum;
}

CoverageCounter::CoverageCounter(const Scenario& s)
    : scenario_(&s), counts_(s.num_targets(), 0) {}

double CoverageCounter::Add(TrajectoryId p) {
  double gain = 0.0;
  for (TargetId t : scenario_->covers(p)) {
    if (counts_[t]++ == 0) gain += scenario_->weight(t);
  }
  value_ += gain;
  return gain;
}

double CoverageCounter::Remove(TrajectoryId p) {
  const auto covers = scenario_->covers(p);
  for (TargetId t : covers) {
    if (counts_[t] == 0) {
      throw CounterUnderflow("removing trajectory " + std::to_string(p) +
                             " underflows target " + std::to_string(t));
    }
  }
  double loss = 0.0;
  for (TargetId t : covers) {
    if (--counts_[t] == 0) loss += scenario_->weight(t);
  }
  value_ -= loss;
  return loss;
}

double CoverageCounter::MarginalGain(TrajectoryId p) const {
  ++queries_;
  double gain = 0.0;
  for (TargetId t : scenario_->covers(p)) {
    if (counts_[t] == 0) gain += scenario_->weight(t);
  }
  return gain;
}

double CoverageCounter::MarginalLoss(TrajectoryId p) const {
  ++queries_;
  double loss = 0.0;
  for (TargetId t : scenario_->covers(p)) {
    if (counts_[t] == 1) loss += scenario_->weight(t);
  }
  return loss;
}

double CoverageCounter::RecomputeValue() const {
  double sum = 0.0;
  for (size_t t = 0; t < counts_.size(); ++t) {
    if (counts_[t] > 0) sum += scenario_->weight(static_cast<TargetId>(t));
  }
  return sum;
}

CoverageBitsets::CoverageBitsets(const Scenario& s)
    : scenario_(&s),
      words_((s.num_targets() + 63) / 64),
      bits_(s.num_trajectories() * words_, 0) {
  for (const Trajectory& p : s.trajectories()) {
    uint64_t* row = bits_.data() + static_cast<size_t>(p.id) * words_;
    for (TargetId t : p.covers) row[t / 64] |= uint64_t{1} << (t % 64);
  }
}

double CoverageBitsets::Value(std::span<const uint64_t> mask) const {
  if (scenario_->unit_weights()) {
    int count = 0;
    for (uint64_t w : mask) count += std::popcount(w);
    return static_cast<double>(count);
  }
  double sum = 0.0;
  for (size_t i = 0; i < mask.size(); ++i) {
    uint64_t w = mask[i];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      sum += scenario_->weight(static_cast<TargetId>(i * 64 + bit));
      w &= w - 1;
    }
  }
  return sum;
}

}  // namespace rcm
