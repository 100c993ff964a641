// Copyright 2026 The InkAssess Authors
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

#ifndef INKASSESS_SERVICE_REPLAY_H_
#define INKASSESS_SERVICE_REPLAY_H_

#include <atomic>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/ink/types.h"

namespace inkassess {

struct ReplayStep {
  // Wall-clock offset from the start of playback.
  Micros offset_us = 0;
  RawSample sample;
};

// Keeps samples with from_t <= t <= to_t (either bound optional) and spaces
// them by original delta / speed, the first one at offset 0. InvalidSpeed
// unless speed is finite and positive.
absl::StatusOr<std::vector<ReplayStep>> PlanReplay(
    std::span<const RawSample> samples, double speed,
    std::optional<Micros> from_t = {}, std::optional<Micros> to_t = {});

// Calls `emit` for each step at its offset from now (steady clock). Returns
// early when `cancel` becomes true; the result is the number emitted.
size_t RunReplay(std::span<const ReplayStep> plan,
                 const std::function<void(const ReplayStep&)>& emit,
                 const std::atomic<bool>* cancel = nullptr);

}  // namespace inkassess

#endif  // INKASSESS_SERVICE_REPLAY_H_
