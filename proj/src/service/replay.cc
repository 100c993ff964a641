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

#include "inkassess/service/replay.h"

#include <chrono>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "inkassess/status.h"

namespace inkassess {

absl::StatusOr<std::vector<ReplayStep>> PlanReplay(
    std::span<const RawSample> samples, double speed,
    std::optional<Micros> from_t, std::optional<Micros> to_t) {
  if (!(speed > 0) || !std::isfinite(speed)) {
    return MakeError(ErrorKind::kInvalidSpeed,
                     absl::StrCat("speed factor must be positive, got ", speed));
  }
  std::vector<ReplayStep> plan;
  std::optional<Micros> t0;
  for (const RawSample& s : samples) {
    if (from_t.has_value() && s.t < *from_t) continue;
    if (to_t.has_value() && s.t > *to_t) continue;
    if (!t0.has_value()) t0 = s.t;
    double offset = static_cast<double>(s.t - *t0) / speed;
    plan.push_back({static_cast<Micros>(std::llround(offset)), s});
  }
  return plan;
}

size_t RunReplay(std::span<const ReplayStep> plan,
                 const std::function<void(const ReplayStep&)>& emit,
                 const std::atomic<bool>* cancel) {
  using Clock = std::chrono::steady_clock;
  const Clock::time_point start = Clock::now();
  size_t emitted = 0;
  for (const ReplayStep& step : plan) {
    Clock::time_point due = start + std::chrono::microseconds(step.offset_us);
    // Sleep in short slices so cancellation is noticed promptly.
    while (Clock::now() < due) {
      if (cancel != nullptr && cancel->load()) return emitted;
      auto slice = std::min<Clock::duration>(due - Clock::now(),
                                             std::chrono::milliseconds(50));
      std::this_thread::sleep_for(slice);
    }
    if (cancel != nullptr && cancel->load()) return emitted;
    emit(step);
    ++emitted;
  }
  return emitted;
}

}  // namespace inkassess
