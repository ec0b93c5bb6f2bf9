// Copyright 2026 The mobagent Authors.
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

// Device adapter interface. SimDevice (sim_device.h) implements it over
// fixture screen graphs; a driver for real hardware would implement the
// same calls.

#ifndef MOBAGENT_DEVICE_DEVICE_H_
#define MOBAGENT_DEVICE_DEVICE_H_

#include <string>
#include <vector>

#include "mobagent/core/types.h"
#include "mobagent/perception/perceptor.h"

namespace mobagent {

// Outcome status values.
inline constexpr const char kStatusOk[] = "ok";
inline constexpr const char kStatusNoEffect[] = "no_effect";
inline constexpr const char kStatusError[] = "error";
inline constexpr const char kStatusSkipped[] = "skipped";

// One entry of the device's activity log, the raw material for evidence
// based judging: kind is screen, input, effect, app or action.
struct ActivityEvent {
  int seq = 0;
  std::string kind;
  std::string detail;
  bool operator==(const ActivityEvent&) const = default;
};

class DeviceBackend {
 public:
  virtual ~DeviceBackend() = default;

  virtual RawScreen Capture() = 0;
  // Applies the actions in order; one outcome per action. Mark references
  // must already be resolved.
  virtual std::vector<ActionOutcome> Execute(const std::vector<AtomicAction>& actions) = 0;
  virtual std::vector<std::string> ListApps() const = 0;
  virtual std::vector<AppMetadata> InstalledApps() const = 0;
  // Throws AppNotFound.
  virtual void StartApp(const std::string& package) = 0;
  virtual std::string CurrentApp() const = 0;
  virtual std::string CurrentScreen() const = 0;
  virtual std::vector<ActivityEvent> ActivityLog() const = 0;
};

}  // namespace mobagent

#endif  // MOBAGENT_DEVICE_DEVICE_H_
