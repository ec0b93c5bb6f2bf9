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


// Append-only session event stream. Sequence numbers start at 1 and never
// repeat; readers fetch ranges or block until something newer arrives.

#ifndef MOBAGENT_SESSION_EVENT_LOG_H_
#define MOBAGENT_SESSION_EVENT_LOG_H_

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"

namespace mobagent {

struct Event {
  long seq = 0;
  std::string type;
  nlohmann::json data;
};

nlohmann::json EventToJson(const Event& e);

class EventLog {
 public:
  EventLog() = default;
  // Also appends every event as one JSON line to `sink`.
  explicit EventLog(std::filesystem::path sink);

  long Append(const std::string& type, nlohmann::json data);
  // Events with seq >= from, in order.
  std::vector<Event> Since(long from) const;
  // Blocks until an event with seq >= from exists, the log is closed or the
  // timeout passes; returns what is available.
  std::vector<Event> WaitSince(long from, std::chrono::milliseconds timeout) const;
  long last_seq() const;
  void Close();
  bool closed() const;

 private:
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  std::vector<Event> events_;
  std::filesystem::path sink_;
  bool closed_ = false;
};

}  // namespace mobagent

#endif  // MOBAGENT_SESSION_EVENT_LOG_H_
