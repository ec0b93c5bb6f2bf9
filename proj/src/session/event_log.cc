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


#include "mobagent/session/event_log.h"

#include <fstream>

namespace mobagent {

nlohmann::json EventToJson(const Event& e) {
  return {{"seq", e.seq}, {"type", e.type}, {"data", e.data}};
}

EventLog::EventLog(std::filesystem::path sink) : sink_(std::move(sink)) {
  if (!sink_.empty()) {
    if (sink_.has_parent_path()) std::filesystem::create_directories(sink_.parent_path());
    std::ofstream(sink_, std::ios::trunc);
  }
}

long EventLog::Append(const std::string& type, nlohmann::json data) {
  std::lock_guard<std::mutex> lock(mu_);
  Event e{static_cast<long>(events_.size()) + 1, type, std::move(data)};
  if (!sink_.empty()) {
    std::ofstream out(sink_, std::ios::app);
    out << EventToJson(e).dump() << "\n";
  }
  events_.push_back(std::move(e));
  cv_.notify_all();
  return events_.back().seq;
}

std::vector<Event> EventLog::Since(long from) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (from < 1) from = 1;
  if (from > static_cast<long>(events_.size())) return {};
  return {events_.begin() + (from - 1), events_.end()};
}

std::vector<Event> EventLog::WaitSince(long from, std::chrono::milliseconds timeout) const {
  {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait_for(lock, timeout, [&] {
      return closed_ || static_cast<long>(events_.size()) >= std::max(from, 1L);
    });
  }
  return Since(from);
}

long EventLog::last_seq() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<long>(events_.size());
}

void EventLog::Close() {
  std::lock_guard<std::mutex> lock(mu_);
  closed_ = true;
  cv_.notify_all();
}

bool EventLog::closed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return closed_;
}

}  // namespace mobagent
