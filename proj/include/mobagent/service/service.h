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


// Session service for the web console. Endpoints (README.md, "Service
// endpoints", has the bodies):
//
//   GET  /api/health
//   GET  /api/sessions
//   POST /api/sessions                      {"instruction"}
//   GET  /api/sessions/{id}
//   GET  /api/sessions/{id}/prompt
//   POST /api/sessions/{id}/reply           {"prompt_id", "text"}
//   GET  /api/sessions/{id}/events?from=N
//   GET  /api/sessions/{id}/stream?from=N   server-sent events

#ifndef MOBAGENT_SERVICE_SERVICE_H_
#define MOBAGENT_SERVICE_SERVICE_H_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "mobagent/device/sim_device.h"
#include "mobagent/eval/runner.h"
#include "mobagent/interaction/channels.h"
#include "mobagent/session/event_log.h"
#include "mobagent/session/session.h"

namespace httplib {
class Server;
}

namespace mobagent {

struct ServiceOptions {
  SessionConfig session;
  ProviderConfig provider;
  std::filesystem::path device_fixture;
  std::filesystem::path runs_dir = "runs";
  std::chrono::milliseconds reply_timeout{std::chrono::minutes(10)};
};

class SessionHub {
 public:
  explicit SessionHub(ServiceOptions options);
  ~SessionHub();

  // Starts a session on its own thread; returns its id.
  std::string Start(const std::string& instruction);
  nlohmann::json List() const;
  // Throws NotFound.
  nlohmann::json Describe(const std::string& id) const;
  std::optional<InteractionPrompt> Prompt(const std::string& id) const;
  PromptBoard::ReplyStatus Reply(const std::string& id, const std::string& prompt_id,
                                 const std::string& text);
  const EventLog& Events(const std::string& id) const;
  // Waits for every session thread; pending prompts are cancelled.
  void Shutdown();

 private:
  struct Hosted;
  Hosted& Find(const std::string& id) const;

  ServiceOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Hosted>> sessions_;
  int next_id_ = 1;
};

class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();

  // Binds to `port` (0: any free port) and returns the bound port, or -1.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); returns false on a listen failure.
  bool Listen();
  void Stop();
  SessionHub& hub() { return hub_; }

 private:
  void Routes();

  SessionHub hub_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace mobagent

#endif  // MOBAGENT_SERVICE_SERVICE_H_
