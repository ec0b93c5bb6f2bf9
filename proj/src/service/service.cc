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


#include "mobagent/service/service.h"

#include "httplib.h"
#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"

namespace mobagent {

struct SessionHub::Hosted {
  std::string id;
  std::string instruction;
  std::unique_ptr<EventLog> events;
  std::unique_ptr<PromptBoard> board;
  std::unique_ptr<ProviderStack> providers;
  std::unique_ptr<SimDevice> device;
  std::thread worker;
  std::atomic<bool> done{false};
  mutable std::mutex mu;
  std::string status = "running";
  std::string current_app;
  nlohmann::json result;
};

SessionHub::SessionHub(ServiceOptions options) : options_(std::move(options)) {}

SessionHub::~SessionHub() { Shutdown(); }

std::string SessionHub::Start(const std::string& instruction) {
  auto h = std::make_unique<Hosted>();
  {
    std::lock_guard<std::mutex> lock(mu_);
    h->id = "s" + std::to_string(next_id_++);
  }
  h->instruction = instruction;
  const auto dir = options_.runs_dir / "sessions" / h->id;
  h->events = std::make_unique<EventLog>(dir / "events.jsonl");
  h->board = std::make_unique<PromptBoard>(options_.reply_timeout);
  h->providers = std::make_unique<ProviderStack>(options_.provider);
  h->device = std::make_unique<SimDevice>(LoadScreenGraph(options_.device_fixture));
  Hosted* raw = h.get();
  SessionConfig config = options_.session;
  if (config.executor.som_dir.empty()) config.executor.som_dir = dir / "som";
  raw->worker = std::thread([raw, config] {
    Session session(config, &raw->providers->provider(), raw->device.get(), raw->board.get(),
                    raw->events.get());
    std::string status;
    nlohmann::json result;
    try {
      const SessionResult r = session.Run(raw->instruction);
      status = r.success ? "finished" : "aborted";
      result = SessionResultToJson(r);
    } catch (const Error& e) {
      status = "aborted";
      result = {{"error", e.what()}};
      raw->events->Append("session_error", {{"error", e.what()}});
    }
    {
      std::lock_guard<std::mutex> lock(raw->mu);
      raw->status = status;
      raw->result = result;
    }
    raw->done = true;
    raw->events->Close();
  });
  std::lock_guard<std::mutex> lock(mu_);
  const std::string id = raw->id;
  sessions_[id] = std::move(h);
  return id;
}

SessionHub::Hosted& SessionHub::Find(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("no session " + id);
  return *it->second;
}

nlohmann::json SessionHub::Describe(const std::string& id) const {
  Hosted& h = Find(id);
  std::lock_guard<std::mutex> lock(h.mu);
  nlohmann::json j = {{"id", h.id},
                      {"instruction", h.instruction},
                      {"status", h.status},
                      {"last_seq", h.events->last_seq()},
                      {"pending_prompt", h.board->Pending().has_value()}};
  // The latest dispatched sub-task, read back from the event stream.
  for (const auto& e : h.events->Since(1))
    if (e.type == "subtask_dispatched") j["current_subtask"] = e.data;
  if (!h.result.is_null()) j["result"] = h.result;
  return j;
}

nlohmann::json SessionHub::List() const {
  std::vector<std::string> ids;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [id, h] : sessions_) ids.push_back(id);
  }
  nlohmann::json out = nlohmann::json::array();
  for (const auto& id : ids) {
    nlohmann::json d = Describe(id);
    d.erase("result");
    out.push_back(d);
  }
  return out;
}

std::optional<InteractionPrompt> SessionHub::Prompt(const std::string& id) const {
  return Find(id).board->Pending();
}

PromptBoard::ReplyStatus SessionHub::Reply(const std::string& id, const std::string& prompt_id,
                                           const std::string& text) {
  return Find(id).board->Reply(prompt_id, text);
}

const EventLog& SessionHub::Events(const std::string& id) const { return *Find(id).events; }

void SessionHub::Shutdown() {
  std::vector<Hosted*> all;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& [id, h] : sessions_) all.push_back(h.get());
  }
  for (Hosted* h : all) {
    if (!h->done) h->board->Cancel();
    if (h->worker.joinable()) h->worker.join();
  }
}

namespace {

void SendJson(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

long FromParam(const httplib::Request& req) {
  if (!req.has_param("from")) return 1;
  try {
    return std::max(1L, std::stol(req.get_param_value("from")));
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace

Service::Service(ServiceOptions options)
    : hub_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  Routes();
}

Service::~Service() {
  Stop();
  hub_.Shutdown();
}

void Service::Routes() {
  auto& s = *server_;
  SessionHub* hub = &hub_;
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                             std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const NotFound& e) {
      SendJson(res, 404, {{"error", e.what()}});
    } catch (const std::exception& e) {
      SendJson(res, 500, {{"error", e.what()}});
    }
  });
  s.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    SendJson(res, 200, {{"status", "ok"}});
  });
  s.Get("/api/sessions", [hub](const httplib::Request&, httplib::Response& res) {
    SendJson(res, 200, {{"sessions", hub->List()}});
  });
  s.Post("/api/sessions", [hub](const httplib::Request& req, httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("instruction") ||
        !body["instruction"].is_string() || body["instruction"].get<std::string>().empty()) {
      SendJson(res, 400, {{"error", "body must be {\"instruction\": non-empty string}"}});
      return;
    }
    SendJson(res, 201, {{"id", hub->Start(body["instruction"].get<std::string>())}});
  });
  s.Get(R"(/api/sessions/([^/]+))", [hub](const httplib::Request& req, httplib::Response& res) {
    SendJson(res, 200, hub->Describe(req.matches[1]));
  });
  s.Get(R"(/api/sessions/([^/]+)/prompt)",
        [hub](const httplib::Request& req, httplib::Response& res) {
          const auto p = hub->Prompt(req.matches[1]);
          if (!p) {
            SendJson(res, 200, {{"pending", false}});
            return;
          }
          nlohmann::json j = PromptToJson(*p);
          j["pending"] = true;
          SendJson(res, 200, j);
        });
  s.Post(R"(/api/sessions/([^/]+)/reply)",
         [hub](const httplib::Request& req, httplib::Response& res) {
           const std::string id = req.matches[1];
           hub->Describe(id);  // 404 for an unknown session
           const auto body = nlohmann::json::parse(req.body, nullptr, false);
           if (body.is_discarded() || !body.is_object() || !body.contains("prompt_id") ||
               !body.contains("text") || !body["prompt_id"].is_string() ||
               !body["text"].is_string()) {
             SendJson(res, 400, {{"error", "body must be {\"prompt_id\": str, \"text\": str}"}});
             return;
           }
           switch (hub->Reply(id, body["prompt_id"], body["text"])) {
             case PromptBoard::ReplyStatus::kAccepted:
               SendJson(res, 200, {{"accepted", true}});
               return;
             case PromptBoard::ReplyStatus::kStale:
               SendJson(res, 409, {{"accepted", false}, {"error", "prompt already answered or replaced"}});
               return;
             case PromptBoard::ReplyStatus::kNoPrompt:
               SendJson(res, 409, {{"accepted", false}, {"error", "no pending prompt"}});
               return;
           }
         });
  s.Get(R"(/api/sessions/([^/]+)/events)",
        [hub](const httplib::Request& req, httplib::Response& res) {
          const EventLog& log = hub->Events(req.matches[1]);
          nlohmann::json events = nlohmann::json::array();
          for (const auto& e : log.Since(FromParam(req))) events.push_back(EventToJson(e));
          SendJson(res, 200, {{"events", events}, {"last_seq", log.last_seq()}, {"closed", log.closed()}});
        });
  s.Get(R"(/api/sessions/([^/]+)/stream)",
        [hub](const httplib::Request& req, httplib::Response& res) {
          const EventLog* log = &hub->Events(req.matches[1]);
          auto next = std::make_shared<long>(FromParam(req));
          res.set_header("Cache-Control", "no-cache");
          res.set_chunked_content_provider(
              "text/event-stream", [log, next](size_t, httplib::DataSink& sink) {
                const auto events = log->WaitSince(*next, std::chrono::milliseconds(500));
                for (const auto& e : events) {
                  const std::string frame = "id: " + std::to_string(e.seq) + "\nevent: " + e.type +
                                            "\ndata: " + e.data.dump() + "\n\n";
                  if (!sink.write(frame.data(), frame.size())) return false;
                  *next = e.seq + 1;
                }
                if (events.empty() && log->closed()) {
                  sink.done();
                  return true;
                }
                if (events.empty()) {
                  static const std::string ping = ": keep-alive\n\n";
                  if (!sink.write(ping.data(), ping.size())) return false;
                }
                return true;
              });
        });
}

int Service::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool Service::Listen() { return server_->listen_after_bind(); }

void Service::Stop() {
  if (server_) server_->stop();
}

}  // namespace mobagent
