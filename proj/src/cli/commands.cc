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


#include "mobagent/cli/commands.h"

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/device/sim_device.h"
#include "mobagent/eval/runner.h"
#include "mobagent/interaction/channels.h"
#include "mobagent/learning/app_map.h"
#include "mobagent/service/service.h"

namespace mobagent {

namespace {

std::atomic<bool> g_stop{false};

extern "C" void OnStopSignal(int) { g_stop = true; }

// Flag values given on the command line. Only flags that were actually
// passed form the top layer.
struct Flags {
  std::map<std::string, std::string> values;
  std::vector<std::string> scripts;
  std::string config;
};

void AddSettingFlags(CLI::App& app, Flags& f) {
  auto opt = [&](const std::string& name, const std::string& help) {
    std::string flag = "--" + ReplaceAll(name, "_", "-");
    app.add_option_function<std::string>(
        flag, [&f, name](const std::string& v) { f.values[name] = v; }, help);
  };
  opt("provider", "scripted | replay | record");
  opt("perception", "visual | nonvisual");
  opt("reflection", "hybrid | standalone");
  opt("interaction", "console | web | driver");
  opt("device_fixture", "fixture directory for the simulated device");
  opt("runs_dir", "where run directories go");
  opt("port", "service port (0 picks a free one)");
  opt("cassette", "cassette file for replay");
  opt("knowledge_dir", "tricks and maps directory");
  opt("judge", "evidence | model");
  opt("mode", "clear | vague");
  opt("round_cap", "action rounds per sub-task");
  app.add_option("--script", f.scripts, "scripted provider file (repeatable)");
  app.add_option("--config", f.config, "JSON config file");
}

CliSettings Resolve(const Flags& f, const std::function<const char*(const char*)>& getenv_fn,
                    bool* interaction_explicit) {
  SettingLayer flags(f.values.begin(), f.values.end());
  if (!f.scripts.empty()) flags["script"] = Join(f.scripts, ";");
  std::vector<SettingLayer> layers = {flags, LayerFromEnv(getenv_fn)};
  if (!f.config.empty()) layers.push_back(LayerFromConfigFile(f.config));
  if (interaction_explicit) {
    *interaction_explicit = false;
    for (const auto& l : layers)
      if (l.count("interaction")) *interaction_explicit = true;
  }
  return ResolveSettings(layers);
}

ProviderConfig ProviderConfigFrom(const CliSettings& s) {
  ProviderConfig pc;
  pc.kind = ParseProviderKind(s.provider);
  for (const auto& p : s.scripts) pc.scripts.emplace_back(p);
  pc.cassette = s.cassette;
  return pc;
}

void PrintReport(std::ostream& out, const TaskRunResult& r) {
  out << "task " << r.spec.id << " (" << DifficultyName(r.spec.difficulty) << ")\n";
  out << "  run dir: " << r.run_dir.string() << "\n";
  out << "  finished: " << (r.session.success ? "yes" : "no") << "\n";
  if (!r.error.empty()) out << "  error: " << r.error << "\n";
  out << "  metrics: " << MetricsToJson(r.report).dump() << "\n";
  out << "  provider calls: " << r.provider_calls << "\n";
}

std::filesystem::path ResolveTaskDir(const std::string& spec, const std::string& suite) {
  std::filesystem::path p(spec);
  if (std::filesystem::exists(p / "task.spec")) return p;
  if (std::filesystem::exists(std::filesystem::path(suite) / spec / "task.spec"))
    return std::filesystem::path(suite) / spec;
  throw NotFound("no task.spec for '" + spec + "'");
}

// Web interaction: hosts the session behind the service until it ends.
int RunHosted(const CliSettings& s, ServiceOptions options, const std::string& instruction,
              std::ostream& out) {
  Service service(std::move(options));
  const int port = service.Bind("127.0.0.1", s.port);
  if (port < 0) throw ConfigError("cannot bind port " + std::to_string(s.port));
  std::thread server([&service] { service.Listen(); });
  const std::string id = service.hub().Start(instruction);
  out << "session " << id << " at http://127.0.0.1:" << port << "/api/sessions/" << id
      << std::endl;
  std::string status = "running";
  while (status == "running") {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    status = service.hub().Describe(id).at("status").get<std::string>();
  }
  service.Stop();
  server.join();
  out << "status: " << status << "\n";
  return status == "finished" ? kExitOk : kExitAbort;
}

int CmdRunSpec(const CliSettings& s, bool interaction_explicit, const std::string& spec,
               const std::string& suite, std::istream& in, std::ostream& out) {
  const auto task = ResolveTaskDir(spec, suite);
  TaskRunOptions o;
  o.session = SessionConfigFrom(s);
  o.mode = ParseDriveMode(s.mode);
  o.judge = s.judge;
  o.provider = ParseProviderKind(s.provider);
  for (const auto& p : s.scripts) o.extra_scripts.emplace_back(p);
  o.cassette = s.cassette;
  o.runs_dir = s.runs_dir;
  o.device_fixture = s.device_fixture;
  const std::string interaction = interaction_explicit ? s.interaction : "driver";
  if (interaction == "web") {
    const TaskSpec ts = LoadTaskSpec(task / "task.spec");
    ScriptedDriver driver(ts);
    ServiceOptions so;
    so.session = o.session;
    so.provider = ProviderConfigFrom(s);
    so.provider.scripts.push_back(task / "script.json");
    so.device_fixture = s.device_fixture.empty() ? task / "device" : std::filesystem::path(s.device_fixture);
    so.runs_dir = s.runs_dir;
    return RunHosted(s, so, driver.Instruction(o.mode), out);
  }
  ConsoleChannel console(in, out);
  if (interaction == "console") o.channel = &console;
  if (o.provider == ProviderKind::kReplay && o.cassette.empty())
    throw ConfigError("--provider replay needs --cassette");
  if (o.provider == ProviderKind::kReplay && !std::filesystem::exists(o.cassette))
    throw ConfigError("cassette not found: " + o.cassette.string());
  const TaskRunResult r = RunTask(task, o);
  PrintReport(out, r);
  return r.hard_error ? kExitAbort : kExitOk;
}

int CmdRunInstruction(const CliSettings& s, const std::string& instruction, std::istream& in,
                      std::ostream& out) {
  if (s.device_fixture.empty()) throw ConfigError("--instruction needs --device-fixture");
  if (!std::filesystem::is_directory(s.device_fixture))
    throw NotFound("device fixture not found: " + s.device_fixture);
  const ProviderConfig pc = ProviderConfigFrom(s);
  if (pc.kind == ProviderKind::kReplay && !std::filesystem::exists(pc.cassette))
    throw ConfigError("cassette not found: " + pc.cassette.string());
  if (pc.kind != ProviderKind::kReplay && pc.scripts.empty())
    throw ConfigError("scripted provider needs at least one --script");
  SessionConfig sc = SessionConfigFrom(s);
  const std::filesystem::path run_dir = std::filesystem::path(s.runs_dir) / "adhoc";
  if (sc.knowledge_dir.empty()) sc.knowledge_dir = run_dir / "knowledge";
  if (s.interaction == "web") {
    ServiceOptions so;
    so.session = sc;
    so.provider = pc;
    so.device_fixture = s.device_fixture;
    so.runs_dir = s.runs_dir;
    return RunHosted(s, so, instruction, out);
  }
  if (s.interaction == "driver") throw ConfigError("--interaction driver needs --spec");
  std::filesystem::create_directories(run_dir);
  sc.executor.som_dir = run_dir / "som";
  ProviderStack providers(pc);
  SimDevice device(LoadScreenGraph(s.device_fixture));
  ConsoleChannel console(in, out);
  EventLog events(run_dir / "events.jsonl");
  Session session(sc, &providers.provider(), &device, &console, &events);
  SessionResult r;
  try {
    r = session.Run(instruction);
  } catch (const Error& e) {
    r.instruction = instruction;
    r.aborted = true;
    r.abort_reason = e.what();
  }
  events.Close();
  Json records = Json::array();
  for (const auto& t : r.subtasks) records.push_back(t.record);
  WriteJsonFile(run_dir / "record.json", Json{{"subtasks", records}});
  WriteJsonFile(run_dir / "session.json", SessionResultToJson(r));
  if (pc.kind == ProviderKind::kRecord) providers.SaveCassette(run_dir / "cassette.jsonl");
  out << "run dir: " << run_dir.string() << "\n";
  out << "finished: " << (r.success ? "yes" : "no") << "\n";
  if (r.aborted) out << "aborted: " << r.abort_reason << "\n";
  return r.success ? kExitOk : kExitAbort;
}

int CmdEval(const CliSettings& s, const std::string& suite, std::ostream& out) {
  if (FindTasks(suite).empty()) throw ConfigError("no tasks in suite '" + suite + "'");
  TaskRunOptions o;
  o.session = SessionConfigFrom(s);
  o.mode = ParseDriveMode(s.mode);
  o.judge = s.judge;
  o.provider = ParseProviderKind(s.provider);
  for (const auto& p : s.scripts) o.extra_scripts.emplace_back(p);
  o.runs_dir = s.runs_dir;
  std::filesystem::create_directories(o.runs_dir);
  const SuiteResult r = RunSuite(suite, o);
  bool hard = false;
  for (const auto& t : r.tasks) {
    out << t.spec.id << ": " << (t.session.success ? "finished" : "not finished");
    if (t.hard_error) out << " (" << t.error << ")";
    out << "\n";
    hard = hard || t.hard_error;
  }
  out << RenderAggregateTable(r.aggregate);
  return hard ? kExitAbort : kExitOk;
}

int CmdServe(const CliSettings& s, std::ostream& out) {
  if (s.device_fixture.empty()) throw ConfigError("serve needs --device-fixture");
  ServiceOptions so;
  so.session = SessionConfigFrom(s);
  so.provider = ProviderConfigFrom(s);
  ProviderStack probe(so.provider);  // fail fast on a bad script or cassette
  so.device_fixture = s.device_fixture;
  so.runs_dir = s.runs_dir;
  Service service(so);
  const int port = service.Bind("127.0.0.1", s.port);
  if (port < 0) throw ConfigError("cannot bind port " + std::to_string(s.port));
  g_stop = false;
  auto old_int = std::signal(SIGINT, OnStopSignal);
  auto old_term = std::signal(SIGTERM, OnStopSignal);
  std::thread watcher([&service] {
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(50));
    service.Stop();
  });
  out << "listening on http://127.0.0.1:" << port << std::endl;
  const bool ok = service.Listen();
  g_stop = true;
  watcher.join();
  service.hub().Shutdown();
  std::signal(SIGINT, old_int);
  std::signal(SIGTERM, old_term);
  out << "stopped" << std::endl;
  return ok ? kExitOk : kExitConfig;
}

}  // namespace

SessionConfig SessionConfigFrom(const CliSettings& s) {
  SessionConfig c;
  c.perception = ParsePerceptionMode(s.perception);
  c.executor.policy = ParseReflectionPolicy(s.reflection);
  c.executor.round_cap = s.round_cap;
  c.knowledge_dir = s.knowledge_dir;
  return c;
}

std::string InspectMap(const std::filesystem::path& knowledge_dir, const std::string& app) {
  if (!std::filesystem::exists(AppMapPath(knowledge_dir, app)))
    throw NotFound("no map for app '" + app + "' in " + knowledge_dir.string());
  const AppMap map = LoadAppMap(knowledge_dir, app);
  std::ostringstream os;
  int components = 0;
  for (const auto& p : map.pages) components += static_cast<int>(p.components.size());
  os << "app " << map.app << ": " << map.pages.size() << " pages, " << components
     << " components, " << map.TriggerCount() << " triggers\n";
  for (const auto& p : map.pages) {
    os << "page " << p.page_id << "\n";
    for (const auto& c : p.components) {
      os << "  [";
      std::vector<std::string> idx;
      for (int i : c.node_path) idx.push_back(std::to_string(i));
      os << Join(idx, ".") << "] " << c.description << "\n";
      for (const auto& t : c.triggers) {
        os << "    " << t.action_kind << ": " << t.effect_summary;
        if (t.destination_page_id) os << " -> " << *t.destination_page_id;
        os << "\n";
      }
    }
  }
  return os.str();
}

std::string InspectTricks(const std::filesystem::path& knowledge_dir, const std::string& app) {
  if (!std::filesystem::is_directory(knowledge_dir))
    throw NotFound("knowledge directory not found: " + knowledge_dir.string());
  TrickStore store;
  store.Load(knowledge_dir);
  std::vector<std::string> scopes = store.Scopes();
  if (!app.empty()) {
    if (!std::filesystem::exists(TrickFilePath(knowledge_dir, app)) && store.Scope(app).empty())
      throw NotFound("no tricks file for app '" + app + "'");
    scopes = {app};
  }
  std::ostringstream os;
  int shown = 0;
  for (const auto& scope : scopes) {
    const auto tricks = store.Scope(scope);
    if (tricks.empty()) continue;
    os << scope << " (" << tricks.size() << ")\n";
    for (const auto& t : tricks) {
      os << "  [" << TrickCategoryName(t.category) << "] " << t.text << "\n";
      ++shown;
    }
  }
  if (shown == 0) return "no tricks\n";
  return os.str();
}

std::string InspectTrace(const std::filesystem::path& path) {
  std::filesystem::path file = path;
  if (std::filesystem::is_directory(path)) file = path / "record.json";
  if (!std::filesystem::exists(file)) throw NotFound("no trace at " + path.string());
  const Json j = ReadJsonFile(file);
  std::vector<FullExecutionRecord> records;
  if (j.is_object() && j.contains("subtasks")) {
    for (const auto& r : j.at("subtasks")) records.push_back(r.get<FullExecutionRecord>());
  } else if (j.is_object()) {
    records.push_back(j.get<FullExecutionRecord>());
  } else {
    throw ValidationError(file.string() + ": not an execution record");
  }
  std::ostringstream os;
  for (const auto& rec : records) {
    const TraceSummary t = Project(rec);
    os << "sub-task " << rec.subtask_index << ": " << t.instruction << "\n";
    for (const auto& step : t.steps) {
      os << "  round " << step.round << ":";
      if (step.decision) os << " " << step.decision->Describe();
      else os << " (no action)";
      if (step.reflection) {
        os << " => " << ActionResultCode(step.reflection->action_result());
        if (step.reflection->error_cause()) os << " (" << *step.reflection->error_cause() << ")";
      }
      os << "\n";
    }
    os << "  final sub-goal: " << t.final_subgoal << "\n";
    const std::string ctx = t.final_context.MergedView();
    if (!ctx.empty()) os << "  context: " << ctx << "\n";
    os << "  finished: " << (rec.finished ? "yes" : "no");
    if (!rec.abort_reason.empty()) os << " (" << rec.abort_reason << ")";
    os << "\n";
  }
  return os.str();
}

int RunCli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
           std::ostream& err, std::function<const char*(const char*)> getenv_fn) {
  if (!getenv_fn) getenv_fn = [](const char* n) -> const char* { return std::getenv(n); };
  CLI::App app{"mobile GUI agent"};
  app.fallthrough();
  app.require_subcommand(1);
  Flags flags;
  AddSettingFlags(app, flags);

  std::string spec, instruction, suite = "tests/fixtures/suite";
  auto* run = app.add_subcommand("run", "run one task");
  run->add_option("--spec", spec, "task directory or task id");
  run->add_option("--instruction", instruction, "free-form instruction");
  run->add_option("--suite", suite, "where task ids are looked up");

  std::string eval_suite;
  auto* eval = app.add_subcommand("eval", "evaluate a suite");
  eval->add_option("suite", eval_suite, "suite directory")->required();

  std::string what, target, app_name;
  auto* inspect = app.add_subcommand("inspect", "render a map, trick store or trace");
  inspect->add_option("what", what, "map | tricks | trace")
      ->required()
      ->check(CLI::IsMember({"map", "tricks", "trace"}));
  inspect->add_option("target", target, "knowledge dir (map, tricks) or run dir / record file");
  inspect->add_option("--app", app_name, "app package");

  auto* serve = app.add_subcommand("serve", "serve the web console endpoints");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    bool interaction_explicit = false;
    const CliSettings s = Resolve(flags, getenv_fn, &interaction_explicit);
    if (*run) {
      if (spec.empty() == instruction.empty())
        throw ConfigError("run needs exactly one of --spec or --instruction");
      if (!spec.empty()) return CmdRunSpec(s, interaction_explicit, spec, suite, in, out);
      return CmdRunInstruction(s, instruction, in, out);
    }
    if (*eval) return CmdEval(s, eval_suite, out);
    if (*inspect) {
      std::filesystem::path dir = target.empty() ? std::filesystem::path(s.knowledge_dir)
                                                 : std::filesystem::path(target);
      if (what == "map") {
        if (app_name.empty()) throw ConfigError("inspect map needs --app");
        out << InspectMap(dir, app_name);
      } else if (what == "tricks") {
        out << InspectTricks(dir, app_name);
      } else {
        out << InspectTrace(dir);
      }
      return kExitOk;
    }
    if (*serve) return CmdServe(s, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NotFound& e) {
    err << "not found: " << e.what() << "\n";
    return kExitNotFound;
  } catch (const ProviderUnavailable& e) {
    err << "provider: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitAbort;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAbort;
  }
  return kExitConfig;
}

}  // namespace mobagent
