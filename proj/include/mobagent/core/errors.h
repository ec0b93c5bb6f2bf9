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

#ifndef MOBAGENT_CORE_ERRORS_H_
#define MOBAGENT_CORE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mobagent {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violated one of its type invariants at construction time.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed accessibility-tree markup or bounds.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class UnknownMark : public Error {
 public:
  explicit UnknownMark(int mark)
      : Error("unknown mark " + std::to_string(mark)), mark_(mark) {}
  int mark() const { return mark_; }

 private:
  int mark_;
};

class InvalidMark : public Error {
 public:
  explicit InvalidMark(int mark)
      : Error("mark " + std::to_string(mark) + " is overdrawn"), mark_(mark) {}
  int mark() const { return mark_; }

 private:
  int mark_;
};

// Non-visual compression failed part way; partial() holds what was produced.
class PerceptionDegraded : public Error {
 public:
  PerceptionDegraded(const std::string& what, std::string partial, int step)
      : Error(what), partial_(std::move(partial)), step_(step) {}
  const std::string& partial() const { return partial_; }
  int step() const { return step_; }

 private:
  std::string partial_;
  int step_;
};

class AppNotFound : public Error {
 public:
  explicit AppNotFound(const std::string& package)
      : Error("app not installed: " + package) {}
};

class FixtureError : public Error {
 public:
  using Error::Error;
};

class ProviderUnavailable : public Error {
 public:
  using Error::Error;
};

// A role response that could not be parsed or validated, after retries.
class MalformedResponse : public Error {
 public:
  using Error::Error;
};

// Thrown by the typed response parsers; complete() turns it into a retry.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class PlanValidationError : public Error {
 public:
  using Error::Error;
};

class InteractionTimeout : public Error {
 public:
  using Error::Error;
};

// More dialog turns than one action round allows.
class InteractionCapExceeded : public Error {
 public:
  using Error::Error;
};

class TaskSpecError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace mobagent

#endif  // MOBAGENT_CORE_ERRORS_H_
