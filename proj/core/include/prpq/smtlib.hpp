/*
 * Copyright 2026 The prpq Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "prpq/oracle.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace prpq {

class SmtError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
/// The solver process could not be started (or the shell could not find it).
class SmtLaunchError : public SmtError {
 public:
  using SmtError::SmtError;
};
/// The solver answered something we could not read.
class SmtProtocolError : public SmtError {
 public:
  using SmtError::SmtError;
};
/// The solver gave up.
class SmtUnknownError : public SmtError {
 public:
  using SmtError::SmtError;
};

struct SmtResult {
  bool sat = false;
  Assignment model;     // parameters only; filled when sat
  Rational epsilon{1};  // the solver's value for eps
};

/// QF_LRA script for a store: one Real per parameter plus eps > 0.
std::string to_smtlib(const BoundStore& store);

/// Parses the solver's reply to (check-sat) (get-model).
SmtResult parse_smtlib_reply(const std::string& reply);

/// Runs `command` through /bin/sh, feeds it the script on stdin and reads
/// the reply. A new process per call.
SmtResult smtlib_check(const BoundStore& store, const std::string& command);

class SmtLibOracle final : public Oracle {
 public:
  explicit SmtLibOracle(std::string command) : command_(std::move(command)) {}
  Assignment model(const BoundStore& store) override;

 protected:
  bool do_check(const BoundStore& store) override;

 private:
  std::string command_;
};

}  // namespace prpq
