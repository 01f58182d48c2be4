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

#include "prpq/smtlib.hpp"

#include <cctype>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <sstream>
#include <variant>

#include <sys/wait.h>
#include <unistd.h>

namespace prpq {

namespace {

std::string literal(const Rational& r) {
  const BigInt num = abs(numerator(r));
  const BigInt den = denominator(r);
  std::string body = den == 1 ? num.str() + ".0" : "(/ " + num.str() + ".0 " + den.str() + ".0)";
  return r < 0 ? "(- " + body + ")" : body;
}

std::string symbol(const std::string& param) { return "|?" + param + "|"; }

std::string term_text(const LinTerm& t) {
  std::string out = "(+ 0.0";
  for (const auto& [name, c] : t.coeffs()) out += " (* " + literal(c) + " " + symbol(name) + ")";
  return out + ")";
}

std::string bound_text(const DeltaRational& b) {
  return "(+ " + literal(b.std) + " (* " + literal(b.eps) + " eps))";
}

// Minimal s-expression reader for the reply.
struct SExpr {
  std::variant<std::string, std::vector<SExpr>> v;
  bool atom() const { return std::holds_alternative<std::string>(v); }
  const std::string& text() const { return std::get<std::string>(v); }
  const std::vector<SExpr>& list() const { return std::get<std::vector<SExpr>>(v); }
};

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= s_.size()) throw SmtProtocolError("unexpected end of solver output");
    if (s_[pos_] == '(') {
      ++pos_;
      std::vector<SExpr> items;
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw SmtProtocolError("unbalanced parenthesis in solver output");
        if (s_[pos_] == ')') {
          ++pos_;
          return SExpr{std::move(items)};
        }
        items.push_back(read());
      }
    }
    if (s_[pos_] == ')') throw SmtProtocolError("unexpected ')' in solver output");
    if (s_[pos_] == '|') {
      const auto end = s_.find('|', pos_ + 1);
      if (end == std::string::npos) throw SmtProtocolError("unterminated symbol");
      std::string sym = s_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return SExpr{std::move(sym)};
    }
    if (s_[pos_] == '"') {
      auto end = pos_ + 1;
      while (end < s_.size() && s_[end] != '"') ++end;
      std::string str = s_.substr(pos_, end + 1 - pos_);
      pos_ = end + 1;
      return SExpr{std::move(str)};
    }
    const auto start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')') {
      ++pos_;
    }
    return SExpr{s_.substr(start, pos_ - start)};
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Rational value_of(const SExpr& e) {
  if (e.atom()) {
    auto r = parse_decimal(e.text());
    if (!r) throw SmtProtocolError("bad numeral '" + e.text() + "'");
    return *r;
  }
  const auto& l = e.list();
  if (l.size() == 2 && l[0].atom() && l[0].text() == "-") return -value_of(l[1]);
  if (l.size() == 3 && l[0].atom() && l[0].text() == "/") {
    const Rational den = value_of(l[2]);
    if (den == 0) throw SmtProtocolError("division by zero in model");
    return value_of(l[1]) / den;
  }
  throw SmtProtocolError("unsupported model value");
}

std::string run(const std::string& command, const std::string& input) {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw SmtLaunchError(std::string("pipe: ") + std::strerror(errno));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw SmtLaunchError(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) throw SmtLaunchError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);

  // A solver that exits early must not kill us with SIGPIPE.
  struct sigaction ignore {};
  struct sigaction saved {};
  ignore.sa_handler = SIG_IGN;
  sigaction(SIGPIPE, &ignore, &saved);
  std::size_t written = 0;
  while (written < input.size()) {
    const ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
    if (n <= 0) break;
    written += static_cast<std::size_t>(n);
  }
  close(in_pipe[1]);
  sigaction(SIGPIPE, &saved, nullptr);

  std::string output;
  char buf[4096];
  while (true) {
    const ssize_t n = read(out_pipe[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  close(out_pipe[0]);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    throw SmtLaunchError("could not launch solver: " + command);
  }
  return output;
}

}  // namespace

std::string to_smtlib(const BoundStore& store) {
  std::ostringstream out;
  out << "(set-option :produce-models true)\n(set-logic QF_LRA)\n";
  for (const auto& p : store.parameters()) out << "(declare-const " << symbol(p) << " Real)\n";
  out << "(declare-const eps Real)\n(assert (> eps 0.0))\n";
  for (const auto& [t, b] : store.up()) {
    out << "(assert (<= " << term_text(t) << " " << bound_text(b) << "))\n";
  }
  for (const auto& [t, b] : store.low()) {
    out << "(assert (>= " << term_text(t) << " " << bound_text(b) << "))\n";
  }
  for (const auto& [t, values] : store.neq()) {
    for (const auto& c : values) {
      out << "(assert (not (= " << term_text(t) << " " << literal(c) << ")))\n";
    }
  }
  out << "(check-sat)\n(get-model)\n(exit)\n";
  return out.str();
}

SmtResult parse_smtlib_reply(const std::string& reply) {
  Reader reader(reply);
  if (reader.at_end()) throw SmtProtocolError("empty solver output");
  const SExpr verdict = reader.read();
  if (!verdict.atom()) throw SmtProtocolError("expected sat/unsat, got a list");
  SmtResult result;
  if (verdict.text() == "unsat") return result;
  if (verdict.text() == "unknown") throw SmtUnknownError("solver returned unknown");
  if (verdict.text() != "sat") throw SmtProtocolError("unexpected verdict '" + verdict.text() + "'");
  result.sat = true;
  if (reader.at_end()) throw SmtProtocolError("missing model");
  const SExpr model = reader.read();
  if (model.atom()) throw SmtProtocolError("malformed model");
  for (const SExpr& item : model.list()) {
    // (define-fun name () Real value); older solvers wrap in (model ...).
    if (item.atom()) continue;
    const auto& l = item.list();
    if (l.size() != 5 || !l[0].atom() || l[0].text() != "define-fun" || !l[1].atom()) {
      throw SmtProtocolError("malformed model entry");
    }
    const std::string& name = l[1].text();
    const Rational value = value_of(l[4]);
    if (name == "eps") {
      result.epsilon = value;
    } else if (!name.empty() && name[0] == '?') {
      result.model[name.substr(1)] = value;
    }
  }
  return result;
}

SmtResult smtlib_check(const BoundStore& store, const std::string& command) {
  return parse_smtlib_reply(run(command, to_smtlib(store)));
}

bool SmtLibOracle::do_check(const BoundStore& store) { return smtlib_check(store, command_).sat; }

Assignment SmtLibOracle::model(const BoundStore& store) {
  SmtResult r = smtlib_check(store, command_);
  if (!r.sat) throw std::logic_error("model requested for an unsatisfiable store");
  // Solvers omit parameters they did not need; any value works for those.
  for (const auto& p : store.parameters()) r.model.try_emplace(p, Rational(0));
  return r.model;
}

}  // namespace prpq
