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

#include "prpq/query.hpp"

#include <cctype>

namespace prpq {

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::kLt: return "<";
    case CmpOp::kGt: return ">";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGe: return ">=";
    case CmpOp::kEq: return "=";
    case CmpOp::kNe: return "!=";
  }
  return "?";
}

Pregex Pregex::atom(std::string label, Constraint c) {
  Pregex p;
  p.kind = Kind::kAtom;
  p.label = std::move(label);
  p.constraint = std::move(c);
  return p;
}

namespace {

Pregex unary(Pregex::Kind kind, Pregex child) {
  Pregex p;
  p.kind = kind;
  p.children.push_back(std::move(child));
  return p;
}

Pregex binary(Pregex::Kind kind, Pregex left, Pregex right) {
  Pregex p;
  p.kind = kind;
  p.children.push_back(std::move(left));
  p.children.push_back(std::move(right));
  return p;
}

}  // namespace

Pregex Pregex::inverse(Pregex child) { return unary(Kind::kInverse, std::move(child)); }
Pregex Pregex::concat(Pregex l, Pregex r) { return binary(Kind::kConcat, std::move(l), std::move(r)); }
Pregex Pregex::alt(Pregex l, Pregex r) { return binary(Kind::kAlt, std::move(l), std::move(r)); }
Pregex Pregex::star(Pregex child) { return unary(Kind::kStar, std::move(child)); }
Pregex Pregex::plus(Pregex child) { return unary(Kind::kPlus, std::move(child)); }
Pregex Pregex::opt(Pregex child) { return unary(Kind::kOpt, std::move(child)); }
Pregex Pregex::epsilon() { return Pregex{}; }

namespace {

enum class Tok {
  kIdent, kParam, kNumber, kString, kLBracket, kRBracket, kLParen, kRParen, kComma,
  kSlash, kBar, kStar, kPlus, kQuestion, kCaret, kMinus, kAnd, kCmp, kEnd
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
  CmpOp op = CmpOp::kLe;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::size_t offset() const { return i_; }

  void skip_blanks() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  // Whitespace-delimited raw word, used for the start node id.
  Token raw_word() {
    skip_blanks();
    const std::size_t start = i_;
    while (i_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    if (start == i_) throw ParseError(start, "expected node id");
    return {Tok::kIdent, std::string(src_.substr(start, i_ - start)), start};
  }

  Token next() {
    skip_blanks();
    const std::size_t start = i_;
    if (i_ >= src_.size()) return {Tok::kEnd, "", start};
    const char c = src_[i_];
    auto one = [&](Tok kind) {
      ++i_;
      return Token{kind, std::string(1, c), start};
    };
    switch (c) {
      case '[': return one(Tok::kLBracket);
      case ']': return one(Tok::kRBracket);
      case '(': return one(Tok::kLParen);
      case ')': return one(Tok::kRParen);
      case ',': return one(Tok::kComma);
      case '/': return one(Tok::kSlash);
      case '*': return one(Tok::kStar);
      case '+': return one(Tok::kPlus);
      case '^': return one(Tok::kCaret);
      case '-': return one(Tok::kMinus);
      default: break;
    }
    if (c == '|') {
      ++i_;
      return {Tok::kBar, "|", start};
    }
    if (c == '&') {
      if (i_ + 1 < src_.size() && src_[i_ + 1] == '&') {
        i_ += 2;
        return {Tok::kAnd, "&&", start};
      }
      throw ParseError(start, "expected '&&'");
    }
    if (c == '?') {
      if (i_ + 1 < src_.size() && ident_start(src_[i_ + 1])) {
        ++i_;
        const std::size_t name = i_;
        while (i_ < src_.size() && ident_char(src_[i_])) ++i_;
        return {Tok::kParam, std::string(src_.substr(name, i_ - name)), start};
      }
      ++i_;
      return {Tok::kQuestion, "?", start};
    }
    if (c == '<' || c == '>' || c == '=' || c == '!') {
      std::size_t j = i_;
      while (j < src_.size() && (src_[j] == '<' || src_[j] == '>' || src_[j] == '=' ||
                                 src_[j] == '!')) {
        ++j;
      }
      const std::string_view lexeme = src_.substr(i_, j - i_);
      Token t{Tok::kCmp, std::string(lexeme), start};
      if (lexeme == "<") t.op = CmpOp::kLt;
      else if (lexeme == ">") t.op = CmpOp::kGt;
      else if (lexeme == "<=") t.op = CmpOp::kLe;
      else if (lexeme == ">=") t.op = CmpOp::kGe;
      else if (lexeme == "=" || lexeme == "==") t.op = CmpOp::kEq;
      else if (lexeme == "!=") t.op = CmpOp::kNe;
      else throw ParseError(start, "unknown comparator '" + std::string(lexeme) + "'");
      i_ = j;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
      if (i_ < src_.size() && src_[i_] == '.') {
        ++i_;
        const std::size_t frac = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
        if (frac == i_) throw ParseError(frac, "expected digits after '.'");
      }
      return {Tok::kNumber, std::string(src_.substr(start, i_ - start)), start};
    }
    if (c == '"') {
      ++i_;
      std::string out;
      while (true) {
        if (i_ >= src_.size()) throw ParseError(start, "unterminated string literal");
        const char d = src_[i_++];
        if (d == '"') break;
        if (d == '\\') {
          if (i_ >= src_.size() || (src_[i_] != '"' && src_[i_] != '\\')) {
            throw ParseError(i_ - 1, "bad escape in string literal");
          }
          out.push_back(src_[i_++]);
        } else {
          out.push_back(d);
        }
      }
      return {Tok::kString, std::move(out), start};
    }
    if (ident_start(c)) {
      while (i_ < src_.size() && ident_char(src_[i_])) ++i_;
      return {Tok::kIdent, std::string(src_.substr(start, i_ - start)), start};
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }

 private:
  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  PrpqQuery query() {
    expect_keyword("FROM");
    Token id = lex_.raw_word();
    advance();
    expect_keyword("MATCH");
    PrpqQuery q{std::move(id.text), expr()};
    expect(Tok::kEnd, "end of input");
    return q;
  }

  Pregex pattern_only() {
    Pregex p = expr();
    expect(Tok::kEnd, "end of input");
    return p;
  }

  Constraint constraint_only() {
    Constraint c = constraint();
    expect(Tok::kEnd, "end of input");
    return c;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& expected) {
    const std::string got = cur_.kind == Tok::kEnd ? "end of input" : "'" + cur_.text + "'";
    throw ParseError(cur_.pos, "expected " + expected + ", got " + got);
  }

  void expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) fail(what);
    advance();
  }

  void expect_keyword(const char* kw) {
    if (cur_.kind != Tok::kIdent || cur_.text != kw) fail(std::string("'") + kw + "'");
    // The node id after FROM is lexed raw, so do not pre-read it.
    if (std::string_view(kw) == "FROM") return;
    advance();
  }

  Pregex expr() {
    Pregex left = concat();
    while (cur_.kind == Tok::kBar) {
      advance();
      left = Pregex::alt(std::move(left), concat());
    }
    return left;
  }

  Pregex concat() {
    Pregex left = unary_expr();
    while (cur_.kind == Tok::kSlash) {
      advance();
      left = Pregex::concat(std::move(left), unary_expr());
    }
    return left;
  }

  Pregex unary_expr() {
    if (cur_.kind == Tok::kCaret) {
      advance();
      return Pregex::inverse(unary_expr());
    }
    return postfix();
  }

  Pregex postfix() {
    Pregex p = base();
    while (true) {
      if (cur_.kind == Tok::kStar) p = Pregex::star(std::move(p));
      else if (cur_.kind == Tok::kPlus) p = Pregex::plus(std::move(p));
      else if (cur_.kind == Tok::kQuestion) p = Pregex::opt(std::move(p));
      else break;
      advance();
    }
    return p;
  }

  Pregex base() {
    if (cur_.kind == Tok::kLParen) {
      advance();
      if (cur_.kind == Tok::kRParen) {
        advance();
        return Pregex::epsilon();
      }
      Pregex inner = expr();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    if (cur_.kind == Tok::kLBracket) {
      advance();
      if (cur_.kind != Tok::kIdent) fail("label");
      std::string label = cur_.text;
      advance();
      Constraint c;
      if (cur_.kind == Tok::kComma) {
        advance();
        c = constraint();
      }
      expect(Tok::kRBracket, "']'");
      return Pregex::atom(std::move(label), std::move(c));
    }
    fail("'[' or '('");
  }

  Constraint constraint() {
    Constraint c;
    c.atoms.push_back(atom());
    while (cur_.kind == Tok::kAnd) {
      advance();
      c.atoms.push_back(atom());
    }
    return c;
  }

  ConstraintAtom atom() {
    // ident ("="|"==") stringlit needs one token of lookahead past the op.
    LinExpr lhs = linexp();
    if (cur_.kind != Tok::kCmp) fail("comparator");
    const Token op = cur_;
    advance();
    if (cur_.kind == Tok::kString) {
      if (op.op != CmpOp::kEq) throw ParseError(op.pos, "string comparison must use '='");
      if (lhs.summands.size() != 1 || !lhs.summands[0].var || lhs.summands[0].var->is_param ||
          lhs.summands[0].coef != 1) {
        throw ParseError(op.pos, "string equality needs a bare attribute on the left");
      }
      StringEq eq{lhs.summands[0].var->name, cur_.text};
      advance();
      return eq;
    }
    return LinCmp{std::move(lhs), op.op, linexp()};
  }

  LinExpr linexp() {
    LinExpr e;
    e.summands.push_back(term());
    while (cur_.kind == Tok::kPlus || cur_.kind == Tok::kMinus) {
      const bool minus = cur_.kind == Tok::kMinus;
      advance();
      LinSummand s = term();
      if (minus) s.coef = -s.coef;
      e.summands.push_back(std::move(s));
    }
    return e;
  }

  LinSummand term() {
    if (cur_.kind == Tok::kIdent || cur_.kind == Tok::kParam) return {Rational(1), var()};
    bool negative = false;
    const std::size_t pos = cur_.pos;
    if (cur_.kind == Tok::kMinus) {
      negative = true;
      advance();
    }
    if (cur_.kind != Tok::kNumber) fail("number or variable");
    auto value = parse_decimal(cur_.text);
    if (!value) throw ParseError(pos, "malformed number");
    Rational coef = negative ? Rational(-*value) : *value;
    advance();
    if (cur_.kind == Tok::kStar) {
      advance();
      if (cur_.kind != Tok::kIdent && cur_.kind != Tok::kParam) fail("variable after '*'");
      return {std::move(coef), var()};
    }
    return {std::move(coef), std::nullopt};
  }

  Var var() {
    Var v{cur_.text, cur_.kind == Tok::kParam};
    advance();
    return v;
  }

  Lexer lex_;
  Token cur_;
};

// Binding strength for parenthesization.
int precedence(const Pregex& p) {
  switch (p.kind) {
    case Pregex::Kind::kAlt: return 1;
    case Pregex::Kind::kConcat: return 2;
    case Pregex::Kind::kInverse: return 3;
    case Pregex::Kind::kStar:
    case Pregex::Kind::kPlus:
    case Pregex::Kind::kOpt: return 4;
    case Pregex::Kind::kAtom:
    case Pregex::Kind::kEpsilon: return 5;
  }
  return 0;
}

std::string wrap(const Pregex& p, int min_prec) {
  std::string inner = render(p);
  return precedence(p) < min_prec ? "(" + inner + ")" : inner;
}

std::string render_number(const Rational& r) {
  auto text = to_decimal(r);
  if (!text) throw std::invalid_argument("coefficient " + to_fraction_string(r) +
                                         " has no finite decimal form");
  return *text;
}

std::string render_var(const Var& v) { return v.is_param ? "?" + v.name : v.name; }

std::string render_summand(const LinSummand& s) {
  if (!s.var) return render_number(s.coef);
  if (s.coef == 1) return render_var(*s.var);
  return render_number(s.coef) + "*" + render_var(*s.var);
}

}  // namespace

PrpqQuery parse_query(std::string_view text) { return Parser(text).query(); }
Pregex parse_pattern(std::string_view text) { return Parser(text).pattern_only(); }
Constraint parse_constraint(std::string_view text) { return Parser(text).constraint_only(); }

std::string render(const LinExpr& e) {
  std::string out;
  for (std::size_t i = 0; i < e.summands.size(); ++i) {
    const LinSummand& s = e.summands[i];
    if (i > 0 && s.coef < 0) {
      out += " - " + render_summand(LinSummand{-s.coef, s.var});
      continue;
    }
    if (i > 0) out += " + ";
    out += render_summand(s);
  }
  return out;
}

std::string render(const Constraint& c) {
  std::string out;
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    if (i > 0) out += " && ";
    if (const auto* s = std::get_if<StringEq>(&c.atoms[i])) {
      out += s->attribute + " = \"";
      for (char ch : s->value) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
      }
      out += "\"";
    } else {
      const auto& cmp = std::get<LinCmp>(c.atoms[i]);
      out += render(cmp.lhs);
      out += " ";
      out += to_string(cmp.op);
      out += " ";
      out += render(cmp.rhs);
    }
  }
  return out;
}

std::string render(const Pregex& ast) {
  using K = Pregex::Kind;
  switch (ast.kind) {
    case K::kAtom:
      if (ast.constraint.is_true()) return "[" + ast.label + "]";
      return "[" + ast.label + ", " + render(ast.constraint) + "]";
    case K::kEpsilon: return "()";
    case K::kInverse: return "^" + wrap(ast.children[0], 3);
    case K::kStar: return wrap(ast.children[0], 4) + "*";
    case K::kPlus: return wrap(ast.children[0], 4) + "+";
    case K::kOpt: return wrap(ast.children[0], 4) + "?";
    case K::kConcat: return wrap(ast.children[0], 2) + "/" + wrap(ast.children[1], 3);
    case K::kAlt: return wrap(ast.children[0], 1) + "|" + wrap(ast.children[1], 2);
  }
  return {};
}

std::string render(const PrpqQuery& q) { return "FROM " + q.start + " MATCH " + render(q.pattern); }

std::size_t desugared_atom_count(const Pregex& ast) {
  using K = Pregex::Kind;
  switch (ast.kind) {
    case K::kAtom: return 1;
    case K::kEpsilon: return 0;
    case K::kPlus: return 2 * desugared_atom_count(ast.children[0]);
    default: {
      std::size_t n = 0;
      for (const auto& c : ast.children) n += desugared_atom_count(c);
      return n;
    }
  }
}

std::size_t desugared_alt_count(const Pregex& ast) {
  using K = Pregex::Kind;
  switch (ast.kind) {
    case K::kAtom:
    case K::kEpsilon: return 0;
    case K::kPlus: return 2 * desugared_alt_count(ast.children[0]);
    case K::kOpt: return 1 + desugared_alt_count(ast.children[0]);
    case K::kAlt:
      return 1 + desugared_alt_count(ast.children[0]) + desugared_alt_count(ast.children[1]);
    default: {
      std::size_t n = 0;
      for (const auto& c : ast.children) n += desugared_alt_count(c);
      return n;
    }
  }
}

}  // namespace prpq
