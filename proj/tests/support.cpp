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

#include "support.hpp"

#include "prpq/fourier_motzkin.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace prpq::testing {

std::string data_path(const std::string& name) { return std::string(PRPQ_TEST_DATA) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

PropertyGraph social_graph() { return load_graph_file(data_path("social.pg")); }

std::string rf_pattern() {
  return "([Person, ?p <= age && ?q >= age && ?q - ?p <= 7] / [follow, since > 2019])* / "
         "[Person, ?p <= age && ?q >= age && ?q - ?p <= 7]";
}

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

std::vector<GroundAtom> random_system(Rng& rng, int params, int atoms, int neq, bool strict_only) {
  std::vector<GroundAtom> out;
  int neq_left = neq;
  for (int i = 0; i < atoms; ++i) {
    std::vector<std::pair<std::string, Rational>> coeffs;
    const int width = uniform(rng, 1, params);
    for (int k = 0; k < width; ++k) {
      coeffs.emplace_back("p" + std::to_string(uniform(rng, 0, params - 1)),
                          Rational(uniform(rng, -5, 5)));
    }
    LinTerm term(std::move(coeffs));
    if (term.empty()) term = LinTerm::param("p0");
    CmpOp op;
    if (strict_only) {
      op = uniform(rng, 0, 1) == 0 ? CmpOp::kLt : CmpOp::kGt;
    } else {
      static constexpr CmpOp kOps[] = {CmpOp::kLt, CmpOp::kGt, CmpOp::kLe,
                                       CmpOp::kGe, CmpOp::kEq, CmpOp::kNe};
      op = kOps[uniform(rng, 0, 5)];
      if (op == CmpOp::kNe) {
        if (neq_left == 0) {
          op = CmpOp::kLe;
        } else {
          --neq_left;
        }
      }
      // Equalities are rare in practice and make most systems trivially
      // infeasible; keep them occasional.
      if (op == CmpOp::kEq && uniform(rng, 0, 2) != 0) op = CmpOp::kGe;
    }
    out.push_back(GroundAtom{std::move(term), Rational(uniform(rng, -20, 20)), op});
  }
  return out;
}

namespace {

LinExpr random_linexpr(Rng& rng) {
  static const char* kDecimals[] = {"1", "2", "-1", "0.5", "-2.25", "3", "10", "0.125"};
  LinExpr e;
  const int n = uniform(rng, 1, 3);
  for (int i = 0; i < n; ++i) {
    LinSummand s;
    s.coef = *parse_decimal(kDecimals[uniform(rng, 0, 7)]);
    switch (uniform(rng, 0, 3)) {
      case 0: break;
      case 1: s.var = Var{"x", false}; break;
      case 2: s.var = Var{"p", true}; break;
      default: s.var = Var{"q", true}; break;
    }
    e.summands.push_back(std::move(s));
  }
  return e;
}

Constraint random_constraint(Rng& rng) {
  Constraint c;
  const int n = uniform(rng, 0, 2);
  for (int i = 0; i < n; ++i) {
    if (uniform(rng, 0, 5) == 0) {
      c.atoms.push_back(StringEq{"name", uniform(rng, 0, 1) == 0 ? "a\"b" : "z\\w"});
      continue;
    }
    static constexpr CmpOp kOps[] = {CmpOp::kLt, CmpOp::kGt, CmpOp::kLe,
                                     CmpOp::kGe, CmpOp::kEq, CmpOp::kNe};
    c.atoms.push_back(LinCmp{random_linexpr(rng), kOps[uniform(rng, 0, 5)], random_linexpr(rng)});
  }
  return c;
}

Pregex random_pregex_sized(Rng& rng, int atoms) {
  if (atoms <= 1) {
    switch (uniform(rng, 0, 9)) {
      case 0: return Pregex::epsilon();
      case 1: return Pregex::star(random_pregex_sized(rng, 1));
      case 2: return Pregex::plus(Pregex::atom(uniform(rng, 0, 1) ? "a" : "b", random_constraint(rng)));
      case 3: return Pregex::opt(Pregex::atom(uniform(rng, 0, 1) ? "a" : "b", random_constraint(rng)));
      case 4: return Pregex::inverse(Pregex::atom(uniform(rng, 0, 1) ? "a" : "b", random_constraint(rng)));
      default: return Pregex::atom(uniform(rng, 0, 1) ? "a" : "b", random_constraint(rng));
    }
  }
  const int left = uniform(rng, 1, atoms - 1);
  switch (uniform(rng, 0, 5)) {
    case 0: return Pregex::alt(random_pregex_sized(rng, left), random_pregex_sized(rng, atoms - left));
    case 1: return Pregex::star(random_pregex_sized(rng, atoms));
    case 2: return Pregex::inverse(random_pregex_sized(rng, atoms));
    case 3: return Pregex::opt(random_pregex_sized(rng, atoms));
    default:
      return Pregex::concat(random_pregex_sized(rng, left), random_pregex_sized(rng, atoms - left));
  }
}

}  // namespace

Pregex random_pregex(Rng& rng, int max_atoms) {
  return random_pregex_sized(rng, uniform(rng, 1, max_atoms));
}

PropertyGraph random_graph(Rng& rng, int max_nodes) {
  GraphBuilder b;
  const int n = uniform(rng, 1, max_nodes);
  static const char* kStrings[] = {"plain", "with space", "quote\"inside", "back\\slash", ""};
  for (int i = 0; i < n; ++i) {
    AttributeMap attrs;
    if (uniform(rng, 0, 1)) attrs.emplace("x", *parse_decimal(std::to_string(uniform(rng, -50, 50)) + ".25"));
    if (uniform(rng, 0, 1)) attrs.emplace("y", Rational(uniform(rng, 0, 1000)));
    if (uniform(rng, 0, 2) == 0) attrs.emplace("name", std::string(kStrings[uniform(rng, 0, 4)]));
    b.add_node("n" + std::to_string(i), uniform(rng, 0, 1) ? "A" : "B", std::move(attrs));
  }
  const int m = uniform(rng, 0, 2 * n);
  for (int i = 0; i < m; ++i) {
    AttributeMap attrs;
    if (uniform(rng, 0, 1)) attrs.emplace("w", Rational(uniform(rng, -9, 9), 4));
    b.add_edge("e" + std::to_string(i), "n" + std::to_string(uniform(rng, 0, n - 1)),
               "n" + std::to_string(uniform(rng, 0, n - 1)), uniform(rng, 0, 1) ? "r" : "s",
               std::move(attrs));
  }
  return std::move(b).build();
}

PropertyGraph random_dag(Rng& rng, int nodes, int edges, int edge_labels) {
  GraphBuilder b;
  for (int i = 0; i < nodes; ++i) {
    b.add_node("n" + std::to_string(i), "Lv0",
               AttributeMap{{"a0", Rational(uniform(rng, 0, 40))}, {"a1", Rational(uniform(rng, 0, 40))}});
  }
  if (nodes >= 2) {
    for (int i = 0; i < edges; ++i) {
      int u = uniform(rng, 0, nodes - 1);
      int v = uniform(rng, 0, nodes - 1);
      while (u == v) v = uniform(rng, 0, nodes - 1);
      if (u > v) std::swap(u, v);
      b.add_edge("e" + std::to_string(i), "n" + std::to_string(u), "n" + std::to_string(v),
                 "Le" + std::to_string(uniform(rng, 0, edge_labels - 1)));
    }
  }
  return std::move(b).build();
}

bool cnf_satisfiable(const Cnf& cnf) {
  const std::size_t n = cnf.variables;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool all = true;
    for (const auto& clause : cnf.clauses) {
      bool any = false;
      for (int lit : clause) {
        const bool value = (mask >> (std::abs(lit) - 1)) & 1U;
        if (lit > 0 ? value : !value) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Cnf random_cnf(Rng& rng, int max_vars, int max_clauses) {
  Cnf cnf;
  cnf.variables = static_cast<std::size_t>(uniform(rng, 1, max_vars));
  const int m = uniform(rng, 1, max_clauses);
  for (int i = 0; i < m; ++i) {
    std::vector<int> clause;
    const int k = uniform(rng, 1, 3);
    for (int j = 0; j < k; ++j) {
      const int var = uniform(rng, 1, static_cast<int>(cnf.variables));
      clause.push_back(uniform(rng, 0, 1) ? var : -var);
    }
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

namespace {

using Conj = std::vector<GroundAtom>;

std::vector<Conj> derive(const Pregex& p, const std::vector<SeqElement>& seq, std::size_t i,
                         std::size_t j);

std::vector<SeqElement> flipped(const std::vector<SeqElement>& seq, std::size_t i, std::size_t j) {
  std::vector<SeqElement> out(seq.begin() + static_cast<std::ptrdiff_t>(i),
                              seq.begin() + static_cast<std::ptrdiff_t>(j));
  std::reverse(out.begin(), out.end());
  for (auto& e : out) {
    if (!e.is_node) e.inverse = !e.inverse;
  }
  return out;
}

std::vector<Conj> joined(const std::vector<Conj>& a, const std::vector<Conj>& b) {
  std::vector<Conj> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Conj c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Conj> star_derive(const Pregex& child, const std::vector<SeqElement>& seq,
                              std::size_t i, std::size_t j) {
  if (i == j) return {Conj{}};
  std::vector<Conj> out;
  for (std::size_t k = i + 1; k <= j; ++k) {
    auto first = derive(child, seq, i, k);
    if (first.empty()) continue;
    auto rest = star_derive(child, seq, k, j);
    auto both = joined(first, rest);
    out.insert(out.end(), both.begin(), both.end());
  }
  return out;
}

std::vector<Conj> derive(const Pregex& p, const std::vector<SeqElement>& seq, std::size_t i,
                         std::size_t j) {
  using K = Pregex::Kind;
  switch (p.kind) {
    case K::kEpsilon: return i == j ? std::vector<Conj>{Conj{}} : std::vector<Conj>{};
    case K::kAtom: {
      if (j != i + 1) return {};
      const SeqElement& e = seq[i];
      if (e.label != p.label || (!e.is_node && e.inverse)) return {};
      auto g = ground(p.constraint, e.attributes);
      if (!g) return {};
      return {*g};
    }
    case K::kInverse: {
      auto sub = flipped(seq, i, j);
      return derive(p.children[0], sub, 0, sub.size());
    }
    case K::kConcat: {
      std::vector<Conj> out;
      for (std::size_t k = i; k <= j; ++k) {
        auto both = joined(derive(p.children[0], seq, i, k), derive(p.children[1], seq, k, j));
        out.insert(out.end(), both.begin(), both.end());
      }
      return out;
    }
    case K::kAlt: {
      auto out = derive(p.children[0], seq, i, j);
      auto more = derive(p.children[1], seq, i, j);
      out.insert(out.end(), more.begin(), more.end());
      return out;
    }
    case K::kStar: return star_derive(p.children[0], seq, i, j);
    case K::kPlus: {
      std::vector<Conj> out;
      for (std::size_t k = i; k <= j; ++k) {
        auto both = joined(derive(p.children[0], seq, i, k), star_derive(p.children[0], seq, k, j));
        out.insert(out.end(), both.begin(), both.end());
      }
      return out;
    }
    case K::kOpt: {
      auto out = derive(p.children[0], seq, i, j);
      if (i == j) out.push_back(Conj{});
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<std::vector<GroundAtom>> derivations(const Pregex& p,
                                                 const std::vector<SeqElement>& seq) {
  return derive(p, seq, 0, seq.size());
}

bool language_accepts(const Pregex& p, const std::vector<SeqElement>& seq) {
  for (const auto& conj : derivations(p, seq)) {
    if (fm_feasible_ground(conj)) return true;
  }
  return false;
}

}  // namespace prpq::testing
