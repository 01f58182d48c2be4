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

#include "prpq/constraint.hpp"

#include <algorithm>

namespace prpq {

LinTerm::LinTerm(std::vector<std::pair<std::string, Rational>> coeffs) {
  std::sort(coeffs.begin(), coeffs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [name, coef] : coeffs) {
    if (!coeffs_.empty() && coeffs_.back().first == name) {
      coeffs_.back().second += coef;
      if (coeffs_.back().second == 0) coeffs_.pop_back();
    } else if (coef != 0) {
      coeffs_.emplace_back(std::move(name), std::move(coef));
    }
  }
}

LinTerm LinTerm::negated() const {
  LinTerm out = *this;
  for (auto& entry : out.coeffs_) entry.second = -entry.second;
  return out;
}

Rational LinTerm::evaluate(const Assignment& mu) const {
  Rational sum = 0;
  for (const auto& [name, coef] : coeffs_) sum += coef * mu.at(name);
  return sum;
}

DeltaRational LinTerm::evaluate(const std::map<std::string, DeltaRational>& point) const {
  DeltaRational sum;
  for (const auto& [name, coef] : coeffs_) sum += point.at(name) * coef;
  return sum;
}

std::string LinTerm::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [name, coef] : coeffs_) {
    if (!out.empty()) out += "+";
    out += to_fraction_string(coef) + "*" + name;
  }
  return out;
}

bool operator<(const LinTerm& a, const LinTerm& b) {
  return std::lexicographical_compare(
      a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end(),
      [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
}

std::string NormAtom::to_string() const {
  const char* sym = op == BoundOp::kLe ? " <= " : op == BoundOp::kGe ? " >= " : " != ";
  return term.to_string() + sym + prpq::to_string(bound);
}

bool operator<(const GroundAtom& a, const GroundAtom& b) {
  if (a.term != b.term) return a.term < b.term;
  if (a.op != b.op) return a.op < b.op;
  return a.constant < b.constant;
}

std::string GroundAtom::to_string() const {
  return term.to_string() + " + " + to_fraction_string(constant) + " " +
         std::string(prpq::to_string(op)) + " 0";
}

namespace {

bool holds(const Rational& lhs, CmpOp op, const Rational& rhs) {
  switch (op) {
    case CmpOp::kLt: return lhs < rhs;
    case CmpOp::kGt: return lhs > rhs;
    case CmpOp::kLe: return lhs <= rhs;
    case CmpOp::kGe: return lhs >= rhs;
    case CmpOp::kEq: return lhs == rhs;
    case CmpOp::kNe: return lhs != rhs;
  }
  return false;
}

// Folds `sign * expr` into (params, constant). False when an attribute is
// missing or not numeric.
bool fold(const LinExpr& expr, int sign, const AttributeMap& attrs,
          std::vector<std::pair<std::string, Rational>>& params, Rational& constant) {
  for (const LinSummand& s : expr.summands) {
    const Rational coef = sign > 0 ? s.coef : Rational(-s.coef);
    if (!s.var) {
      constant += coef;
    } else if (s.var->is_param) {
      params.emplace_back(s.var->name, coef);
    } else {
      auto it = attrs.find(s.var->name);
      if (it == attrs.end()) return false;
      const auto* num = std::get_if<Rational>(&it->second);
      if (num == nullptr) return false;
      constant += coef * *num;
    }
  }
  return true;
}

}  // namespace

GroundResult ground(const Constraint& phi, const AttributeMap& attrs) {
  std::vector<GroundAtom> out;
  for (const ConstraintAtom& atom : phi.atoms) {
    if (const auto* eq = std::get_if<StringEq>(&atom)) {
      auto it = attrs.find(eq->attribute);
      if (it == attrs.end()) return std::nullopt;
      const auto* text = std::get_if<std::string>(&it->second);
      if (text == nullptr || *text != eq->value) return std::nullopt;
      continue;
    }
    const auto& cmp = std::get<LinCmp>(atom);
    std::vector<std::pair<std::string, Rational>> params;
    Rational constant = 0;
    if (!fold(cmp.lhs, +1, attrs, params, constant) ||
        !fold(cmp.rhs, -1, attrs, params, constant)) {
      return std::nullopt;
    }
    LinTerm term(std::move(params));
    if (term.empty()) {
      if (!holds(constant, cmp.op, Rational(0))) return std::nullopt;
      continue;
    }
    out.push_back(GroundAtom{std::move(term), std::move(constant), cmp.op});
  }
  return out;
}

void normalize(const GroundAtom& atom, std::vector<NormAtom>& out) {
  // term + k op 0   ==>   term op -k, strict comparisons shifted by ε.
  const Rational rhs = -atom.constant;
  auto emit = [&](BoundOp op, DeltaRational bound) {
    if (atom.term.is_sign_normal()) {
      out.push_back(NormAtom{atom.term, op, std::move(bound)});
      return;
    }
    const BoundOp flipped = op == BoundOp::kLe ? BoundOp::kGe
                            : op == BoundOp::kGe ? BoundOp::kLe
                                                 : BoundOp::kNe;
    out.push_back(NormAtom{atom.term.negated(), flipped, -bound});
  };
  switch (atom.op) {
    case CmpOp::kLe: emit(BoundOp::kLe, DeltaRational(rhs)); break;
    case CmpOp::kGe: emit(BoundOp::kGe, DeltaRational(rhs)); break;
    case CmpOp::kLt: emit(BoundOp::kLe, DeltaRational(rhs, Rational(-1))); break;
    case CmpOp::kGt: emit(BoundOp::kGe, DeltaRational(rhs, Rational(1))); break;
    case CmpOp::kEq:
      emit(BoundOp::kLe, DeltaRational(rhs));
      emit(BoundOp::kGe, DeltaRational(rhs));
      break;
    case CmpOp::kNe: emit(BoundOp::kNe, DeltaRational(rhs)); break;
  }
}

std::vector<NormAtom> normalize(const std::vector<GroundAtom>& atoms) {
  std::vector<NormAtom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) normalize(a, out);
  return out;
}

NormResult instantiate(const Constraint& phi, const AttributeMap& attrs) {
  auto grounded = ground(phi, attrs);
  if (!grounded) return std::nullopt;
  return normalize(*grounded);
}

bool BoundStore::add(const NormAtom& atom) {
  switch (atom.op) {
    case BoundOp::kLe: {
      auto it = up_.find(atom.term);
      if (it == up_.end()) {
        up_.emplace(atom.term, atom.bound);
        return true;
      }
      if (atom.bound < it->second) {
        it->second = atom.bound;
        return true;
      }
      return false;
    }
    case BoundOp::kGe: {
      auto it = low_.find(atom.term);
      if (it == low_.end()) {
        low_.emplace(atom.term, atom.bound);
        return true;
      }
      if (atom.bound > it->second) {
        it->second = atom.bound;
        return true;
      }
      return false;
    }
    case BoundOp::kNe:
      return neq_[atom.term].insert(atom.bound.std).second;
  }
  return false;
}

std::vector<std::string> BoundStore::parameters() const {
  std::set<std::string> names;
  auto collect = [&names](const LinTerm& t) {
    for (const auto& entry : t.coeffs()) names.insert(entry.first);
  };
  for (const auto& entry : up_) collect(entry.first);
  for (const auto& entry : low_) collect(entry.first);
  for (const auto& entry : neq_) collect(entry.first);
  return {names.begin(), names.end()};
}

std::vector<NormAtom> BoundStore::atoms() const {
  std::vector<NormAtom> out;
  for (const auto& [t, b] : up_) out.push_back({t, BoundOp::kLe, b});
  for (const auto& [t, b] : low_) out.push_back({t, BoundOp::kGe, b});
  for (const auto& [t, values] : neq_) {
    for (const auto& c : values) out.push_back({t, BoundOp::kNe, DeltaRational(c)});
  }
  return out;
}

std::string BoundStore::digest() const {
  std::string out;
  auto put_bound = [&out](const DeltaRational& b) {
    out += to_fraction_string(b.std);
    out += ',';
    out += to_fraction_string(b.eps);
    out += ';';
  };
  for (const auto& [t, b] : up_) {
    out += 'u';
    out += t.to_string();
    out += '=';
    put_bound(b);
  }
  for (const auto& [t, b] : low_) {
    out += 'l';
    out += t.to_string();
    out += '=';
    put_bound(b);
  }
  for (const auto& [t, values] : neq_) {
    out += 'n';
    out += t.to_string();
    out += '=';
    for (const auto& c : values) {
      out += to_fraction_string(c);
      out += ',';
    }
    out += ';';
  }
  return out;
}

std::pair<BoundStore, bool> tighten(const BoundStore& store, const NormAtom& atom) {
  BoundStore copy = store;
  const bool changed = copy.add(atom);
  return {std::move(copy), changed};
}

std::string digest(const BoundStore& store) { return store.digest(); }

namespace {

bool covers(const LinTerm& term, const Assignment& mu) {
  return std::all_of(term.coeffs().begin(), term.coeffs().end(),
                     [&mu](const auto& entry) { return mu.contains(entry.first); });
}

}  // namespace

bool satisfies(const NormAtom& atom, const Assignment& mu, const Rational& epsilon) {
  if (!covers(atom.term, mu)) return false;
  const Rational value = atom.term.evaluate(mu);
  switch (atom.op) {
    case BoundOp::kLe: return value <= atom.bound.concretize(epsilon);
    case BoundOp::kGe: return value >= atom.bound.concretize(epsilon);
    case BoundOp::kNe: return value != atom.bound.std;
  }
  return false;
}

bool satisfies(const GroundAtom& atom, const Assignment& mu) {
  if (!covers(atom.term, mu)) return false;
  return holds(atom.term.evaluate(mu) + atom.constant, atom.op, Rational(0));
}

}  // namespace prpq
