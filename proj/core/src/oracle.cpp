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

#include "prpq/oracle.hpp"

#include "prpq/simplex.hpp"
#include "prpq/smtlib.hpp"

#include <algorithm>

namespace prpq {

namespace {

using Point = std::vector<DeltaRational>;  // values of the structural variables

struct Excluded {
  std::size_t var;
  const LinTerm* term;
  Rational value;
};

// The store laid out as a simplex instance: one structural variable per
// parameter, one row per composite term. Unit terms bound the parameter
// directly.
class Encoding {
 public:
  explicit Encoding(const BoundStore& store) : params_(store.parameters()), lp_(params_.size()) {
    for (const auto& [term, bound] : store.up()) lp_.set_upper(var_for(term), bound);
    for (const auto& [term, bound] : store.low()) lp_.set_lower(var_for(term), bound);
    for (const auto& [term, values] : store.neq()) {
      const std::size_t var = var_for(term);
      for (const auto& c : values) excluded_.push_back({var, &term, c});
    }
  }

  DeltaSimplex& lp() { return lp_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<Excluded>& excluded() const { return excluded_; }
  const std::vector<std::pair<const LinTerm*, std::size_t>>& terms() const { return terms_; }

  Point point() const {
    Point p;
    for (std::size_t i = 0; i < params_.size(); ++i) p.push_back(lp_.value(i));
    return p;
  }

  DeltaRational eval(const LinTerm& term, const Point& p) const {
    DeltaRational sum;
    for (const auto& [name, coef] : term.coeffs()) sum += p[index_of(name)] * coef;
    return sum;
  }

  std::size_t index_of(const std::string& name) const {
    return static_cast<std::size_t>(
        std::lower_bound(params_.begin(), params_.end(), name) - params_.begin());
  }

 private:
  std::size_t var_for(const LinTerm& term) {
    for (const auto& [t, var] : terms_) {
      if (*t == term) return var;
    }
    std::size_t var;
    const auto& coeffs = term.coeffs();
    if (coeffs.size() == 1 && coeffs.front().second == 1) {
      var = index_of(coeffs.front().first);
    } else {
      std::vector<std::pair<std::size_t, Rational>> row;
      for (const auto& [name, coef] : coeffs) row.emplace_back(index_of(name), coef);
      var = lp_.add_row(row);
    }
    terms_.emplace_back(&term, var);
    return var;
  }

  std::vector<std::string> params_;
  DeltaSimplex lp_;
  std::vector<Excluded> excluded_;
  std::vector<std::pair<const LinTerm*, std::size_t>> terms_;
};

// Returns a feasible point with the excluded term off its value, or nullopt
// when the whole polyhedron lies on the hyperplane.
std::optional<Point> escape_hyperplane(Encoding& enc, const Excluded& ex) {
  DeltaSimplex& lp = enc.lp();
  if (lp.value(ex.var) != DeltaRational(ex.value)) return enc.point();
  const std::vector<std::pair<std::size_t, Rational>> objective{{ex.var, Rational(1)}};
  for (bool maximize : {true, false}) {
    lp.optimize(objective, maximize);
    if (lp.value(ex.var) != DeltaRational(ex.value)) return enc.point();
  }
  return std::nullopt;
}

// Returns witnesses (one per excluded value) or nullopt if infeasible.
std::optional<std::vector<Point>> solve(Encoding& enc, SimplexStats* stats) {
  DeltaSimplex& lp = enc.lp();
  const bool ok = lp.check();
  std::optional<std::vector<Point>> result;
  if (ok) {
    std::vector<Point> witnesses;
    bool contained = false;
    for (const Excluded& ex : enc.excluded()) {
      auto w = escape_hyperplane(enc, ex);
      if (!w) {
        contained = true;
        break;
      }
      witnesses.push_back(std::move(*w));
    }
    if (!contained) result = std::move(witnesses);
  }
  if (stats != nullptr) {
    stats->pivots = lp.pivots();
    stats->rows = lp.row_count();
    stats->columns = lp.variable_count();
  }
  return result;
}

bool avoids_all(const Encoding& enc, const Point& p) {
  return std::all_of(enc.excluded().begin(), enc.excluded().end(), [&](const Excluded& ex) {
    return enc.eval(*ex.term, p) != DeltaRational(ex.value);
  });
}

// Convex combination of the witnesses with weights r^i. For each excluded
// value the deviation is a nonzero polynomial in r, so some r among the
// first (count * witnesses + 1) integers avoids all of them.
Point combine(const Encoding& enc, const std::vector<Point>& witnesses) {
  const std::size_t dims = enc.params().size();
  const std::size_t tries = enc.excluded().size() * witnesses.size() + 2;
  for (std::size_t r = 1; r <= tries; ++r) {
    Point p(dims);
    Rational weight = 1;
    Rational total = 0;
    for (const Point& w : witnesses) {
      for (std::size_t i = 0; i < dims; ++i) p[i] += w[i] * weight;
      total += weight;
      weight *= static_cast<long>(r);
    }
    for (auto& x : p) x /= total;
    if (avoids_all(enc, p)) return p;
  }
  throw std::logic_error("no point avoids the excluded values");
}

void clamp_epsilon(Rational& eps, const DeltaRational& value, const DeltaRational& bound,
                   bool value_above) {
  // Need value >= bound (value_above) or value <= bound after substitution.
  const DeltaRational diff = value_above ? value - bound : bound - value;
  if (diff.std > 0 && diff.eps < 0) eps = std::min(eps, diff.std / -diff.eps);
}

}  // namespace

namespace {
thread_local std::uint64_t feasibility_calls = 0;
}  // namespace

std::uint64_t check_feasible_invocations() { return feasibility_calls; }

bool check_feasible(const BoundStore& store, SimplexStats* stats) {
  ++feasibility_calls;
  Encoding enc(store);
  return solve(enc, stats).has_value();
}

ConcreteModel get_concrete_model(const BoundStore& store) {
  Encoding enc(store);
  auto witnesses = solve(enc, nullptr);
  if (!witnesses) throw std::logic_error("get_model called on an infeasible store");

  Point p = enc.point();
  if (!avoids_all(enc, p)) p = combine(enc, *witnesses);

  Rational eps = 1;
  for (const auto& [term, bound] : store.up()) clamp_epsilon(eps, enc.eval(term, p), bound, false);
  for (const auto& [term, bound] : store.low()) clamp_epsilon(eps, enc.eval(term, p), bound, true);
  for (const Excluded& ex : enc.excluded()) {
    const DeltaRational v = enc.eval(*ex.term, p);
    if (v.std != ex.value && v.eps != 0) {
      const Rational hit = (ex.value - v.std) / v.eps;
      if (hit > 0) eps = std::min(eps, hit / 2);
    }
  }

  ConcreteModel model;
  model.epsilon = eps;
  for (std::size_t i = 0; i < enc.params().size(); ++i) {
    model.values.emplace(enc.params()[i], p[i].concretize(eps));
  }
  for (const NormAtom& atom : store.atoms()) {
    if (!satisfies(atom, model.values, eps)) {
      throw std::logic_error("model check failed for " + atom.to_string());
    }
  }
  return model;
}

Assignment get_model(const BoundStore& store) { return get_concrete_model(store).values; }

std::unique_ptr<Oracle> make_oracle(std::string_view spec) {
  if (spec == "builtin") return std::make_unique<BuiltinOracle>();
  constexpr std::string_view kSmt = "smtlib:";
  if (spec.substr(0, kSmt.size()) == kSmt) {
    return std::make_unique<SmtLibOracle>(std::string(spec.substr(kSmt.size())));
  }
  throw std::invalid_argument("unknown oracle '" + std::string(spec) + "'");
}

}  // namespace prpq
