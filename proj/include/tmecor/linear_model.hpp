// Copyright 2026 The tmecor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TMECOR_LINEAR_MODEL_HPP
#define TMECOR_LINEAR_MODEL_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "tmecor/errors.hpp"

namespace tmecor {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };

// Solver-agnostic LP/MILP: variables with bounds and integrality marks,
// sparse linear constraints, one linear objective.
struct LinearModel {
  struct Term {
    int var;
    double coef;
  };
  struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    VarKind kind = VarKind::Continuous;
  };
  struct Constraint {
    std::vector<Term> terms;
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
  };

  Sense sense = Sense::Maximize;
  std::vector<Variable> vars;
  std::vector<Constraint> rows;
  std::vector<Term> objective;

  int add_var(std::string name, double lower, double upper,
              VarKind kind = VarKind::Continuous) {
    if (kind == VarKind::Binary && (lower < 0.0 || upper > 1.0))
      throw InvalidParams("LinearModel: binary variable bounds must lie in [0,1]");
    if (lower > upper)
      throw InvalidParams("LinearModel: variable lower bound above upper bound");
    vars.push_back(Variable{std::move(name), lower, upper, kind});
    return static_cast<int>(vars.size()) - 1;
  }

  int add_row(std::vector<Term> terms, Relation rel, double rhs) {
    for (const Term& t : terms)
      if (t.var < 0 || t.var >= static_cast<int>(vars.size()))
        throw InvalidParams("LinearModel: constraint references an undeclared variable");
    rows.push_back(Constraint{std::move(terms), rel, rhs});
    return static_cast<int>(rows.size()) - 1;
  }

  void objective_term(int var, double coef) {
    if (var < 0 || var >= static_cast<int>(vars.size()))
      throw InvalidParams("LinearModel: objective references an undeclared variable");
    objective.push_back(Term{var, coef});
  }

  int binary_count() const {
    int k = 0;
    for (const Variable& v : vars) k += v.kind == VarKind::Binary;
    return k;
  }

  // LP text dump for debugging against external solvers. Field order is
  // deterministic: objective, rows, bounds, binary section.
  std::string dump_lp() const {
    auto num = [](double x) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      return std::string(buf);
    };
    auto terms_str = [&](const std::vector<Term>& terms) {
      std::string s;
      for (const Term& t : terms) {
        s += t.coef < 0 ? " - " : " + ";
        s += num(std::abs(t.coef)) + " " + vars[t.var].name;
      }
      return s.empty() ? std::string(" 0") : s;
    };
    std::string out = sense == Sense::Maximize ? "Maximize\n" : "Minimize\n";
    out += " obj:" + terms_str(objective) + "\n";
    out += "Subject To\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      const Constraint& c = rows[i];
      const char* rel = c.rel == Relation::LessEqual  ? "<="
                        : c.rel == Relation::Equal    ? "="
                                                      : ">=";
      out += " c" + std::to_string(i) + ":" + terms_str(c.terms) + " " + rel + " " +
             num(c.rhs) + "\n";
    }
    out += "Bounds\n";
    for (const Variable& v : vars) {
      if (v.lower == -kInf && v.upper == kInf) {
        out += " " + v.name + " free\n";
      } else {
        out += " " + (v.lower == -kInf ? "-inf" : num(v.lower)) + " <= " + v.name +
               " <= " + (v.upper == kInf ? "+inf" : num(v.upper)) + "\n";
      }
    }
    bool any_bin = false;
    for (const Variable& v : vars) any_bin = any_bin || v.kind == VarKind::Binary;
    if (any_bin) {
      out += "Binary\n";
      for (const Variable& v : vars)
        if (v.kind == VarKind::Binary) out += " " + v.name + "\n";
    }
    out += "End\n";
    return out;
  }
};

struct SolveResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Status::Infeasible;
  double objective_value = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> primal;
  std::vector<double> duals;  // one per constraint; LP solves only
  double gap = 0.0;           // MILP: |best bound - incumbent|

  bool optimal() const { return status == Status::Optimal; }
};

}  // namespace tmecor

#endif  // TMECOR_LINEAR_MODEL_HPP
