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

#ifndef TMECOR_MILP_HPP
#define TMECOR_MILP_HPP

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tmecor/simplex.hpp"

namespace tmecor {

constexpr long kDefaultNodeLimit = 200000;

namespace detail {

// Depth-first branch and bound over the LP relaxation. Branches on the
// most fractional binary (ties to the lowest index), exploring the side the
// relaxation leans toward first. A node whose bound cannot beat the
// incumbent by more than abs_gap is pruned, so the incumbent is within
// abs_gap of optimal on normal termination.
class BranchAndBound {
 public:
  BranchAndBound(const LinearModel& model, double abs_gap, long node_limit,
                 double feas_tol)
      : work_(model),
        abs_gap_(abs_gap),
        node_limit_(node_limit),
        feas_tol_(feas_tol),
        mult_(model.sense == Sense::Maximize ? 1.0 : -1.0) {
    for (int j = 0; j < static_cast<int>(model.vars.size()); ++j)
      if (model.vars[j].kind == VarKind::Binary) binaries_.push_back(j);
  }

  SolveResult run() {
    dive();
    SolveResult out;
    if (!incumbent_.empty()) {
      out.status = limited_ ? SolveResult::Status::IterationLimit
                            : SolveResult::Status::Optimal;
      out.objective_value = mult_ * incumbent_val_;
      out.primal = incumbent_;
      out.gap = std::max(0.0, residual_bound_ - incumbent_val_);
    } else {
      out.status = limited_ ? SolveResult::Status::IterationLimit
                            : SolveResult::Status::Infeasible;
      out.gap = limited_ ? kInf : 0.0;
    }
    return out;
  }

 private:
  static constexpr double kIntTol = 1e-6;

  void dive() {
    if (limited_) return;
    if (++nodes_ > node_limit_) {
      limited_ = true;
      return;
    }
    SolveResult lp = solve_lp(work_, feas_tol_);
    if (lp.status == SolveResult::Status::Infeasible) return;
    if (!lp.optimal())
      throw SolverFailure("branch and bound: LP relaxation did not solve to optimality");
    double bound = mult_ * lp.objective_value;
    if (!incumbent_.empty() && bound <= incumbent_val_ + abs_gap_) {
      residual_bound_ = std::max(residual_bound_, bound);
      return;
    }
    int bv = -1;
    double most = kIntTol;
    for (int j : binaries_) {
      double x = lp.primal[j];
      double dist = std::abs(x - std::round(x));
      if (dist > most) {
        most = dist;
        bv = j;
      }
    }
    if (bv < 0) {
      if (incumbent_.empty() || bound > incumbent_val_) {
        incumbent_val_ = bound;
        incumbent_ = lp.primal;
        for (int j : binaries_) incumbent_[j] = std::round(incumbent_[j]);
      }
      return;
    }
    double x = lp.primal[bv];
    double save_lo = work_.vars[bv].lower, save_up = work_.vars[bv].upper;
    int first = x >= 0.5 ? 1 : 0;
    for (int side : {first, 1 - first}) {
      work_.vars[bv].lower = side;
      work_.vars[bv].upper = side;
      dive();
      work_.vars[bv].lower = save_lo;
      work_.vars[bv].upper = save_up;
      if (limited_) {
        residual_bound_ = std::max(residual_bound_, bound);
        break;
      }
    }
  }

  LinearModel work_;
  double abs_gap_;
  long node_limit_;
  double feas_tol_;
  double mult_;
  std::vector<int> binaries_;
  long nodes_ = 0;
  bool limited_ = false;
  double incumbent_val_ = -kInf;  // in maximization space
  std::vector<double> incumbent_;
  double residual_bound_ = -kInf;
};

}  // namespace detail

// Branch-and-bound MILP solve. The incumbent is within abs_gap of the best
// bound unless node_limit is exhausted, in which case the incumbent and the
// remaining gap are returned with IterationLimit status.
inline SolveResult solve_milp(const LinearModel& model, double abs_gap = 1e-8,
                              long node_limit = kDefaultNodeLimit,
                              double feas_tol = 1e-9) {
  if (model.binary_count() == 0) return solve_lp(model, feas_tol);
  detail::BranchAndBound bb(model, abs_gap, node_limit, feas_tol);
  return bb.run();
}

// Pluggable solver backend. The built-in backend wraps the dense simplex
// and branch and bound above; external MILP solvers can be registered and
// selected by name (or through the TMECOR_SOLVER_BACKEND environment
// variable) without touching call sites.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolveResult lp(const LinearModel& model, double feas_tol) = 0;
  virtual SolveResult milp(const LinearModel& model, double abs_gap,
                           long node_limit) = 0;
};

namespace detail {

class BuiltinBackend final : public SolverBackend {
 public:
  std::string name() const override { return "builtin"; }
  SolveResult lp(const LinearModel& model, double feas_tol) override {
    return solve_lp(model, feas_tol);
  }
  SolveResult milp(const LinearModel& model, double abs_gap,
                   long node_limit) override {
    return solve_milp(model, abs_gap, node_limit);
  }
};

inline std::map<std::string, std::function<std::unique_ptr<SolverBackend>()>>&
backend_factories() {
  static std::map<std::string, std::function<std::unique_ptr<SolverBackend>()>> f;
  return f;
}

}  // namespace detail

inline SolverBackend& builtin_backend() {
  static detail::BuiltinBackend backend;
  return backend;
}

inline void register_backend(const std::string& name,
                             std::function<std::unique_ptr<SolverBackend>()> factory) {
  detail::backend_factories()[name] = std::move(factory);
}

inline SolverBackend& resolve_backend(const std::string& name) {
  if (name.empty() || name == "builtin") return builtin_backend();
  static std::map<std::string, std::unique_ptr<SolverBackend>> instances;
  auto it = instances.find(name);
  if (it != instances.end()) return *it->second;
  auto fit = detail::backend_factories().find(name);
  if (fit == detail::backend_factories().end()) {
    std::string known = "builtin";
    for (const auto& [k, v] : detail::backend_factories()) known += ", " + k;
    throw SolverFailure("unknown solver backend '" + name + "' (known: " + known + ")");
  }
  auto& slot = instances[name];
  slot = fit->second();
  return *slot;
}

// Backend selected by the TMECOR_SOLVER_BACKEND environment variable,
// defaulting to the built-in solver.
inline SolverBackend& backend_from_env() {
  const char* env = std::getenv("TMECOR_SOLVER_BACKEND");
  return resolve_backend(env ? env : "");
}

}  // namespace tmecor

#endif  // TMECOR_MILP_HPP
