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

#ifndef TMECOR_SIMPLEX_HPP
#define TMECOR_SIMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tmecor/linear_model.hpp"

namespace tmecor {
namespace detail {

// Dense primal simplex over bounded variables, two phases. Every
// constraint becomes an equality with a slack variable bounded according
// to its relation; rows whose slack cannot absorb the initial residual get
// an artificial variable minimized in phase 1. Variables may be nonbasic
// at either bound (or at zero when free), so explicit upper bounds never
// add rows. Pivoting is deterministic: Dantzig pricing with lowest-index
// ties, falling back to Bland's rule when the objective stalls.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearModel& model, double feas_tol)
      : model_(model), tol_(feas_tol) {}

  SolveResult solve() {
    build();
    SolveResult out;
    if (!artificials_.empty()) {
      set_phase_costs(/*phase1=*/true);
      RunStatus st = run();
      if (st == RunStatus::IterLimit) return iteration_limited();
      refine_basics();
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i)
        if (cost_[basis_[i]] != 0.0) infeas += std::max(0.0, xb_[i]);
      if (infeas > 1e-7) {
        out.status = SolveResult::Status::Infeasible;
        return out;
      }
      for (int a : artificials_) {
        lo_[a] = up_[a] = 0.0;
        if (state_[a] != State::Basic) {
          state_[a] = State::AtLower;
          xn_[a] = 0.0;
        }
      }
    }
    set_phase_costs(/*phase1=*/false);
    RunStatus st = RunStatus::Optimal;
    for (int round = 0; round < 4; ++round) {
      st = run();
      if (st != RunStatus::Optimal) break;
      compute_dj();  // fresh reduced costs; re-run if drift hid a candidate
      if (!has_entering_candidate()) break;
    }
    if (st == RunStatus::IterLimit) return iteration_limited();
    if (st == RunStatus::Unbounded) {
      out.status = SolveResult::Status::Unbounded;
      return out;
    }
    refine_basics();
    out.status = SolveResult::Status::Optimal;
    out.primal = extract_primal();
    out.objective_value = 0.0;
    for (const LinearModel::Term& t : model_.objective)
      out.objective_value += t.coef * out.primal[t.var];
    out.duals.resize(m_);
    double dual_sign = model_.sense == Sense::Minimize ? -1.0 : 1.0;
    for (int i = 0; i < m_; ++i) out.duals[i] = dual_sign * dj_[nv_ + i];
    return out;
  }

 private:
  enum class State : std::int8_t { AtLower, AtUpper, Basic, FreeZero };
  enum class RunStatus { Optimal, Unbounded, IterLimit };

  double& tab(int i, int j) { return tab_[static_cast<size_t>(i) * ncols_ + j]; }
  double tab(int i, int j) const { return tab_[static_cast<size_t>(i) * ncols_ + j]; }

  void build() {
    m_ = static_cast<int>(model_.rows.size());
    nv_ = static_cast<int>(model_.vars.size());

    lo_.assign(nv_ + m_, 0.0);
    up_.assign(nv_ + m_, 0.0);
    state_.assign(nv_ + m_, State::AtLower);
    xn_.assign(nv_ + m_, 0.0);
    for (int j = 0; j < nv_; ++j) {
      lo_[j] = model_.vars[j].lower;
      up_[j] = model_.vars[j].upper;
      if (lo_[j] > -kInf) {
        state_[j] = State::AtLower;
        xn_[j] = lo_[j];
      } else if (up_[j] < kInf) {
        state_[j] = State::AtUpper;
        xn_[j] = up_[j];
      } else {
        state_[j] = State::FreeZero;
        xn_[j] = 0.0;
      }
    }
    for (int i = 0; i < m_; ++i) {
      int s = nv_ + i;
      switch (model_.rows[i].rel) {
        case Relation::LessEqual:
          lo_[s] = 0.0;
          up_[s] = kInf;
          break;
        case Relation::GreaterEqual:
          lo_[s] = -kInf;
          up_[s] = 0.0;
          break;
        case Relation::Equal:
          lo_[s] = up_[s] = 0.0;
          break;
      }
      // Nonbasic slacks rest on their finite zero bound.
      state_[s] = model_.rows[i].rel == Relation::GreaterEqual ? State::AtUpper
                                                               : State::AtLower;
      xn_[s] = 0.0;
    }

    // Initial residuals decide which rows need an artificial column.
    std::vector<double> residual(m_);
    std::vector<int> art_row;
    for (int i = 0; i < m_; ++i) {
      double r = model_.rows[i].rhs;
      for (const LinearModel::Term& t : model_.rows[i].terms) r -= t.coef * xn_[t.var];
      residual[i] = r;
      bool slack_ok = r >= lo_[nv_ + i] && r <= up_[nv_ + i];
      if (!slack_ok) art_row.push_back(i);
    }
    ncols_ = nv_ + m_ + static_cast<int>(art_row.size());
    tab_.assign(static_cast<size_t>(m_) * ncols_, 0.0);
    lo_.resize(ncols_, 0.0);
    up_.resize(ncols_, kInf);
    state_.resize(ncols_, State::AtLower);
    xn_.resize(ncols_, 0.0);
    rhs_init_.assign(m_, 0.0);
    init_basic_.assign(m_, -1);
    basis_.assign(m_, -1);
    xb_.assign(m_, 0.0);
    artificials_.clear();

    for (int i = 0; i < m_; ++i) {
      for (const LinearModel::Term& t : model_.rows[i].terms) tab(i, t.var) += t.coef;
      tab(i, nv_ + i) = 1.0;
      rhs_init_[i] = model_.rows[i].rhs;
    }
    int next_art = nv_ + m_;
    for (int i : art_row) {
      int a = next_art++;
      artificials_.push_back(a);
      if (residual[i] < 0.0) {
        for (int j = 0; j < nv_ + m_; ++j) tab(i, j) = -tab(i, j);
        rhs_init_[i] = -rhs_init_[i];
      }
      tab(i, a) = 1.0;
      basis_[i] = a;
      xb_[i] = std::abs(residual[i]);
      state_[a] = State::Basic;
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0) continue;
      basis_[i] = nv_ + i;
      xb_[i] = residual[i];
      state_[nv_ + i] = State::Basic;
    }
    for (int i = 0; i < m_; ++i) init_basic_[i] = basis_[i];
    cost_.assign(ncols_, 0.0);
    dj_.assign(ncols_, 0.0);
  }

  void set_phase_costs(bool phase1) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    if (phase1) {
      for (int a : artificials_) cost_[a] = 1.0;
    } else {
      double sgn = model_.sense == Sense::Maximize ? -1.0 : 1.0;
      for (const LinearModel::Term& t : model_.objective) cost_[t.var] += sgn * t.coef;
    }
  }

  bool has_entering_candidate() const {
    const double dj_tol = std::max(tol_, 1e-9);
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == State::Basic || lo_[j] == up_[j]) continue;
      double d = dj_[j];
      if (state_[j] == State::AtLower && d < -dj_tol) return true;
      if (state_[j] == State::AtUpper && d > dj_tol) return true;
      if (state_[j] == State::FreeZero && std::abs(d) > dj_tol) return true;
    }
    return false;
  }

  void compute_dj() {
    dj_ = cost_;
    for (int i = 0; i < m_; ++i) {
      double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[static_cast<size_t>(i) * ncols_];
      for (int j = 0; j < ncols_; ++j) dj_[j] -= cb * row[j];
    }
    for (int i = 0; i < m_; ++i) dj_[basis_[i]] = 0.0;
  }

  // Recompute basic values through the maintained inverse: the tableau
  // columns of the initial basis are the columns of B^-1.
  void refine_basics() {
    std::vector<double> fresh(m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      double b = rhs_init_[k];
      if (b == 0.0) continue;
      for (int i = 0; i < m_; ++i) fresh[i] += b * tab(i, init_basic_[k]);
    }
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == State::Basic || xn_[j] == 0.0) continue;
      double v = xn_[j];
      for (int i = 0; i < m_; ++i) fresh[i] -= v * tab(i, j);
    }
    xb_ = std::move(fresh);
  }

  RunStatus run() {
    compute_dj();
    const double dj_tol = std::max(tol_, 1e-9);
    const long iter_limit = 20000 + 200L * (m_ + nv_);
    bool bland = false;
    long stall = 0;
    for (long iter = 0; iter < iter_limit; ++iter) {
      int q = -1, dir = 0;
      double best_score = dj_tol;
      for (int j = 0; j < ncols_; ++j) {
        if (state_[j] == State::Basic || lo_[j] == up_[j]) continue;
        double d = dj_[j];
        int cand_dir = 0;
        if (state_[j] == State::AtLower && d < -dj_tol)
          cand_dir = 1;
        else if (state_[j] == State::AtUpper && d > dj_tol)
          cand_dir = -1;
        else if (state_[j] == State::FreeZero && std::abs(d) > dj_tol)
          cand_dir = d < 0 ? 1 : -1;
        if (cand_dir == 0) continue;
        if (bland) {
          q = j;
          dir = cand_dir;
          break;
        }
        double score = std::abs(d);
        if (score > best_score * (1.0 + 1e-12)) {
          best_score = score;
          q = j;
          dir = cand_dir;
        }
      }
      if (q < 0) return RunStatus::Optimal;

      double tcap =
          (lo_[q] > -kInf && up_[q] < kInf) ? up_[q] - lo_[q] : kInf;
      double best_t = tcap;
      int leave_row = -1;
      double best_piv = 0.0;
      int best_var = -1;
      for (int i = 0; i < m_; ++i) {
        double a = tab(i, q);
        if (std::abs(a) <= 1e-11) continue;
        double rate = -dir * a;
        int bv = basis_[i];
        double ti;
        if (rate > 0) {
          if (up_[bv] >= kInf) continue;
          ti = (up_[bv] - xb_[i]) / rate;
        } else {
          if (lo_[bv] <= -kInf) continue;
          ti = (xb_[i] - lo_[bv]) / (-rate);
        }
        if (ti < 0) ti = 0;
        bool take = false;
        if (leave_row < 0) {
          take = ti < best_t - 1e-12;
        } else if (ti < best_t - 1e-12) {
          take = true;
        } else if (ti <= best_t + 1e-12) {
          if (std::abs(a) > std::abs(best_piv) * (1.0 + 1e-9))
            take = true;
          else if (std::abs(std::abs(a) - std::abs(best_piv)) <=
                       1e-12 * std::abs(best_piv) &&
                   bv < best_var)
            take = true;
        }
        if (take) {
          best_t = std::min(best_t, ti);
          leave_row = i;
          best_piv = a;
          best_var = bv;
        }
      }
      if (best_t >= kInf) return RunStatus::Unbounded;

      double delta = dj_[q] * dir * best_t;
      stall = std::abs(delta) > 1e-12 ? 0 : stall + 1;
      if (stall > 2L * (m_ + nv_) + 100) bland = true;

      if (leave_row < 0) {
        // Bound flip: the entering variable crosses to its other bound.
        for (int i = 0; i < m_; ++i) {
          double a = tab(i, q);
          if (a != 0.0) xb_[i] -= dir * best_t * a;
        }
        xn_[q] = dir > 0 ? up_[q] : lo_[q];
        state_[q] = dir > 0 ? State::AtUpper : State::AtLower;
        continue;
      }

      double enter_from = state_[q] == State::FreeZero ? 0.0 : xn_[q];
      double enter_val = enter_from + dir * best_t;
      if (best_t != 0.0)
        for (int i = 0; i < m_; ++i) {
          double a = tab(i, q);
          if (a != 0.0) xb_[i] -= dir * best_t * a;
        }
      int leaving = basis_[leave_row];
      double rate_r = -dir * tab(leave_row, q);
      state_[leaving] = rate_r > 0 ? State::AtUpper : State::AtLower;
      xn_[leaving] = rate_r > 0 ? up_[leaving] : lo_[leaving];
      if (leaving >= nv_ + m_) {  // artificial: lock out once it leaves
        lo_[leaving] = up_[leaving] = 0.0;
        xn_[leaving] = 0.0;
        state_[leaving] = State::AtLower;
      }

      double piv = tab(leave_row, q);
      double* prow = &tab_[static_cast<size_t>(leave_row) * ncols_];
      double inv = 1.0 / piv;
      for (int j = 0; j < ncols_; ++j) prow[j] *= inv;
      prow[q] = 1.0;
      for (int i = 0; i < m_; ++i) {
        if (i == leave_row) continue;
        double f = tab(i, q);
        if (f == 0.0) continue;
        double* row = &tab_[static_cast<size_t>(i) * ncols_];
        for (int j = 0; j < ncols_; ++j) row[j] -= f * prow[j];
        row[q] = 0.0;
      }
      double dq = dj_[q];
      if (dq != 0.0) {
        for (int j = 0; j < ncols_; ++j) dj_[j] -= dq * prow[j];
      }
      dj_[q] = 0.0;
      basis_[leave_row] = q;
      state_[q] = State::Basic;
      xb_[leave_row] = enter_val;
    }
    return RunStatus::IterLimit;
  }

  std::vector<double> extract_primal() const {
    std::vector<double> x(nv_);
    for (int j = 0; j < nv_; ++j)
      x[j] = state_[j] == State::FreeZero ? 0.0 : xn_[j];
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nv_) x[basis_[i]] = xb_[i];
    return x;
  }

  SolveResult iteration_limited() const {
    SolveResult out;
    out.status = SolveResult::Status::IterationLimit;
    return out;
  }

  const LinearModel& model_;
  double tol_;
  int m_ = 0, nv_ = 0, ncols_ = 0;
  std::vector<double> tab_, xb_, xn_, lo_, up_, cost_, dj_, rhs_init_;
  std::vector<int> basis_, init_basic_, artificials_;
  std::vector<State> state_;
};

}  // namespace detail

// Solves the LP (integrality marks ignored). Optimal results carry one dual
// per constraint, signed so that for a maximization the dual of a binding
// <= constraint is nonnegative.
inline SolveResult solve_lp(const LinearModel& model, double feas_tol = 1e-9) {
  detail::BoundedSimplex simplex(model, feas_tol);
  return simplex.solve();
}

}  // namespace tmecor

#endif  // TMECOR_SIMPLEX_HPP
