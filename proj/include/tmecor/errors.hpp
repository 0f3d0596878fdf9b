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

#ifndef TMECOR_ERRORS_HPP
#define TMECOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tmecor {

// Invalid arguments to a generator or solver entry point.
struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A plan or vector does not match the game it is used with.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The LP/MILP layer failed (infeasible model where feasibility is required,
// numerical breakdown, unknown backend, ...).
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A MILP solution could not be turned back into a valid strategy, or its
// recomputed value deviates from the reported objective.
struct ReconstructionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration oracle refused to run because the strategy catalog exceeds
// the configured cap.
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tmecor

#endif  // TMECOR_ERRORS_HPP
