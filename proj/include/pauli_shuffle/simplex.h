// Copyright 2026 The Pauli Shuffle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAULI_SHUFFLE_SIMPLEX_H
#define PAULI_SHUFFLE_SIMPLEX_H

#include <Eigen/Dense>
#include <span>

namespace pshuf {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char *lp_status_name(LpStatus s);

struct LpResult {
    LpStatus status = LpStatus::IterationLimit;
    double objective = 0;
    Eigen::VectorXd x;
    /// Row duals y with c - A^T y >= 0 at optimality.
    Eigen::VectorXd dual;
    /// max |A x - b|.
    double primal_residual = 0;
    /// max(0, -min_j (c - A^T y)_j).
    double dual_infeasibility = 0;
    /// |c^T x - b^T y|.
    double duality_gap = 0;
    int iterations = 0;
};

struct SimplexOptions {
    double optimality_tolerance = 1e-10;
    double pivot_tolerance = 1e-10;
    double feasibility_tolerance = 1e-9;
    int max_iterations = 100000;
    /// Basis inverse is recomputed from scratch this often.
    int refactor_interval = 50;
    /// Relative size of the random right-hand-side shift used to break
    /// degeneracy; the exact data is restored before returning. 0 disables it.
    double rhs_perturbation = 1e-6;
};

/// Two-phase revised simplex for  min c^T x  s.t.  A x = b, x >= 0.
/// Dense, intended for small problems (tens of rows, a few thousand columns).
/// Uses Dantzig pricing and falls back to Bland's rule after a run of
/// degenerate pivots.
/// `initial_basis` optionally names rows() columns to start from; it is used
/// only if it is nonsingular and primal feasible, and phase one is skipped.
LpResult solve_standard_form(const Eigen::MatrixXd &a, const Eigen::VectorXd &b, const Eigen::VectorXd &c,
                             const SimplexOptions &options = {}, std::span<const Eigen::Index> initial_basis = {});

}  // namespace pshuf

#endif
