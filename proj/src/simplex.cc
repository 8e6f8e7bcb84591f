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

#include "pauli_shuffle/simplex.h"

#include <Eigen/Sparse>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace pshuf {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kDegenerateRunBeforeBland = 50;

class RevisedSimplex {
   public:
    RevisedSimplex(const MatrixXd &a, const VectorXd &b, const SimplexOptions &options)
        : options_(options), rows_(a.rows()), cols_(a.cols()), row_sign_(a.rows()) {
        ext_.resize(rows_, cols_ + rows_);
        rhs_.resize(rows_);
        for (Index i = 0; i < rows_; i++) {
            row_sign_[i] = b[i] < 0 ? -1.0 : 1.0;
            ext_.row(i).head(cols_) = row_sign_[i] * a.row(i);
            rhs_[i] = row_sign_[i] * b[i];
        }
        ext_.rightCols(rows_).setIdentity();
        sparse_ = ext_.sparseView();
        basis_.resize(static_cast<size_t>(rows_));
        position_.assign(static_cast<size_t>(cols_ + rows_), -1);
        for (Index i = 0; i < rows_; i++) {
            basis_[static_cast<size_t>(i)] = cols_ + i;
            position_[static_cast<size_t>(cols_ + i)] = i;
        }
        binv_ = MatrixXd::Identity(rows_, rows_);
        original_rhs_ = rhs_;
        xb_ = rhs_;
    }

    bool perturbed() const {
        return options_.rhs_perturbation > 0;
    }

    // Installs a caller-supplied basis if it is nonsingular and primal
    // feasible. Otherwise the all-artificial basis stays in place.
    bool try_basis(std::span<const Index> start) {
        if (static_cast<Index>(start.size()) != rows_) {
            return false;
        }
        std::vector<Index> seen(static_cast<size_t>(cols_), 0);
        MatrixXd basis_matrix(rows_, rows_);
        for (Index i = 0; i < rows_; i++) {
            Index j = start[static_cast<size_t>(i)];
            if (j < 0 || j >= cols_ || seen[static_cast<size_t>(j)]++) {
                return false;
            }
            basis_matrix.col(i) = ext_.col(j);
        }
        Eigen::PartialPivLU<MatrixXd> lu(basis_matrix);
        if (!(lu.rcond() > 1e-12)) {
            return false;
        }
        VectorXd x = lu.solve(original_rhs_);
        double tol = options_.feasibility_tolerance * std::max(1.0, original_rhs_.lpNorm<Eigen::Infinity>());
        if (x.minCoeff() < -tol || (basis_matrix * x - original_rhs_).lpNorm<Eigen::Infinity>() > tol) {
            return false;
        }
        for (Index i = 0; i < rows_; i++) {
            position_[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = -1;
        }
        for (Index i = 0; i < rows_; i++) {
            basis_[static_cast<size_t>(i)] = start[static_cast<size_t>(i)];
            position_[static_cast<size_t>(start[static_cast<size_t>(i)])] = i;
        }
        refactor();
        warm_ = true;
        return true;
    }

    // Shifts the right-hand side by B * delta for the starting basis B and a
    // small positive delta, so every starting basic value becomes positive.
    void perturb() {
        if (!perturbed()) {
            return;
        }
        std::mt19937_64 rng(0x5eed);
        std::uniform_real_distribution<double> unif(0.5, 1.5);
        double scale = options_.rhs_perturbation * std::max(1.0, original_rhs_.lpNorm<Eigen::Infinity>());
        VectorXd delta(rows_);
        for (Index i = 0; i < rows_; i++) {
            delta[i] = scale * unif(rng);
        }
        for (Index i = 0; i < rows_; i++) {
            rhs_ += delta[i] * ext_.col(basis_[static_cast<size_t>(i)]);
        }
        refactor();
    }

    LpResult solve(const VectorXd &c) {
        LpResult result;
        perturb();
        if (!warm_) {
            VectorXd phase1 = VectorXd::Zero(cols_ + rows_);
            phase1.tail(rows_).setOnes();
            auto status = run(phase1, true);
            if (status != LpStatus::Optimal) {
                result.status = status == LpStatus::Unbounded ? LpStatus::Infeasible : status;
                result.iterations = iterations_;
                return result;
            }
            double infeasibility = 0;
            for (Index i = 0; i < rows_; i++) {
                if (basis_[static_cast<size_t>(i)] >= cols_) {
                    infeasibility += std::abs(xb_[i]);
                }
            }
            if (infeasibility > options_.feasibility_tolerance * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>())) {
                result.status = LpStatus::Infeasible;
                result.iterations = iterations_;
                return result;
            }
            drive_out_artificials();
        }

        VectorXd phase2 = VectorXd::Zero(cols_ + rows_);
        phase2.head(cols_) = c;
        auto status = run(phase2, false);
        result.status = status;
        result.iterations = iterations_;
        if (status != LpStatus::Optimal) {
            return result;
        }
        if (perturbed() && !remove_perturbation(phase2)) {
            result.status = LpStatus::IterationLimit;
            return result;
        }
        result.iterations = iterations_;

        refactor();
        result.x = VectorXd::Zero(cols_);
        for (Index i = 0; i < rows_; i++) {
            auto j = basis_[static_cast<size_t>(i)];
            if (j < cols_) {
                result.x[j] = std::max(0.0, xb_[i]);
            }
        }
        VectorXd cb(rows_);
        for (Index i = 0; i < rows_; i++) {
            cb[i] = phase2[basis_[static_cast<size_t>(i)]];
        }
        VectorXd y = binv_.transpose() * cb;
        result.dual = row_sign_.cwiseProduct(y);
        result.objective = c.dot(result.x);
        // Residuals against the caller's data.
        MatrixXd a = ext_.leftCols(cols_);
        VectorXd b = rhs_;
        for (Index i = 0; i < rows_; i++) {
            a.row(i) *= row_sign_[i];
            b[i] *= row_sign_[i];
        }
        result.primal_residual = (a * result.x - b).lpNorm<Eigen::Infinity>();
        VectorXd reduced = c - a.transpose() * result.dual;
        result.dual_infeasibility = std::max(0.0, -reduced.minCoeff());
        result.duality_gap = std::abs(result.objective - b.dot(result.dual));
        return result;
    }

   private:
    void refactor() {
        MatrixXd basis_matrix(rows_, rows_);
        for (Index i = 0; i < rows_; i++) {
            basis_matrix.col(i) = ext_.col(basis_[static_cast<size_t>(i)]);
        }
        Eigen::PartialPivLU<MatrixXd> lu(basis_matrix);
        binv_ = lu.inverse();
        xb_ = binv_ * rhs_;
        since_refactor_ = 0;
    }

    void pivot(Index leave_row, Index enter_col, const VectorXd &u) {
        double step = xb_[leave_row] / u[leave_row];
        xb_ -= step * u;
        xb_[leave_row] = step;
        binv_.row(leave_row) /= u[leave_row];
        for (Index i = 0; i < rows_; i++) {
            if (i != leave_row && u[i] != 0.0) {
                binv_.row(i) -= u[i] * binv_.row(leave_row);
            }
        }
        position_[static_cast<size_t>(basis_[static_cast<size_t>(leave_row)])] = -1;
        basis_[static_cast<size_t>(leave_row)] = enter_col;
        position_[static_cast<size_t>(enter_col)] = leave_row;
        iterations_++;
        since_refactor_++;
    }

    LpStatus run(const VectorXd &cost, bool allow_artificial) {
        int degenerate_run = 0;
        Index allowed = allow_artificial ? cols_ + rows_ : cols_;
        VectorXd cb(rows_);
        for (;;) {
            if (iterations_ >= options_.max_iterations) {
                return LpStatus::IterationLimit;
            }
            if (since_refactor_ >= options_.refactor_interval) {
                refactor();
            }
            for (Index i = 0; i < rows_; i++) {
                cb[i] = cost[basis_[static_cast<size_t>(i)]];
            }
            VectorXd y = binv_.transpose() * cb;
            VectorXd reduced = cost - sparse_.transpose() * y;

            bool bland = degenerate_run > kDegenerateRunBeforeBland;
            Index enter = -1;
            double best = -options_.optimality_tolerance;
            for (Index j = 0; j < allowed; j++) {
                if (position_[static_cast<size_t>(j)] >= 0) {
                    continue;
                }
                if (reduced[j] < best) {
                    enter = j;
                    if (bland) {
                        break;
                    }
                    best = reduced[j];
                }
            }
            if (enter < 0) {
                return LpStatus::Optimal;
            }

            VectorXd u = binv_ * ext_.col(enter);
            Index leave = -1;
            double min_ratio = std::numeric_limits<double>::infinity();
            for (Index i = 0; i < rows_; i++) {
                if (u[i] <= options_.pivot_tolerance) {
                    continue;
                }
                double ratio = std::max(xb_[i], 0.0) / u[i];
                if (ratio < min_ratio - 1e-12) {
                    min_ratio = ratio;
                    leave = i;
                } else if (ratio <= min_ratio + 1e-12 && leave >= 0) {
                    bool better = bland ? basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)]
                                        : u[i] > u[leave];
                    if (better) {
                        min_ratio = std::min(min_ratio, ratio);
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                return LpStatus::Unbounded;
            }
            degenerate_run = min_ratio < 1e-12 ? degenerate_run + 1 : 0;
            // Clamp so the leaving variable lands exactly at zero.
            xb_[leave] = std::max(xb_[leave], 0.0);
            pivot(leave, enter, u);
        }
    }

    // Restores the caller's right-hand side and repairs primal feasibility of
    // the (still dual feasible) basis with dual simplex pivots.
    bool remove_perturbation(const VectorXd &cost) {
        rhs_ = original_rhs_;
        refactor();
        double tol = options_.feasibility_tolerance * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>());
        VectorXd cb(rows_);
        for (int guard = 0; guard < options_.max_iterations; guard++) {
            if (since_refactor_ >= options_.refactor_interval) {
                refactor();
            }
            Index r = -1;
            double worst = -tol;
            for (Index i = 0; i < rows_; i++) {
                if (basis_[static_cast<size_t>(i)] >= cols_ && std::abs(xb_[i]) > tol) {
                    return false;
                }
                if (xb_[i] < worst) {
                    worst = xb_[i];
                    r = i;
                }
            }
            if (r < 0) {
                return true;
            }
            for (Index i = 0; i < rows_; i++) {
                cb[i] = cost[basis_[static_cast<size_t>(i)]];
            }
            VectorXd y = binv_.transpose() * cb;
            VectorXd alpha = sparse_.transpose() * binv_.row(r).transpose();
            Index enter = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Index j = 0; j < cols_; j++) {
                if (position_[static_cast<size_t>(j)] >= 0 || alpha[j] >= -options_.pivot_tolerance) {
                    continue;
                }
                double d = std::max(0.0, cost[j] - sparse_.col(j).dot(y));
                double ratio = d / -alpha[j];
                if (ratio < best) {
                    best = ratio;
                    enter = j;
                }
            }
            if (enter < 0) {
                return false;
            }
            VectorXd u = binv_ * ext_.col(enter);
            pivot(r, enter, u);
        }
        return false;
    }

    void drive_out_artificials() {
        for (Index i = 0; i < rows_; i++) {
            if (basis_[static_cast<size_t>(i)] < cols_) {
                continue;
            }
            VectorXd row = sparse_.transpose() * binv_.row(i).transpose();
            Index best = -1;
            double best_abs = 1e-9;
            for (Index j = 0; j < cols_; j++) {
                if (position_[static_cast<size_t>(j)] < 0 && std::abs(row[j]) > best_abs) {
                    best = j;
                    best_abs = std::abs(row[j]);
                }
            }
            if (best >= 0) {
                VectorXd u = binv_ * ext_.col(best);
                pivot(i, best, u);
            }
        }
    }

    SimplexOptions options_;
    Index rows_;
    Index cols_;
    VectorXd row_sign_;
    MatrixXd ext_;
    Eigen::SparseMatrix<double> sparse_;
    VectorXd rhs_;
    VectorXd original_rhs_;
    std::vector<Index> basis_;
    std::vector<Index> position_;
    MatrixXd binv_;
    VectorXd xb_;
    int iterations_ = 0;
    int since_refactor_ = 0;
    bool warm_ = false;
};

}  // namespace

const char *lp_status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal:
            return "optimal";
        case LpStatus::Infeasible:
            return "infeasible";
        case LpStatus::Unbounded:
            return "unbounded";
        case LpStatus::IterationLimit:
            return "iteration_limit";
    }
    return "?";
}

LpResult solve_standard_form(const MatrixXd &a, const VectorXd &b, const VectorXd &c, const SimplexOptions &options,
                             std::span<const Index> initial_basis) {
    if (a.rows() != b.size() || a.cols() != c.size()) {
        throw std::invalid_argument("LP dimensions do not agree");
    }
    if (a.rows() == 0) {
        throw std::invalid_argument("LP has no constraints");
    }
    RevisedSimplex solver(a, b, options);
    if (!initial_basis.empty()) {
        solver.try_basis(initial_basis);
    }
    auto r = solver.solve(c);
    if (options.rhs_perturbation > 0 && r.status != LpStatus::Optimal && r.status != LpStatus::Unbounded) {
        // Infeasible or stuck after perturbation: settle it on the exact data.
        SimplexOptions exact = options;
        exact.rhs_perturbation = 0;
        RevisedSimplex fallback(a, b, exact);
        auto f = fallback.solve(c);
        f.iterations += r.iterations;
        return f;
    }
    return r;
}

}  // namespace pshuf
