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

#ifndef PAULI_SHUFFLE_TRANSFER_MATRIX_H
#define PAULI_SHUFFLE_TRANSFER_MATRIX_H

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "pauli_shuffle/bloch.h"
#include "pauli_shuffle/placement.h"

namespace pshuf {

inline constexpr size_t kMaxChannelQubits = 3;

/// A real matrix whose column i is the Bloch vector of the image of the
/// input Pauli i, together with per-column sampling tables.
///
/// Columns are indexed by Paulis on `from_qubits` and rows by Paulis on
/// `to_qubits`. Entries smaller than 1e-15 in magnitude are left out of the
/// sampling tables.
class PauliMap {
   public:
    struct Entry {
        uint32_t row;
        double value;
    };
    struct Column {
        double l1 = 0;
        std::vector<Entry> entries;
        /// Running sum of |value| / l1, last element 1.
        std::vector<double> cumulative;
    };

    size_t from_qubits() const {
        return from_qubits_;
    }
    size_t to_qubits() const {
        return to_qubits_;
    }
    const Eigen::MatrixXd &entries() const {
        return entries_;
    }
    double operator()(uint64_t row, uint64_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
    const Column &column(uint64_t col) const {
        return columns_[col];
    }

    /// Picks an output Pauli from column `col` with probability |entry| / l1.
    /// `u` is uniform in [0, 1). Returns nullptr for an all-zero column.
    const Entry *pick(uint64_t col, double u) const;

    /// Largest column L1 norm, i.e. max_i D(image of sigma_i).
    double max_column_l1() const;
    /// Mean column L1 norm over all 4^from_qubits columns.
    double mean_column_l1() const;
    /// Every column has exactly one nonzero entry, equal to +-1.
    bool is_signed_permutation() const;

   protected:
    PauliMap() = default;
    PauliMap(size_t from, size_t to, Eigen::MatrixXd entries);

   private:
    size_t from_qubits_ = 0;
    size_t to_qubits_ = 0;
    Eigen::MatrixXd entries_;
    std::vector<Column> columns_;
};

/// Pauli transfer matrix of an n -> m qubit channel:
/// entries(j, i) = Tr(sigma_j Lambda(sigma_i)) / 2^m.
class TransferMatrix : public PauliMap {
   public:
    TransferMatrix() = default;
    TransferMatrix(size_t in_qubits, size_t out_qubits, Eigen::MatrixXd entries);

    static TransferMatrix identity(size_t k);

    size_t in_qubits() const {
        return from_qubits();
    }
    size_t out_qubits() const {
        return to_qubits();
    }
    /// Bloch vector of Lambda(sigma_i).
    BlochVector image(uint64_t i) const;
    /// Lambda applied to an operator given by its Bloch vector.
    BlochVector apply(const BlochVector &v) const;
    bool is_trace_preserving(double tol = 1e-10) const;
};

/// Heisenberg-picture dual of a transfer matrix. Maps observables on the
/// channel's m output qubits to observables on its n input qubits so that
/// Tr(rho * adjoint(E)) = Tr(Lambda(rho) * E).
class AdjointTransferMatrix : public PauliMap {
   public:
    AdjointTransferMatrix() = default;
    AdjointTransferMatrix(size_t in_qubits, size_t out_qubits, Eigen::MatrixXd entries);

    /// Qubit count of the channel's input (the side the adjoint maps onto).
    size_t channel_in_qubits() const {
        return to_qubits();
    }
    size_t channel_out_qubits() const {
        return from_qubits();
    }
    BlochVector apply(const BlochVector &v) const;
};

/// Transfer matrix of sum_a K_a (.) K_a^dagger for 2^m x 2^n Kraus operators.
/// With `require_trace_preserving`, rejects sets with sum K^dag K != I (1e-10).
TransferMatrix ptm_from_kraus(
    std::span<const Eigen::MatrixXcd> kraus, size_t in_qubits, size_t out_qubits, bool require_trace_preserving = true);

/// second o first.
TransferMatrix compose(const TransferMatrix &second, const TransferMatrix &first);

AdjointTransferMatrix adjoint(const TransferMatrix &tm);

/// max_i D(Lambda(sigma_i)).
double channel_cost(const TransferMatrix &tm);
double channel_cost(const AdjointTransferMatrix &tm);

/// D of the normalized Choi state, the average of D(Lambda(sigma_i)) over all
/// 4^n input Paulis.
double choi_cost(const TransferMatrix &tm);

/// Lifts a channel onto a wider local register following the Placement rule;
/// qubits outside `targets` pass through unchanged.
TransferMatrix embed_channel(const TransferMatrix &tm, const Placement &placement);

/// Reorders the input qubits: new input qubit a is old input qubit order[a].
TransferMatrix permute_inputs(const TransferMatrix &tm, std::span<const size_t> order);

}  // namespace pshuf

#endif
