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

#ifndef PAULI_SHUFFLE_ORACLE_H
#define PAULI_SHUFFLE_ORACLE_H

#include <span>
#include <vector>

#include "pauli_shuffle/bloch.h"
#include "pauli_shuffle/channel_spec.h"
#include "pauli_shuffle/circuit.h"

namespace pshuf {

/// Exact density matrix of a register (at most kMaxDenseQubits qubits).
struct DenseState {
    size_t num_qubits = 0;
    Eigen::MatrixXcd matrix;

    /// Product of single-qubit states; factor q acts on qubit q.
    static DenseState product(std::span<const BlochVector> qubits);
    static DenseState from_operator(const DenseOperator &op);

    /// Throws unless the matrix is Hermitian, has unit trace, and no
    /// eigenvalue below -1e-10.
    void validate() const;
    DenseOperator as_operator() const {
        return DenseOperator(num_qubits, matrix);
    }
};

/// Applies the channel's Kraus set to `targets`, resizing the register per the
/// Placement rule. The result is re-symmetrized.
DenseState apply_channel_dense(const DenseState &state, const ChannelSpec &spec, std::span<const size_t> targets);

/// Same, from an explicit Kraus list.
DenseState apply_kraus_dense(
    const DenseState &state, std::span<const Eigen::MatrixXcd> kraus, size_t in_qubits, size_t out_qubits,
    std::span<const size_t> targets);

/// Tr(E rho).
double expectation(const DenseState &state, const DenseOperator &observable);

/// (identity on n reference qubits) x Lambda applied to n Bell pairs
/// (|00> + |11>)/sqrt(2). Reference qubit a pairs with channel input a.
DenseState choi_state(const ChannelSpec &spec);

/// Runs every operation of the circuit on its initial product state.
DenseState simulate_dense(const Circuit &circuit);

/// Tr(E Lambda_m(... Lambda_1(rho) ...)).
double exact_value(const Circuit &circuit);

}  // namespace pshuf

#endif
