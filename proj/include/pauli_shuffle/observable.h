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

#ifndef PAULI_SHUFFLE_OBSERVABLE_H
#define PAULI_SHUFFLE_OBSERVABLE_H

#include <string>
#include <vector>

#include "pauli_shuffle/bloch.h"
#include "pauli_shuffle/pauli.h"
#include "pauli_shuffle/rng.h"

namespace pshuf {

enum class ObservableKind { Product, BasisProjector, Pauli, DenseLocal };

const char *observable_kind_name(ObservableKind k);

/// Tensor factor of an observable on a few register positions.
struct ObservableBlock {
    std::vector<size_t> support;
    Eigen::MatrixXcd matrix;
    /// traces[i] = Tr(E_block sigma_i) over local Paulis.
    Eigen::VectorXd traces;
};

/// Observable E measured on the final register. Qubits outside the support
/// carry the identity.
class Observable {
   public:
    Observable() = default;

    /// One 2x2 Hermitian factor per support qubit. `names` may hold the
    /// state name each factor was built from (empty for custom matrices).
    static Observable product(
        std::vector<size_t> support, std::vector<Eigen::MatrixXcd> factors, std::vector<std::string> names = {});
    /// |bits><bits| on `support`.
    static Observable basis_projector(std::vector<size_t> support, std::vector<int> bits);
    /// Pauli string on the whole register.
    static Observable pauli(PauliString p);
    /// Hermitian matrix on `support` (little-endian local order, <= 8 qubits).
    static Observable dense_local(std::vector<size_t> support, Eigen::MatrixXcd matrix);

    ObservableKind kind() const {
        return kind_;
    }
    const std::vector<size_t> &support() const {
        return support_;
    }
    const std::vector<ObservableBlock> &blocks() const {
        return blocks_;
    }
    const std::vector<std::string> &factor_names() const {
        return factor_names_;
    }
    const std::vector<int> &bits() const {
        return bits_;
    }
    const PauliString &pauli_string() const {
        return pauli_;
    }

    /// Highest register position used, plus one.
    size_t min_width() const;

    /// Tr(E sigma_f) for a register-wide Pauli (sign ignored).
    double trace_with(const PauliString &sigma) const;
    /// max_f |Tr(E sigma_f)| on a register of `width` qubits.
    double max_abs_trace(size_t width) const;
    /// D(E) = sum_i |Tr(sigma_i E)| / 2^width; identity padding contributes 1.
    double d_measure() const;

    /// Draws a register-wide Pauli with probability |e_j| / D(E) and returns it
    /// with weight sgn(e_j) D(E).
    std::pair<PauliString, double> sample(size_t width, PhiloxStream &rng) const;

    /// Full 2^width x 2^width matrix.
    DenseOperator dense(size_t width) const;

   private:
    ObservableKind kind_ = ObservableKind::Product;
    std::vector<size_t> support_;
    std::vector<ObservableBlock> blocks_;
    std::vector<std::string> factor_names_;
    std::vector<int> bits_;
    PauliString pauli_;
};

/// Projector onto a named single-qubit state (zero, one, plus, minus, i_plus,
/// i_minus, A) or the identity ("identity").
Eigen::MatrixXcd named_qubit_observable(const std::string &name);

}  // namespace pshuf

#endif
