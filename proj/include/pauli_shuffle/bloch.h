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

#ifndef PAULI_SHUFFLE_BLOCH_H
#define PAULI_SHUFFLE_BLOCH_H

#include <Eigen/Dense>
#include <complex>
#include <string_view>

#include "pauli_shuffle/pauli.h"

namespace pshuf {

using cdouble = std::complex<double>;

inline constexpr size_t kMaxDenseQubits = 10;
inline constexpr size_t kMaxBlochQubits = 8;
inline constexpr double kHermitianTolerance = 1e-12;

/// Hermitian operator on k qubits in the computational basis. Basis index bit q
/// is qubit q.
struct DenseOperator {
    size_t num_qubits = 0;
    Eigen::MatrixXcd matrix;

    DenseOperator() = default;
    DenseOperator(size_t k, Eigen::MatrixXcd m);

    static DenseOperator zero(size_t k);
    static DenseOperator identity(size_t k);
    /// |psi><psi| for a state vector of dimension 2^k.
    static DenseOperator projector(const Eigen::VectorXcd &psi);

    bool is_hermitian(double tol = kHermitianTolerance) const;
};

/// Pauli coefficients of an operator A on k qubits:
/// coeffs[i] = Tr(sigma_i A) / 2^k, so A = sum_i coeffs[i] sigma_i.
struct BlochVector {
    size_t num_qubits = 0;
    Eigen::VectorXd coeffs;

    BlochVector() = default;
    BlochVector(size_t k, Eigen::VectorXd c);

    static BlochVector zero(size_t k);
    /// I / 2^k.
    static BlochVector maximally_mixed(size_t k);

    double operator[](uint64_t i) const {
        return coeffs[static_cast<Eigen::Index>(i)];
    }
    double l1_norm() const {
        return coeffs.lpNorm<1>();
    }
    /// Tr(A^2) = 2^k * sum_i coeffs[i]^2.
    double purity() const;
};

/// Dense matrix of a Pauli string (sign included).
Eigen::MatrixXcd pauli_matrix(const PauliString &p);

/// Tr(sigma_index A) for an index on A's qubit count.
cdouble pauli_trace(uint64_t index, const Eigen::MatrixXcd &a, size_t num_qubits);

BlochVector bloch_from_dense(const DenseOperator &op);
DenseOperator dense_from_bloch(const BlochVector &v);

/// Named single-qubit states: zero, one, plus, minus, i_plus, i_minus, A,
/// maximally_mixed. Case-insensitive.
BlochVector named_qubit_state(std::string_view name);
bool is_named_qubit_state(std::string_view name);

/// Tensor product of Bloch vectors; the first factor occupies the low qubits.
BlochVector tensor(const BlochVector &low, const BlochVector &high);

}  // namespace pshuf

#endif
