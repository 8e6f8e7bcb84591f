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

#include "pauli_shuffle/oracle.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pauli_shuffle/placement.h"

namespace pshuf {

DenseState DenseState::product(std::span<const BlochVector> qubits) {
    auto k = qubits.size();
    if (k > kMaxDenseQubits) {
        throw std::invalid_argument("dense state limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    std::vector<Eigen::MatrixXcd> factors;
    for (const auto &q : qubits) {
        if (q.num_qubits != 1) {
            throw std::invalid_argument("product state factors must be single-qubit");
        }
        factors.push_back(dense_from_bloch(q).matrix);
    }
    auto dim = Eigen::Index{1} << k;
    DenseState s{k, Eigen::MatrixXcd(dim, dim)};
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            cdouble v = 1;
            for (size_t q = 0; q < k && v != 0.0; q++) {
                v *= factors[q]((r >> q) & 1, (c >> q) & 1);
            }
            s.matrix(r, c) = v;
        }
    }
    return s;
}

DenseState DenseState::from_operator(const DenseOperator &op) {
    DenseState s{op.num_qubits, op.matrix};
    s.validate();
    return s;
}

void DenseState::validate() const {
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(matrix.trace() - cdouble(1)) > 1e-10) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(matrix, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

DenseState apply_kraus_dense(
    const DenseState &state, std::span<const Eigen::MatrixXcd> kraus, size_t in_qubits, size_t out_qubits,
    std::span<const size_t> targets) {
    Placement place(state.num_qubits, std::vector<size_t>(targets.begin(), targets.end()), in_qubits, out_qubits);
    auto w_out = place.width_after();
    if (w_out > kMaxDenseQubits) {
        throw std::invalid_argument("register would exceed " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    auto dim_in = Eigen::Index{1} << state.num_qubits;
    auto dim_out = Eigen::Index{1} << w_out;
    auto local_out = Eigen::Index{1} << out_qubits;

    std::vector<uint64_t> carried(static_cast<size_t>(dim_in));
    std::vector<Eigen::Index> local(static_cast<size_t>(dim_in));
    for (Eigen::Index b = 0; b < dim_in; b++) {
        carried[b] = place.carried_bits(static_cast<uint64_t>(b));
        local[b] = static_cast<Eigen::Index>(place.local_input_bits(static_cast<uint64_t>(b)));
    }
    std::vector<uint64_t> scatter(static_cast<size_t>(local_out));
    for (Eigen::Index o = 0; o < local_out; o++) {
        scatter[o] = place.scatter_output_bits(static_cast<uint64_t>(o));
    }

    Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(dim_out, dim_out);
    for (const auto &k : kraus) {
        // left = (K x I) rho, rows in the output register.
        Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(dim_out, dim_in);
        for (Eigen::Index b = 0; b < dim_in; b++) {
            for (Eigen::Index o = 0; o < local_out; o++) {
                auto kv = k(o, local[b]);
                if (kv != 0.0) {
                    left.row(static_cast<Eigen::Index>(carried[b] | scatter[o])) += kv * state.matrix.row(b);
                }
            }
        }
        for (Eigen::Index b = 0; b < dim_in; b++) {
            for (Eigen::Index o = 0; o < local_out; o++) {
                auto kv = std::conj(k(o, local[b]));
                if (kv != 0.0) {
                    result.col(static_cast<Eigen::Index>(carried[b] | scatter[o])) += kv * left.col(b);
                }
            }
        }
    }
    Eigen::MatrixXcd sym = 0.5 * (result + result.adjoint());
    return DenseState{w_out, std::move(sym)};
}

DenseState apply_channel_dense(const DenseState &state, const ChannelSpec &spec, std::span<const size_t> targets) {
    auto ops = kraus_operators(spec);
    return apply_kraus_dense(state, ops, spec.in_qubits(), spec.out_qubits(), targets);
}

double expectation(const DenseState &state, const DenseOperator &observable) {
    if (observable.num_qubits != state.num_qubits) {
        throw std::invalid_argument(
            "observable acts on " + std::to_string(observable.num_qubits) + " qubits but the register has " +
            std::to_string(state.num_qubits));
    }
    // Tr(E rho) = sum_{r,c} E(r,c) rho(c,r).
    return (observable.matrix.transpose().cwiseProduct(state.matrix)).sum().real();
}

DenseState choi_state(const ChannelSpec &spec) {
    auto n = spec.in_qubits();
    if (n > kMaxChannelQubits || spec.out_qubits() > kMaxChannelQubits) {
        throw std::invalid_argument("choi_state supports channels on at most " + std::to_string(kMaxChannelQubits) + " qubits");
    }
    auto dim = Eigen::Index{1} << (2 * n);
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(dim);
    auto half = Eigen::Index{1} << n;
    for (Eigen::Index a = 0; a < half; a++) {
        bell[a | (a << n)] = 1.0;
    }
    bell /= std::sqrt(static_cast<double>(half));
    DenseState s{2 * n, bell * bell.adjoint()};
    std::vector<size_t> targets(n);
    std::iota(targets.begin(), targets.end(), n);
    return apply_channel_dense(s, spec, targets);
}

DenseState simulate_dense(const Circuit &circuit) {
    circuit.placements();
    auto initial = circuit.initial_bloch();
    auto state = DenseState::product(initial);
    for (const auto &op : circuit.ops) {
        state = apply_channel_dense(state, op.channel, op.targets);
    }
    return state;
}

double exact_value(const Circuit &circuit) {
    auto state = simulate_dense(circuit);
    return expectation(state, circuit.observable.dense(state.num_qubits));
}

}  // namespace pshuf
