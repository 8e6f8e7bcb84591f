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

#include "pauli_shuffle/bloch.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <string>

namespace pshuf {

namespace {

struct PauliMasks {
    uint64_t x = 0;
    uint64_t z = 0;
    int num_y = 0;
};

PauliMasks masks_of(uint64_t index, size_t k) {
    PauliMasks m;
    for (size_t q = 0; q < k; q++) {
        auto l = digit(index, q);
        if (l == Letter::X || l == Letter::Y) {
            m.x |= uint64_t{1} << q;
        }
        if (l == Letter::Z || l == Letter::Y) {
            m.z |= uint64_t{1} << q;
        }
        m.num_y += l == Letter::Y;
    }
    return m;
}

cdouble i_power(int p) {
    switch (p & 3) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

void check_dense_width(size_t k) {
    if (k > kMaxDenseQubits) {
        throw std::invalid_argument("dense operators are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

DenseOperator::DenseOperator(size_t k, Eigen::MatrixXcd m) : num_qubits(k), matrix(std::move(m)) {
    check_dense_width(k);
    auto dim = Eigen::Index{1} << k;
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw std::invalid_argument("dense operator shape does not match qubit count");
    }
}

DenseOperator DenseOperator::zero(size_t k) {
    auto dim = Eigen::Index{1} << k;
    return DenseOperator(k, Eigen::MatrixXcd::Zero(dim, dim));
}

DenseOperator DenseOperator::identity(size_t k) {
    auto dim = Eigen::Index{1} << k;
    return DenseOperator(k, Eigen::MatrixXcd::Identity(dim, dim));
}

DenseOperator DenseOperator::projector(const Eigen::VectorXcd &psi) {
    auto dim = static_cast<uint64_t>(psi.size());
    if (!std::has_single_bit(dim)) {
        throw std::invalid_argument("state vector dimension must be a power of two");
    }
    return DenseOperator(std::countr_zero(dim), psi * psi.adjoint());
}

bool DenseOperator::is_hermitian(double tol) const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

BlochVector::BlochVector(size_t k, Eigen::VectorXd c) : num_qubits(k), coeffs(std::move(c)) {
    if (static_cast<uint64_t>(coeffs.size()) != pow4(k)) {
        throw std::invalid_argument("Bloch vector length must be 4^k");
    }
}

BlochVector BlochVector::zero(size_t k) {
    return BlochVector(k, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pow4(k))));
}

BlochVector BlochVector::maximally_mixed(size_t k) {
    auto v = zero(k);
    v.coeffs[0] = 1.0 / static_cast<double>(uint64_t{1} << k);
    return v;
}

double BlochVector::purity() const {
    return static_cast<double>(uint64_t{1} << num_qubits) * coeffs.squaredNorm();
}

Eigen::MatrixXcd pauli_matrix(const PauliString &p) {
    auto k = p.num_qubits();
    check_dense_width(k);
    auto m = masks_of(p.index(), k);
    auto dim = uint64_t{1} << k;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    auto base = i_power(m.num_y) * static_cast<double>(p.sign());
    for (uint64_t b = 0; b < dim; b++) {
        double s = (std::popcount(b & m.z) & 1) ? -1.0 : 1.0;
        out(static_cast<Eigen::Index>(b ^ m.x), static_cast<Eigen::Index>(b)) = base * s;
    }
    return out;
}

cdouble pauli_trace(uint64_t index, const Eigen::MatrixXcd &a, size_t num_qubits) {
    auto m = masks_of(index, num_qubits);
    auto dim = uint64_t{1} << num_qubits;
    cdouble acc = 0;
    for (uint64_t b = 0; b < dim; b++) {
        auto v = a(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ m.x));
        acc += (std::popcount(b & m.z) & 1) ? -v : v;
    }
    return acc * i_power(m.num_y);
}

BlochVector bloch_from_dense(const DenseOperator &op) {
    auto k = op.num_qubits;
    if (k > kMaxBlochQubits) {
        throw std::invalid_argument("Bloch vectors are limited to " + std::to_string(kMaxBlochQubits) + " qubits");
    }
    if (!op.is_hermitian()) {
        throw std::invalid_argument("operator is not Hermitian");
    }
    auto n = pow4(k);
    auto scale = 1.0 / static_cast<double>(uint64_t{1} << k);
    Eigen::VectorXd c(static_cast<Eigen::Index>(n));
    for (uint64_t i = 0; i < n; i++) {
        c[static_cast<Eigen::Index>(i)] = pauli_trace(i, op.matrix, k).real() * scale;
    }
    return BlochVector(k, std::move(c));
}

DenseOperator dense_from_bloch(const BlochVector &v) {
    auto k = v.num_qubits;
    check_dense_width(k);
    auto dim = uint64_t{1} << k;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (uint64_t i = 0; i < pow4(k); i++) {
        double c = v[i];
        if (c == 0) {
            continue;
        }
        auto m = masks_of(i, k);
        auto base = i_power(m.num_y) * c;
        for (uint64_t b = 0; b < dim; b++) {
            double s = (std::popcount(b & m.z) & 1) ? -1.0 : 1.0;
            out(static_cast<Eigen::Index>(b ^ m.x), static_cast<Eigen::Index>(b)) += base * s;
        }
    }
    return DenseOperator(k, std::move(out));
}

bool is_named_qubit_state(std::string_view name) {
    static const char *names[] = {"zero", "one", "plus", "minus", "i_plus", "i_minus", "a", "maximally_mixed"};
    auto n = lower(name);
    return std::any_of(std::begin(names), std::end(names), [&](const char *s) { return n == s; });
}

BlochVector named_qubit_state(std::string_view name) {
    auto n = lower(name);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
    c[0] = 0.5;
    if (n == "zero") {
        c[3] = 0.5;
    } else if (n == "one") {
        c[3] = -0.5;
    } else if (n == "plus") {
        c[1] = 0.5;
    } else if (n == "minus") {
        c[1] = -0.5;
    } else if (n == "i_plus") {
        c[2] = 0.5;
    } else if (n == "i_minus") {
        c[2] = -0.5;
    } else if (n == "a") {
        // T|+>: Bloch direction (X + Y)/sqrt(2).
        c[1] = 0.5 * M_SQRT1_2;
        c[2] = 0.5 * M_SQRT1_2;
    } else if (n == "maximally_mixed") {
    } else {
        throw std::invalid_argument("unknown qubit state '" + std::string(name) + "'");
    }
    return BlochVector(1, std::move(c));
}

BlochVector tensor(const BlochVector &low, const BlochVector &high) {
    auto k = low.num_qubits + high.num_qubits;
    auto shift = pow4(low.num_qubits);
    Eigen::VectorXd c(static_cast<Eigen::Index>(pow4(k)));
    for (uint64_t h = 0; h < pow4(high.num_qubits); h++) {
        for (uint64_t l = 0; l < shift; l++) {
            c[static_cast<Eigen::Index>(h * shift + l)] = low[l] * high[h];
        }
    }
    return BlochVector(k, std::move(c));
}

}  // namespace pshuf
