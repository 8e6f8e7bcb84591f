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

#include "oracles.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pauli_shuffle/channel_spec.h"

namespace pshuf_test {

using cd = std::complex<double>;

MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); r++) {
        for (Eigen::Index c = 0; c < a.cols(); c++) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

MatrixXcd letter_matrix(char c) {
    MatrixXcd m(2, 2);
    switch (c) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument("bad letter");
    }
    return m;
}

MatrixXcd pauli_text_matrix(const std::string &text) {
    MatrixXcd m = MatrixXcd::Identity(1, 1);
    for (char c : text) {
        m = kron(letter_matrix(c), m);
    }
    return m;
}

MatrixXcd pauli_index_matrix(uint64_t index, size_t n) {
    static const char letters[] = "IXYZ";
    std::string text;
    for (size_t q = 0; q < n; q++) {
        text += letters[(index >> (2 * q)) & 3];
    }
    return pauli_text_matrix(text);
}

VectorXd bloch_of(const MatrixXcd &rho, size_t n) {
    uint64_t count = uint64_t{1} << (2 * n);
    VectorXd out(static_cast<Eigen::Index>(count));
    double dim = static_cast<double>(uint64_t{1} << n);
    for (uint64_t i = 0; i < count; i++) {
        out[static_cast<Eigen::Index>(i)] = (pauli_index_matrix(i, n) * rho).trace().real() / dim;
    }
    return out;
}

MatrixXcd dense_of(const VectorXd &coeffs, size_t n) {
    auto dim = Eigen::Index{1} << n;
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < coeffs.size(); i++) {
        out += coeffs[i] * pauli_index_matrix(static_cast<uint64_t>(i), n);
    }
    return out;
}

MatrixXd ptm_of(const std::vector<MatrixXcd> &kraus, size_t in, size_t out) {
    auto cols = Eigen::Index{1} << (2 * in);
    auto rows = Eigen::Index{1} << (2 * out);
    MatrixXd m(rows, cols);
    double dim_out = static_cast<double>(uint64_t{1} << out);
    for (Eigen::Index i = 0; i < cols; i++) {
        MatrixXcd sigma = pauli_index_matrix(static_cast<uint64_t>(i), in);
        MatrixXcd image = MatrixXcd::Zero(Eigen::Index{1} << out, Eigen::Index{1} << out);
        for (const auto &k : kraus) {
            image += k * sigma * k.adjoint();
        }
        for (Eigen::Index j = 0; j < rows; j++) {
            m(j, i) = (pauli_index_matrix(static_cast<uint64_t>(j), out) * image).trace().real() / dim_out;
        }
    }
    return m;
}

MatrixXcd embed_kraus(const MatrixXcd &k, size_t in, size_t out, const std::vector<size_t> &targets, size_t width) {
    size_t width_after = width + out - in;
    // new_pos[q]: position of old qubit q after the channel, or -1.
    std::vector<int> new_pos(width, -1);
    std::vector<size_t> out_pos(out);
    std::vector<bool> is_target(width, false);
    for (auto t : targets) {
        is_target[t] = true;
    }
    if (out <= in) {
        std::vector<bool> discarded(width, false);
        for (size_t a = 0; a < in - out; a++) {
            discarded[targets[a]] = true;
        }
        int next = 0;
        for (size_t q = 0; q < width; q++) {
            if (!discarded[q]) {
                new_pos[q] = next++;
            }
        }
        for (size_t j = 0; j < out; j++) {
            out_pos[j] = static_cast<size_t>(new_pos[targets[in - out + j]]);
        }
    } else {
        for (size_t q = 0; q < width; q++) {
            new_pos[q] = static_cast<int>(q);
        }
        for (size_t j = 0; j < out; j++) {
            out_pos[j] = j < in ? targets[j] : width + (j - in);
        }
    }
    auto rows = Eigen::Index{1} << width_after;
    auto cols = Eigen::Index{1} << width;
    MatrixXcd full = MatrixXcd::Zero(rows, cols);
    for (uint64_t b = 0; b < (uint64_t{1} << width); b++) {
        uint64_t local_in = 0;
        for (size_t a = 0; a < in; a++) {
            local_in |= ((b >> targets[a]) & 1) << a;
        }
        uint64_t carried = 0;
        for (size_t q = 0; q < width; q++) {
            if (!is_target[q] && ((b >> q) & 1)) {
                carried |= uint64_t{1} << new_pos[q];
            }
        }
        for (uint64_t lo = 0; lo < (uint64_t{1} << out); lo++) {
            cd amp = k(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(local_in));
            if (amp == cd(0)) {
                continue;
            }
            uint64_t ob = carried;
            for (size_t j = 0; j < out; j++) {
                ob |= ((lo >> j) & 1) << out_pos[j];
            }
            full(static_cast<Eigen::Index>(ob), static_cast<Eigen::Index>(b)) += amp;
        }
    }
    return full;
}

MatrixXcd apply_kraus(const MatrixXcd &rho, const std::vector<MatrixXcd> &kraus, size_t in, size_t out,
                      const std::vector<size_t> &targets, size_t width) {
    MatrixXcd result;
    for (const auto &k : kraus) {
        MatrixXcd full = embed_kraus(k, in, out, targets, width);
        MatrixXcd term = full * rho * full.adjoint();
        result = result.size() == 0 ? term : MatrixXcd(result + term);
    }
    return result;
}

double circuit_value(const pshuf::Circuit &circuit) {
    MatrixXcd rho = MatrixXcd::Identity(1, 1);
    for (size_t q = 0; q < circuit.num_qubits; q++) {
        rho = kron(dense_of(circuit.initial[q].bloch.coeffs, 1), rho);
    }
    size_t width = circuit.num_qubits;
    for (const auto &op : circuit.ops) {
        auto kraus = pshuf::kraus_operators(op.channel);
        auto in = op.channel.in_qubits();
        auto out = op.channel.out_qubits();
        rho = apply_kraus(rho, kraus, in, out, op.targets, width);
        width = width + out - in;
    }
    MatrixXcd e = circuit.observable.dense(width).matrix;
    return (e * rho).trace().real();
}

MatrixXcd t_gate() {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = std::polar(1.0, std::numbers::pi / 4);
    return m;
}

MatrixXcd s_gate() {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = cd(0, 1);
    return m;
}

MatrixXcd h_gate() {
    MatrixXcd m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

MatrixXcd cnot_gate() {
    MatrixXcd m = MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    m(3, 1) = 1;
    m(2, 2) = 1;
    m(1, 3) = 1;
    return m;
}

MatrixXcd a_state() {
    Eigen::VectorXcd v(2);
    v << 1, std::polar(1.0, std::numbers::pi / 4);
    v /= std::sqrt(2.0);
    return v * v.adjoint();
}

std::vector<pshuf::ChannelSpec> builtin_channels() {
    using pshuf::ChannelSpec;
    std::vector<ChannelSpec> out;
    for (const char *g : {"i", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "cnot", "cz", "swap"}) {
        out.push_back(ChannelSpec::unitary(g));
    }
    out.push_back(ChannelSpec::rz(0.3));
    out.push_back(ChannelSpec::depolarizing(0.1));
    out.push_back(ChannelSpec::depolarizing(1.0));
    out.push_back(ChannelSpec::dephasing(0.25));
    out.push_back(ChannelSpec::amplitude_damping(0.3));
    out.push_back(ChannelSpec::trace_out(1));
    out.push_back(ChannelSpec::trace_out(2));
    out.push_back(ChannelSpec::append_state(pshuf::named_qubit_state("A")));
    out.push_back(ChannelSpec::append_state(pshuf::BlochVector::maximally_mixed(1)));
    out.push_back(ChannelSpec::gadget());
    out.push_back(ChannelSpec::measure_control("s"));
    out.push_back(ChannelSpec::measure_control("x"));
    // Measure qubit 0, then H or T on qubit 1 depending on the outcome.
    std::vector<MatrixXcd> kraus;
    MatrixXcd fix[2] = {h_gate(), t_gate()};
    for (int b = 0; b < 2; b++) {
        MatrixXcd k = MatrixXcd::Zero(2, 4);
        for (int r = 0; r < 2; r++) {
            for (int d = 0; d < 2; d++) {
                k(r, 2 * d + b) = fix[b](r, d);
            }
        }
        kraus.push_back(k);
    }
    out.push_back(ChannelSpec::from_kraus(kraus));
    return out;
}

MatrixXcd random_density_matrix(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    auto dim = Eigen::Index{1} << n;
    MatrixXcd g(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            g(r, c) = cd(normal(rng), normal(rng));
        }
    }
    MatrixXcd rho = g * g.adjoint();
    return rho / rho.trace().real();
}

}  // namespace pshuf_test
