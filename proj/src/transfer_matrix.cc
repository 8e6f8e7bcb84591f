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

#include "pauli_shuffle/transfer_matrix.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pshuf {

namespace {

constexpr double kSamplingDropTolerance = 1e-15;

Eigen::Index dim4(size_t k) {
    return static_cast<Eigen::Index>(pow4(k));
}

}  // namespace

PauliMap::PauliMap(size_t from, size_t to, Eigen::MatrixXd entries)
    : from_qubits_(from), to_qubits_(to), entries_(std::move(entries)) {
    if (entries_.rows() != dim4(to) || entries_.cols() != dim4(from)) {
        throw std::invalid_argument(
            "Pauli map entries must be " + std::to_string(pow4(to)) + " x " + std::to_string(pow4(from)));
    }
    columns_.resize(pow4(from));
    for (Eigen::Index c = 0; c < entries_.cols(); c++) {
        auto &col = columns_[static_cast<size_t>(c)];
        for (Eigen::Index r = 0; r < entries_.rows(); r++) {
            double v = entries_(r, c);
            if (std::abs(v) > kSamplingDropTolerance) {
                col.entries.push_back({static_cast<uint32_t>(r), v});
                col.l1 += std::abs(v);
            }
        }
        double run = 0;
        for (const auto &e : col.entries) {
            run += std::abs(e.value);
            col.cumulative.push_back(run / col.l1);
        }
        if (!col.cumulative.empty()) {
            col.cumulative.back() = 1.0;
        }
    }
}

const PauliMap::Entry *PauliMap::pick(uint64_t col, double u) const {
    const auto &c = columns_[col];
    if (c.entries.empty()) {
        return nullptr;
    }
    if (c.entries.size() == 1) {
        return &c.entries[0];
    }
    auto it = std::upper_bound(c.cumulative.begin(), c.cumulative.end(), u);
    auto k = std::min<size_t>(static_cast<size_t>(it - c.cumulative.begin()), c.entries.size() - 1);
    return &c.entries[k];
}

double PauliMap::max_column_l1() const {
    double m = 0;
    for (Eigen::Index c = 0; c < entries_.cols(); c++) {
        m = std::max(m, entries_.col(c).lpNorm<1>());
    }
    return m;
}

double PauliMap::mean_column_l1() const {
    double s = 0;
    for (Eigen::Index c = 0; c < entries_.cols(); c++) {
        s += entries_.col(c).lpNorm<1>();
    }
    return s / static_cast<double>(entries_.cols());
}

bool PauliMap::is_signed_permutation() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const Column &c) {
        return c.entries.size() == 1 && std::abs(c.entries[0].value) == 1.0;
    });
}

TransferMatrix::TransferMatrix(size_t in_qubits, size_t out_qubits, Eigen::MatrixXd entries)
    : PauliMap(in_qubits, out_qubits, std::move(entries)) {
}

TransferMatrix TransferMatrix::identity(size_t k) {
    return TransferMatrix(k, k, Eigen::MatrixXd::Identity(dim4(k), dim4(k)));
}

BlochVector TransferMatrix::image(uint64_t i) const {
    return BlochVector(out_qubits(), entries().col(static_cast<Eigen::Index>(i)));
}

BlochVector TransferMatrix::apply(const BlochVector &v) const {
    if (v.num_qubits != in_qubits()) {
        throw std::invalid_argument("transfer matrix input width mismatch");
    }
    // rho = sum_i c_i sigma_i and Lambda(sigma_i) = sum_j M_ji sigma_j.
    return BlochVector(out_qubits(), entries() * v.coeffs);
}

bool TransferMatrix::is_trace_preserving(double tol) const {
    double expected = std::ldexp(1.0, static_cast<int>(in_qubits()) - static_cast<int>(out_qubits()));
    for (Eigen::Index i = 0; i < entries().cols(); i++) {
        double want = i == 0 ? expected : 0.0;
        if (std::abs(entries()(0, i) - want) > tol) {
            return false;
        }
    }
    return true;
}

AdjointTransferMatrix::AdjointTransferMatrix(size_t in_qubits, size_t out_qubits, Eigen::MatrixXd entries)
    : PauliMap(out_qubits, in_qubits, std::move(entries)) {
}

BlochVector AdjointTransferMatrix::apply(const BlochVector &v) const {
    if (v.num_qubits != channel_out_qubits()) {
        throw std::invalid_argument("adjoint input width mismatch");
    }
    return BlochVector(channel_in_qubits(), entries() * v.coeffs);
}

TransferMatrix ptm_from_kraus(
    std::span<const Eigen::MatrixXcd> kraus, size_t in_qubits, size_t out_qubits, bool require_trace_preserving) {
    if (in_qubits > kMaxChannelQubits || out_qubits > kMaxChannelQubits) {
        throw std::invalid_argument("channels are limited to " + std::to_string(kMaxChannelQubits) + " qubits");
    }
    if (kraus.empty()) {
        throw std::invalid_argument("empty Kraus list");
    }
    auto din = Eigen::Index{1} << in_qubits;
    auto dout = Eigen::Index{1} << out_qubits;
    for (const auto &k : kraus) {
        if (k.rows() != dout || k.cols() != din) {
            throw std::invalid_argument(
                "Kraus operator has shape " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) + ", expected " +
                std::to_string(dout) + "x" + std::to_string(din));
        }
    }
    if (require_trace_preserving) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(din, din);
        for (const auto &k : kraus) {
            sum += k.adjoint() * k;
        }
        double err = (sum - Eigen::MatrixXcd::Identity(din, din)).cwiseAbs().maxCoeff();
        if (err > 1e-10) {
            throw std::invalid_argument("Kraus operators are not complete (deviation " + std::to_string(err) + ")");
        }
    }

    Eigen::MatrixXd entries(dim4(out_qubits), dim4(in_qubits));
    double scale = 1.0 / static_cast<double>(dout);
    for (uint64_t i = 0; i < pow4(in_qubits); i++) {
        Eigen::MatrixXcd sigma = pauli_matrix(PauliString::from_index(i, in_qubits));
        Eigen::MatrixXcd image = Eigen::MatrixXcd::Zero(dout, dout);
        for (const auto &k : kraus) {
            image += k * sigma * k.adjoint();
        }
        for (uint64_t j = 0; j < pow4(out_qubits); j++) {
            entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                pauli_trace(j, image, out_qubits).real() * scale;
        }
    }
    return TransferMatrix(in_qubits, out_qubits, std::move(entries));
}

TransferMatrix compose(const TransferMatrix &second, const TransferMatrix &first) {
    if (first.out_qubits() != second.in_qubits()) {
        throw std::invalid_argument(
            "cannot compose: first channel outputs " + std::to_string(first.out_qubits()) +
            " qubit(s), second expects " + std::to_string(second.in_qubits()));
    }
    return TransferMatrix(first.in_qubits(), second.out_qubits(), second.entries() * first.entries());
}

AdjointTransferMatrix adjoint(const TransferMatrix &tm) {
    // Coefficient of sigma_i in adjoint(sigma_k) is (2^m / 2^n) * M_ki.
    double scale = std::ldexp(1.0, static_cast<int>(tm.out_qubits()) - static_cast<int>(tm.in_qubits()));
    return AdjointTransferMatrix(tm.in_qubits(), tm.out_qubits(), scale * tm.entries().transpose());
}

double channel_cost(const TransferMatrix &tm) {
    return tm.max_column_l1();
}

double channel_cost(const AdjointTransferMatrix &tm) {
    return tm.max_column_l1();
}

double choi_cost(const TransferMatrix &tm) {
    return tm.mean_column_l1();
}

TransferMatrix embed_channel(const TransferMatrix &tm, const Placement &placement) {
    if (placement.in_qubits() != tm.in_qubits() || placement.out_qubits() != tm.out_qubits()) {
        throw std::invalid_argument("placement arity does not match channel");
    }
    auto w_in = placement.width_before();
    auto w_out = placement.width_after();
    if (w_in > kMaxChannelQubits + 1 || w_out > kMaxChannelQubits + 1) {
        throw std::invalid_argument("embedded channel too wide");
    }
    auto targets = placement.targets();
    auto outputs = placement.output_positions();
    auto survivors = placement.survivor_map();
    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(dim4(w_out), dim4(w_in));
    for (uint64_t idx = 0; idx < pow4(w_in); idx++) {
        uint64_t local = 0;
        for (size_t a = 0; a < targets.size(); a++) {
            local |= static_cast<uint64_t>(digit(idx, targets[a])) << (2 * a);
        }
        uint64_t carried = 0;
        for (size_t p = 0; p < w_in; p++) {
            if (survivors[p] >= 0 && std::find(targets.begin(), targets.end(), p) == targets.end()) {
                carried |= static_cast<uint64_t>(digit(idx, p)) << (2 * survivors[p]);
            }
        }
        for (const auto &e : tm.column(local).entries) {
            uint64_t out = carried;
            for (size_t j = 0; j < outputs.size(); j++) {
                out |= static_cast<uint64_t>(digit(e.row, j)) << (2 * outputs[j]);
            }
            entries(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(idx)) += e.value;
        }
    }
    return TransferMatrix(w_in, w_out, std::move(entries));
}

TransferMatrix permute_inputs(const TransferMatrix &tm, std::span<const size_t> order) {
    auto n = tm.in_qubits();
    if (order.size() != n) {
        throw std::invalid_argument("permutation size mismatch");
    }
    Eigen::MatrixXd entries(tm.entries().rows(), tm.entries().cols());
    for (uint64_t idx = 0; idx < pow4(n); idx++) {
        uint64_t old = 0;
        for (size_t a = 0; a < n; a++) {
            old |= static_cast<uint64_t>(digit(idx, a)) << (2 * order[a]);
        }
        entries.col(static_cast<Eigen::Index>(idx)) = tm.entries().col(static_cast<Eigen::Index>(old));
    }
    return TransferMatrix(n, tm.out_qubits(), std::move(entries));
}

}  // namespace pshuf
