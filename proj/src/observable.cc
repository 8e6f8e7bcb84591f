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

#include "pauli_shuffle/observable.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace pshuf {

namespace {

ObservableBlock make_block(std::vector<size_t> support, Eigen::MatrixXcd matrix) {
    auto k = support.size();
    DenseOperator op(k, matrix);
    if (!op.is_hermitian(1e-10)) {
        throw std::invalid_argument("observable matrix is not Hermitian");
    }
    // Hermitize before taking traces.
    Eigen::MatrixXcd h = 0.5 * (matrix + matrix.adjoint());
    Eigen::VectorXd traces(static_cast<Eigen::Index>(pow4(k)));
    for (uint64_t i = 0; i < pow4(k); i++) {
        traces[static_cast<Eigen::Index>(i)] = pauli_trace(i, h, k).real();
    }
    return ObservableBlock{std::move(support), std::move(h), std::move(traces)};
}

void check_support(const std::vector<size_t> &support) {
    auto sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("observable support has repeated qubits");
    }
}

}  // namespace

const char *observable_kind_name(ObservableKind k) {
    switch (k) {
        case ObservableKind::Product:
            return "product";
        case ObservableKind::BasisProjector:
            return "basis_projector";
        case ObservableKind::Pauli:
            return "pauli";
        case ObservableKind::DenseLocal:
            return "dense_local";
    }
    return "?";
}

Eigen::MatrixXcd named_qubit_observable(const std::string &name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    if (n == "identity" || n == "i") {
        return Eigen::MatrixXcd::Identity(2, 2);
    }
    if (n == "maximally_mixed") {
        throw std::invalid_argument("'maximally_mixed' is not a projector observable");
    }
    return dense_from_bloch(named_qubit_state(n)).matrix;
}

Observable Observable::product(
    std::vector<size_t> support, std::vector<Eigen::MatrixXcd> factors, std::vector<std::string> names) {
    if (support.size() != factors.size()) {
        throw std::invalid_argument("product observable needs one factor per support qubit");
    }
    if (!names.empty() && names.size() != factors.size()) {
        throw std::invalid_argument("product observable factor names do not match factors");
    }
    check_support(support);
    Observable o;
    o.kind_ = ObservableKind::Product;
    o.support_ = support;
    for (size_t k = 0; k < support.size(); k++) {
        if (factors[k].rows() != 2 || factors[k].cols() != 2) {
            throw std::invalid_argument("product observable factors must be 2x2");
        }
        o.blocks_.push_back(make_block({support[k]}, factors[k]));
    }
    o.factor_names_ = names.empty() ? std::vector<std::string>(factors.size()) : std::move(names);
    return o;
}

Observable Observable::basis_projector(std::vector<size_t> support, std::vector<int> bits) {
    if (support.size() != bits.size()) {
        throw std::invalid_argument("basis projector needs one bit per support qubit");
    }
    check_support(support);
    Observable o;
    o.kind_ = ObservableKind::BasisProjector;
    o.support_ = support;
    o.bits_ = bits;
    for (size_t k = 0; k < support.size(); k++) {
        if (bits[k] != 0 && bits[k] != 1) {
            throw std::invalid_argument("basis projector bits must be 0 or 1");
        }
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
        m(bits[k], bits[k]) = 1;
        o.blocks_.push_back(make_block({support[k]}, m));
    }
    return o;
}

Observable Observable::pauli(PauliString p) {
    Observable o;
    o.kind_ = ObservableKind::Pauli;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        o.support_.push_back(q);
        Eigen::MatrixXcd m = pauli_matrix(PauliString({p[q]}));
        if (q == 0) {
            m *= static_cast<double>(p.sign());
        }
        o.blocks_.push_back(make_block({q}, m));
    }
    o.pauli_ = std::move(p);
    return o;
}

Observable Observable::dense_local(std::vector<size_t> support, Eigen::MatrixXcd matrix) {
    if (support.empty() || support.size() > kMaxBlochQubits) {
        throw std::invalid_argument("dense observable support must have 1.." + std::to_string(kMaxBlochQubits) + " qubits");
    }
    check_support(support);
    Observable o;
    o.kind_ = ObservableKind::DenseLocal;
    o.support_ = support;
    o.blocks_.push_back(make_block(std::move(support), std::move(matrix)));
    return o;
}

size_t Observable::min_width() const {
    size_t w = 0;
    for (auto q : support_) {
        w = std::max(w, q + 1);
    }
    return w;
}

double Observable::trace_with(const PauliString &sigma) const {
    double v = 1.0;
    size_t covered = 0;
    for (const auto &b : blocks_) {
        uint64_t local = 0;
        for (size_t a = 0; a < b.support.size(); a++) {
            auto l = sigma[b.support[a]];
            covered += l != Letter::I;
            local |= static_cast<uint64_t>(l) << (2 * a);
        }
        v *= b.traces[static_cast<Eigen::Index>(local)];
        if (v == 0.0) {
            return 0.0;
        }
    }
    // Identity padding: Tr(I sigma) is 2 for sigma = I and 0 otherwise.
    if (sigma.weight() != covered) {
        return 0.0;
    }
    return std::ldexp(v, static_cast<int>(sigma.num_qubits() - support_.size()));
}

double Observable::max_abs_trace(size_t width) const {
    double v = 1.0;
    for (const auto &b : blocks_) {
        v *= b.traces.cwiseAbs().maxCoeff();
    }
    return std::ldexp(v, static_cast<int>(width - support_.size()));
}

double Observable::d_measure() const {
    double v = 1.0;
    for (const auto &b : blocks_) {
        v *= b.traces.lpNorm<1>() / static_cast<double>(uint64_t{1} << b.support.size());
    }
    return v;
}

std::pair<PauliString, double> Observable::sample(size_t width, PhiloxStream &rng) const {
    PauliString out(width);
    double weight = 1.0;
    for (const auto &b : blocks_) {
        double l1 = b.traces.lpNorm<1>();
        double target = rng.uniform() * l1;
        Eigen::Index pick = b.traces.size() - 1;
        double run = 0;
        for (Eigen::Index i = 0; i < b.traces.size(); i++) {
            run += std::abs(b.traces[i]);
            if (target < run) {
                pick = i;
                break;
            }
        }
        while (b.traces[pick] == 0.0 && pick > 0) {
            pick--;
        }
        double scale = static_cast<double>(uint64_t{1} << b.support.size());
        weight *= (b.traces[pick] < 0 ? -1.0 : 1.0) * l1 / scale;
        for (size_t a = 0; a < b.support.size(); a++) {
            out.set(b.support[a], digit(static_cast<uint64_t>(pick), a));
        }
    }
    return {out, weight};
}

DenseOperator Observable::dense(size_t width) const {
    if (width < min_width()) {
        throw std::invalid_argument("observable does not fit the register");
    }
    auto dim = Eigen::Index{1} << width;
    Eigen::MatrixXcd m(dim, dim);
    std::vector<bool> covered(width, false);
    for (auto q : support_) {
        covered[q] = true;
    }
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            cdouble v = 1;
            for (size_t q = 0; q < width && v != 0.0; q++) {
                if (!covered[q] && ((r ^ c) >> q & 1)) {
                    v = 0;
                }
            }
            for (const auto &b : blocks_) {
                if (v == 0.0) {
                    break;
                }
                Eigen::Index lr = 0, lc = 0;
                for (size_t a = 0; a < b.support.size(); a++) {
                    lr |= ((r >> b.support[a]) & 1) << a;
                    lc |= ((c >> b.support[a]) & 1) << a;
                }
                v *= b.matrix(lr, lc);
            }
            m(r, c) = v;
        }
    }
    return DenseOperator(width, std::move(m));
}

}  // namespace pshuf
