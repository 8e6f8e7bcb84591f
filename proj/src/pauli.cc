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

#include "pauli_shuffle/pauli.h"

#include <algorithm>

namespace pshuf {

char letter_char(Letter l) {
    return "IXYZ"[static_cast<int>(l)];
}

Letter letter_from_char(char c) {
    switch (c) {
        case 'I':
        case 'i':
        case '_':
            return Letter::I;
        case 'X':
        case 'x':
            return Letter::X;
        case 'Y':
        case 'y':
            return Letter::Y;
        case 'Z':
        case 'z':
            return Letter::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

std::pair<Phase, Letter> letter_product(Letter a, Letter b) {
    if (a == Letter::I) {
        return {Phase{}, b};
    }
    if (b == Letter::I) {
        return {Phase{}, a};
    }
    if (a == b) {
        return {Phase{}, Letter::I};
    }
    auto ia = static_cast<int>(a);
    auto ib = static_cast<int>(b);
    // X=1, Y=2, Z=3; the third letter is the one not used. Cyclic order XYZ gives +i.
    auto ic = 6 - ia - ib;
    bool cyclic = (ib - ia + 3) % 3 == 1;
    return {Phase{static_cast<uint8_t>(cyclic ? 1 : 3)}, static_cast<Letter>(ic)};
}

PauliString::PauliString(std::vector<Letter> letters, int sign) : letters_(std::move(letters)) {
    set_sign(sign);
}

void PauliString::set_sign(int s) {
    if (s != 1 && s != -1) {
        throw std::invalid_argument("Pauli sign must be +1 or -1");
    }
    sign_ = static_cast<int8_t>(s);
}

PauliString PauliString::from_text(std::string_view text) {
    int sign = +1;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        sign = text.front() == '-' ? -1 : +1;
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty Pauli string");
    }
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char c : text) {
        letters.push_back(letter_from_char(c));
    }
    return PauliString(std::move(letters), sign);
}

PauliString PauliString::from_index(uint64_t index, size_t num_qubits) {
    if (num_qubits > 32) {
        throw std::out_of_range("base-4 index supports at most 32 qubits");
    }
    if (num_qubits < 32 && index >= pow4(num_qubits)) {
        throw std::out_of_range("Pauli index out of range");
    }
    PauliString p(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        p.letters_[q] = digit(index, q);
    }
    return p;
}

uint64_t PauliString::index() const {
    if (letters_.size() > 32) {
        throw std::out_of_range("base-4 index supports at most 32 qubits");
    }
    uint64_t r = 0;
    for (size_t q = 0; q < letters_.size(); q++) {
        r |= uint64_t{static_cast<uint8_t>(letters_[q])} << (2 * q);
    }
    return r;
}

bool PauliString::is_identity() const {
    return std::all_of(letters_.begin(), letters_.end(), [](Letter l) { return l == Letter::I; });
}

size_t PauliString::weight() const {
    return std::count_if(letters_.begin(), letters_.end(), [](Letter l) { return l != Letter::I; });
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (other.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli width mismatch");
    }
    size_t anti = 0;
    for (size_t q = 0; q < letters_.size(); q++) {
        auto a = letters_[q];
        auto b = other.letters_[q];
        anti += a != Letter::I && b != Letter::I && a != b;
    }
    return anti % 2 == 0;
}

std::string PauliString::str() const {
    std::string s;
    s.reserve(letters_.size() + 1);
    s.push_back(sign_ < 0 ? '-' : '+');
    for (auto l : letters_) {
        s.push_back(letter_char(l));
    }
    return s;
}

std::pair<Phase, PauliString> pauli_product(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("Pauli width mismatch in product");
    }
    Phase phase{static_cast<uint8_t>(a.sign() * b.sign() < 0 ? 2 : 0)};
    PauliString out(a.num_qubits());
    for (size_t q = 0; q < a.num_qubits(); q++) {
        auto [ph, l] = letter_product(a[q], b[q]);
        phase = phase * ph;
        out.set(q, l);
    }
    return {phase, out};
}

PauliString restrict_to(const PauliString &p, std::span<const size_t> support) {
    PauliString out(support.size());
    for (size_t k = 0; k < support.size(); k++) {
        if (support[k] >= p.num_qubits()) {
            throw std::out_of_range("support index " + std::to_string(support[k]) + " out of range");
        }
        out.set(k, p[support[k]]);
    }
    return out;
}

PauliString embed(const PauliString &local, std::span<const size_t> support, size_t num_qubits) {
    if (local.num_qubits() != support.size()) {
        throw std::invalid_argument("embed: local width does not match support size");
    }
    PauliString out(num_qubits);
    std::vector<bool> seen(num_qubits, false);
    for (size_t k = 0; k < support.size(); k++) {
        if (support[k] >= num_qubits) {
            throw std::out_of_range("support index " + std::to_string(support[k]) + " out of range");
        }
        if (seen[support[k]]) {
            throw std::invalid_argument("embed: repeated support index");
        }
        seen[support[k]] = true;
        out.set(support[k], local[k]);
    }
    out.set_sign(local.sign());
    return out;
}

}  // namespace pshuf
