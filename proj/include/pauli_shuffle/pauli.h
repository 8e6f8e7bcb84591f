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

#ifndef PAULI_SHUFFLE_PAULI_H
#define PAULI_SHUFFLE_PAULI_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pshuf {

/// Single-qubit Pauli letter. The numeric value is the base-4 digit used in
/// every flattened 4^k array of the project.
enum class Letter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);
Letter letter_from_char(char c);

/// Power of i: 0 -> +1, 1 -> +i, 2 -> -1, 3 -> -i.
struct Phase {
    uint8_t power = 0;

    Phase operator*(Phase other) const {
        return Phase{static_cast<uint8_t>((power + other.power) & 3)};
    }
    bool operator==(const Phase &) const = default;
    bool is_real() const {
        return (power & 1) == 0;
    }
    /// Only valid when is_real().
    int sign() const {
        return power == 0 ? +1 : -1;
    }
};

/// Product of two single-qubit letters: a*b = phase * letter.
std::pair<Phase, Letter> letter_product(Letter a, Letter b);

/// Signed tensor product of single-qubit Paulis. Letter q acts on qubit q.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits) : letters_(num_qubits, Letter::I) {
    }
    PauliString(std::vector<Letter> letters, int sign = +1);

    /// Parses strings like "XIZ" or "-YY". The first character is qubit 0.
    static PauliString from_text(std::string_view text);

    /// Decodes a little-endian base-4 index.
    static PauliString from_index(uint64_t index, size_t num_qubits);

    size_t num_qubits() const {
        return letters_.size();
    }
    int sign() const {
        return sign_;
    }
    void set_sign(int s);

    Letter operator[](size_t q) const {
        return letters_[q];
    }
    void set(size_t q, Letter l) {
        letters_[q] = l;
    }
    std::span<const Letter> letters() const {
        return letters_;
    }

    /// Little-endian base-4 index, ignoring sign. Requires num_qubits <= 32.
    uint64_t index() const;

    bool is_identity() const;
    size_t weight() const;
    bool commutes_with(const PauliString &other) const;

    std::string str() const;

    bool operator==(const PauliString &) const = default;

   private:
    std::vector<Letter> letters_;
    int8_t sign_ = +1;
};

/// phase * result == a * b as matrices (result carries sign +1; the sign of
/// both inputs is folded into the phase).
std::pair<Phase, PauliString> pauli_product(const PauliString &a, const PauliString &b);

/// Letters of `p` at the qubits in `support`, in support order.
PauliString restrict_to(const PauliString &p, std::span<const size_t> support);

/// Identity string of width `num_qubits` with `local` written onto `support`.
PauliString embed(const PauliString &local, std::span<const size_t> support, size_t num_qubits);

/// Index helpers for flattened 4^k arrays.
inline uint64_t pow4(size_t k) {
    return uint64_t{1} << (2 * k);
}
inline Letter digit(uint64_t index, size_t q) {
    return static_cast<Letter>((index >> (2 * q)) & 3);
}

}  // namespace pshuf

#endif
