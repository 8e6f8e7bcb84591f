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

#ifndef PAULI_SHUFFLE_PLACEMENT_H
#define PAULI_SHUFFLE_PLACEMENT_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pshuf {

/// Where an n -> m qubit channel sits in a register, and how the register
/// changes around it.
///
/// Local input qubit a is register position targets[a]. When the channel
/// shrinks the register (m < n), the first n - m targets are discarded and the
/// remaining positions close up in order; local output j then lives where
/// targets[n - m + j] ended up. When it grows the register (m > n), outputs
/// j < n stay on targets[j] and the extra m - n qubits are appended at the end.
class Placement {
   public:
    Placement() = default;
    Placement(size_t width_before, std::vector<size_t> targets, size_t in_qubits, size_t out_qubits);

    size_t width_before() const {
        return width_before_;
    }
    size_t width_after() const {
        return width_before_ + out_qubits_ - in_qubits_;
    }
    size_t in_qubits() const {
        return in_qubits_;
    }
    size_t out_qubits() const {
        return out_qubits_;
    }
    std::span<const size_t> targets() const {
        return targets_;
    }
    /// Register position (after the channel) of each local output qubit.
    std::span<const size_t> output_positions() const {
        return output_positions_;
    }
    /// For each position before the channel: its position afterwards, or -1
    /// when it was discarded.
    std::span<const int64_t> survivor_map() const {
        return survivor_map_;
    }

    /// Bit-level helpers used by dense simulation: split a register basis index
    /// into (untouched bits packed in order, local input index) and reassemble.
    uint64_t local_input_bits(uint64_t index_before) const;
    /// Bits of `index_before` that survive, placed at their after-positions
    /// (output positions left zero).
    uint64_t carried_bits(uint64_t index_before) const;
    uint64_t scatter_output_bits(uint64_t local_output) const;

   private:
    size_t width_before_ = 0;
    size_t in_qubits_ = 0;
    size_t out_qubits_ = 0;
    std::vector<size_t> targets_;
    std::vector<size_t> output_positions_;
    std::vector<int64_t> survivor_map_;
    uint64_t carried_mask_before_ = 0;
};

}  // namespace pshuf

#endif
