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

#include "pauli_shuffle/placement.h"

#include <stdexcept>
#include <string>

namespace pshuf {

Placement::Placement(size_t width_before, std::vector<size_t> targets, size_t in_qubits, size_t out_qubits)
    : width_before_(width_before), in_qubits_(in_qubits), out_qubits_(out_qubits), targets_(std::move(targets)) {
    if (targets_.size() != in_qubits_) {
        throw std::invalid_argument(
            "channel acts on " + std::to_string(in_qubits_) + " qubit(s) but " + std::to_string(targets_.size()) +
            " target(s) were given");
    }
    std::vector<bool> used(width_before_, false);
    for (auto t : targets_) {
        if (t >= width_before_) {
            throw std::out_of_range(
                "target qubit " + std::to_string(t) + " is outside the " + std::to_string(width_before_) +
                "-qubit register");
        }
        if (used[t]) {
            throw std::invalid_argument("target qubit " + std::to_string(t) + " repeated");
        }
        used[t] = true;
    }

    size_t removed = in_qubits_ > out_qubits_ ? in_qubits_ - out_qubits_ : 0;
    std::vector<bool> discarded(width_before_, false);
    for (size_t a = 0; a < removed; a++) {
        discarded[targets_[a]] = true;
    }
    survivor_map_.assign(width_before_, -1);
    int64_t next = 0;
    for (size_t p = 0; p < width_before_; p++) {
        if (!discarded[p]) {
            survivor_map_[p] = next++;
        }
    }

    output_positions_.resize(out_qubits_);
    size_t kept = in_qubits_ - removed;
    for (size_t j = 0; j < out_qubits_; j++) {
        if (j < kept) {
            output_positions_[j] = static_cast<size_t>(survivor_map_[targets_[removed + j]]);
        } else {
            output_positions_[j] = static_cast<size_t>(next) + (j - kept);
        }
    }

    for (size_t p = 0; p < width_before_; p++) {
        carried_mask_before_ |= uint64_t{1} << p;
    }
    for (auto t : targets_) {
        carried_mask_before_ &= ~(uint64_t{1} << t);
    }
}

uint64_t Placement::local_input_bits(uint64_t index_before) const {
    uint64_t r = 0;
    for (size_t a = 0; a < targets_.size(); a++) {
        r |= ((index_before >> targets_[a]) & 1) << a;
    }
    return r;
}

uint64_t Placement::carried_bits(uint64_t index_before) const {
    uint64_t r = 0;
    auto rest = index_before & carried_mask_before_;
    for (size_t p = 0; p < width_before_; p++) {
        if ((rest >> p) & 1) {
            r |= uint64_t{1} << survivor_map_[p];
        }
    }
    return r;
}

uint64_t Placement::scatter_output_bits(uint64_t local_output) const {
    uint64_t r = 0;
    for (size_t j = 0; j < output_positions_.size(); j++) {
        r |= ((local_output >> j) & 1) << output_positions_[j];
    }
    return r;
}

}  // namespace pshuf
