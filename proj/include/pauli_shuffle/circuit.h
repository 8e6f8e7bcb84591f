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

#ifndef PAULI_SHUFFLE_CIRCUIT_H
#define PAULI_SHUFFLE_CIRCUIT_H

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pauli_shuffle/channel_spec.h"
#include "pauli_shuffle/observable.h"
#include "pauli_shuffle/placement.h"

namespace pshuf {

/// Input/validation problem in a circuit document. `where` is a JSON pointer
/// (or "line L, column C" for syntax errors).
class CircuitError : public std::runtime_error {
   public:
    CircuitError(std::string where, const std::string &what)
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {
    }
    const std::string &where() const {
        return where_;
    }

   private:
    std::string where_;
};

struct QubitState {
    /// Named state, or empty for a custom density matrix.
    std::string name;
    BlochVector bloch;
};

struct Operation {
    ChannelSpec channel;
    std::vector<size_t> targets;
};

/// Product input state, ordered channel applications, and a final observable.
struct Circuit {
    size_t num_qubits = 0;
    std::vector<QubitState> initial;
    std::vector<Operation> ops;
    Observable observable;

    /// Register placement of every operation; throws CircuitError on invalid
    /// targets or a mismatched observable.
    std::vector<Placement> placements() const;
    size_t final_width() const;
    /// For each final register position: the input qubit it came from, or
    /// -(k+1) for the k-th appended qubit.
    std::vector<int64_t> final_register_map() const;
    std::vector<BlochVector> initial_bloch() const;
};

Circuit parse_circuit(std::string_view json_text);
Circuit load_circuit(const std::string &path);
std::string serialize_circuit(const Circuit &circuit, int indent = 2);

}  // namespace pshuf

#endif
