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

#ifndef PAULI_SHUFFLE_SAMPLER_H
#define PAULI_SHUFFLE_SAMPLER_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pauli_shuffle/circuit.h"
#include "pauli_shuffle/rng.h"
#include "pauli_shuffle/transfer_matrix.h"

namespace pshuf {

enum class Mode { Forward, Backward };

const char *mode_name(Mode m);

/// One sampled path through the circuit.
struct Trajectory {
    PauliString current;
    /// Product of sgn(r_j) * D(rho_j) over the choices made so far.
    double weight = 1.0;
    bool alive = true;
};

/// A channel application prepared for sampling.
struct CompiledOp {
    TransferMatrix forward;
    AdjointTransferMatrix backward;
    Placement placement;
    std::string label;
};

/// Circuit lowered to transfer matrices. Immutable once built; shared
/// read-only by all sampling threads.
struct CompiledCircuit {
    std::vector<BlochVector> initial;
    std::vector<CompiledOp> ops;
    Observable observable;
    size_t final_width = 0;
};

/// Builds transfer matrices for every operation. With `precompose`, adjacent
/// operations sharing qubits are merged while their union spans at most three
/// qubits; a register-shrinking operation may end a merged group.
CompiledCircuit compile(const Circuit &circuit, bool precompose = false);

struct SamplingBudget {
    double epsilon = 0;
    double delta = 0;
    double range_bound = 0;
    uint64_t n_samples = 0;
};

struct EstimateReport {
    double mean = 0;
    uint64_t n_samples = 0;
    double empirical_stderr = 0;
    double range_bound = 0;
    Mode mode = Mode::Forward;
    uint64_t seed = 0;
    /// Largest |sample value| observed.
    double max_abs_value = 0;
};

/// ceil(range^2 ln(2/delta) / (2 epsilon^2)), at least 1.
uint64_t hoeffding_samples(double range_bound, double epsilon, double delta);

/// Upper bound on max P-hat - min P-hat for the chosen propagation direction.
double range_bound(const CompiledCircuit &circuit, Mode mode);

/// Picks one letter per qubit with probability |r_i| / D(rho_q); the weight is
/// the product of sgn(r_i) D(rho_q).
std::pair<PauliString, double> sample_initial(std::span<const BlochVector> state, PhiloxStream &rng);

/// Pushes a trajectory through one channel (forward) or one adjoint map
/// (backward). `placement` always describes the channel in the forward sense.
Trajectory propagate_step(Trajectory traj, const TransferMatrix &tm, const Placement &placement, PhiloxStream &rng);
Trajectory propagate_step(
    Trajectory traj, const AdjointTransferMatrix &adj, const Placement &placement, PhiloxStream &rng);

/// Value of sample `index`: weight * Tr(E sigma_f) forward, weight * Tr(sigma_f rho)
/// backward. Uses the random stream (seed, index).
double sample_value(const CompiledCircuit &circuit, Mode mode, uint64_t seed, uint64_t index);

/// OpenMP estimator. Samples are grouped into fixed-size blocks whose partial
/// statistics are merged in block order, so the report is bit-identical for
/// any thread count. `threads` <= 0 uses PAULI_SHUFFLE_THREADS or the OpenMP
/// default.
EstimateReport estimate(const CompiledCircuit &circuit, Mode mode, uint64_t n_samples, uint64_t seed, int threads = 0);

/// Single-threaded reference using a running Welford update.
EstimateReport estimate_serial(const CompiledCircuit &circuit, Mode mode, uint64_t n_samples, uint64_t seed);

EstimateReport estimate_forward(const CompiledCircuit &circuit, uint64_t n_samples, uint64_t seed, int threads = 0);
EstimateReport estimate_backward(const CompiledCircuit &circuit, uint64_t n_samples, uint64_t seed, int threads = 0);

/// Sample count from (epsilon, delta) and the analytic range bound.
SamplingBudget make_budget(const CompiledCircuit &circuit, Mode mode, double epsilon, double delta);

/// Forward unless backward has a strictly smaller range bound.
Mode preferred_mode(const CompiledCircuit &circuit);

/// Thread count from PAULI_SHUFFLE_THREADS, or 0 when unset.
int threads_from_environment();

}  // namespace pshuf

#endif
