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

#include "pauli_shuffle/sampler.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pshuf {

namespace {

constexpr uint64_t kBlockSize = 4096;

struct BlockStats {
    uint64_t count = 0;
    double mean = 0;
    double m2 = 0;
    double max_abs = 0;
};

// Chan et al. pairwise update; applied in block order.
void merge(BlockStats &acc, const BlockStats &b) {
    if (b.count == 0) {
        return;
    }
    if (acc.count == 0) {
        acc = b;
        return;
    }
    auto n = static_cast<double>(acc.count + b.count);
    double delta = b.mean - acc.mean;
    acc.mean += delta * static_cast<double>(b.count) / n;
    acc.m2 += b.m2 + delta * delta * static_cast<double>(acc.count) * static_cast<double>(b.count) / n;
    acc.count += b.count;
    acc.max_abs = std::max(acc.max_abs, b.max_abs);
}

double qubit_d(const BlochVector &q) {
    return q.l1_norm();
}

std::string join_labels(const std::string &a, const std::string &b) {
    return a + "; " + b;
}

size_t local_position(const std::vector<size_t> &group, size_t global) {
    return static_cast<size_t>(std::find(group.begin(), group.end(), global) - group.begin());
}

std::vector<size_t> local_positions(const std::vector<size_t> &group, std::span<const size_t> globals) {
    std::vector<size_t> out;
    for (auto g : globals) {
        out.push_back(local_position(group, g));
    }
    return out;
}

CompiledOp make_op(TransferMatrix tm, Placement placement, std::string label) {
    auto adj = adjoint(tm);
    return CompiledOp{std::move(tm), std::move(adj), std::move(placement), std::move(label)};
}

}  // namespace

const char *mode_name(Mode m) {
    return m == Mode::Forward ? "forward" : "backward";
}

CompiledCircuit compile(const Circuit &circuit, bool precompose) {
    auto placements = circuit.placements();
    CompiledCircuit out;
    out.initial = circuit.initial_bloch();
    out.observable = circuit.observable;
    out.final_width = placements.empty() ? circuit.num_qubits : placements.back().width_after();

    std::vector<TransferMatrix> tms;
    for (const auto &op : circuit.ops) {
        tms.push_back(build_named(op.channel));
    }

    size_t i = 0;
    while (i < tms.size()) {
        const auto &pl = placements[i];
        auto label = circuit.ops[i].channel.label();
        if (!precompose || pl.in_qubits() != pl.out_qubits() || pl.in_qubits() == 0) {
            out.ops.push_back(make_op(tms[i], pl, label));
            i++;
            continue;
        }
        std::vector<size_t> group(pl.targets().begin(), pl.targets().end());
        std::sort(group.begin(), group.end());
        auto merged = embed_channel(
            tms[i], Placement(group.size(), local_positions(group, pl.targets()), pl.in_qubits(), pl.out_qubits()));
        std::vector<size_t> removed;
        size_t j = i + 1;
        while (j < tms.size()) {
            const auto &next = placements[j];
            auto t = next.targets();
            bool shares = std::any_of(t.begin(), t.end(), [&](size_t q) {
                return std::find(group.begin(), group.end(), q) != group.end();
            });
            if (!shares || next.out_qubits() > next.in_qubits()) {
                break;
            }
            std::vector<size_t> wider = group;
            for (auto q : t) {
                if (std::find(wider.begin(), wider.end(), q) == wider.end()) {
                    wider.push_back(q);
                }
            }
            if (wider.size() > kMaxChannelQubits) {
                break;
            }
            std::sort(wider.begin(), wider.end());
            auto lifted_prev = embed_channel(
                merged, Placement(wider.size(), local_positions(wider, group), group.size(), group.size()));
            auto lifted_next = embed_channel(
                tms[j], Placement(wider.size(), local_positions(wider, t), next.in_qubits(), next.out_qubits()));
            merged = compose(lifted_next, lifted_prev);
            group = std::move(wider);
            label = join_labels(label, circuit.ops[j].channel.label());
            j++;
            if (next.out_qubits() < next.in_qubits()) {
                removed.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(next.in_qubits() - next.out_qubits()));
                break;
            }
        }
        if (j == i + 1) {
            out.ops.push_back(make_op(tms[i], pl, label));
            i++;
            continue;
        }
        // Global target order: discarded qubits first, then survivors ascending,
        // matching the merged matrix's output order.
        std::vector<size_t> targets = removed;
        for (auto q : group) {
            if (std::find(removed.begin(), removed.end(), q) == removed.end()) {
                targets.push_back(q);
            }
        }
        auto order = local_positions(group, targets);
        merged = permute_inputs(merged, order);
        Placement merged_place(pl.width_before(), targets, group.size(), group.size() - removed.size());
        out.ops.push_back(make_op(std::move(merged), std::move(merged_place), "[" + label + "]"));
        i = j;
    }
    return out;
}

uint64_t hoeffding_samples(double range_bound, double epsilon, double delta) {
    if (!(epsilon > 0) || !(delta > 0 && delta < 1)) {
        throw std::invalid_argument("need epsilon > 0 and 0 < delta < 1");
    }
    if (!(range_bound >= 0) || !std::isfinite(range_bound)) {
        throw std::invalid_argument("range bound must be finite and non-negative");
    }
    double n = std::ceil(range_bound * range_bound * std::log(2.0 / delta) / (2.0 * epsilon * epsilon));
    if (n > 1.8e19) {
        throw std::overflow_error("sample budget overflows 64 bits");
    }
    return std::max<uint64_t>(1, static_cast<uint64_t>(n));
}

double range_bound(const CompiledCircuit &circuit, Mode mode) {
    double bound = 2.0;
    if (mode == Mode::Forward) {
        bound *= circuit.observable.max_abs_trace(circuit.final_width);
        for (const auto &q : circuit.initial) {
            bound *= qubit_d(q);
        }
        for (const auto &op : circuit.ops) {
            bound *= channel_cost(op.forward);
        }
    } else {
        bound *= circuit.observable.d_measure();
        for (const auto &op : circuit.ops) {
            bound *= channel_cost(op.backward);
        }
        for (const auto &q : circuit.initial) {
            // max over letters of |Tr(sigma rho_q)| = 2 |r_q|.
            bound *= 2.0 * q.coeffs.cwiseAbs().maxCoeff();
        }
    }
    return bound;
}

std::pair<PauliString, double> sample_initial(std::span<const BlochVector> state, PhiloxStream &rng) {
    PauliString p(state.size());
    double weight = 1.0;
    for (size_t q = 0; q < state.size(); q++) {
        const auto &r = state[q];
        double d = r.l1_norm();
        if (d == 0) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " has an all-zero Bloch vector");
        }
        double target = rng.uniform() * d;
        double run = 0;
        uint64_t pick = 3;
        for (uint64_t l = 0; l < 4; l++) {
            run += std::abs(r[l]);
            if (target < run) {
                pick = l;
                break;
            }
        }
        while (r[pick] == 0 && pick > 0) {
            pick--;
        }
        p.set(q, static_cast<Letter>(pick));
        weight *= r[pick] < 0 ? -d : d;
    }
    return {p, weight};
}

Trajectory propagate_step(Trajectory traj, const TransferMatrix &tm, const Placement &placement, PhiloxStream &rng) {
    if (tm.in_qubits() != placement.in_qubits() || tm.out_qubits() != placement.out_qubits()) {
        throw std::invalid_argument("channel arity does not match its placement");
    }
    if (traj.current.num_qubits() != placement.width_before()) {
        throw std::invalid_argument("trajectory width does not match the register");
    }
    if (!traj.alive) {
        return traj;
    }
    auto targets = placement.targets();
    uint64_t col = 0;
    for (size_t a = 0; a < targets.size(); a++) {
        col |= static_cast<uint64_t>(traj.current[targets[a]]) << (2 * a);
    }
    const auto &column = tm.column(col);
    if (column.entries.empty()) {
        traj.alive = false;
        traj.weight = 0;
        return traj;
    }
    const auto *e = tm.pick(col, column.entries.size() > 1 ? rng.uniform() : 0.0);
    traj.weight *= e->value < 0 ? -column.l1 : column.l1;

    auto outputs = placement.output_positions();
    if (placement.in_qubits() == placement.out_qubits()) {
        for (size_t j = 0; j < outputs.size(); j++) {
            traj.current.set(outputs[j], digit(e->row, j));
        }
        return traj;
    }
    PauliString next(placement.width_after());
    auto surv = placement.survivor_map();
    for (size_t p = 0; p < surv.size(); p++) {
        if (surv[p] >= 0) {
            next.set(static_cast<size_t>(surv[p]), traj.current[p]);
        }
    }
    for (size_t j = 0; j < outputs.size(); j++) {
        next.set(outputs[j], digit(e->row, j));
    }
    traj.current = std::move(next);
    return traj;
}

Trajectory propagate_step(
    Trajectory traj, const AdjointTransferMatrix &adj, const Placement &placement, PhiloxStream &rng) {
    if (adj.channel_in_qubits() != placement.in_qubits() || adj.channel_out_qubits() != placement.out_qubits()) {
        throw std::invalid_argument("adjoint arity does not match its placement");
    }
    if (traj.current.num_qubits() != placement.width_after()) {
        throw std::invalid_argument("trajectory width does not match the register");
    }
    if (!traj.alive) {
        return traj;
    }
    auto outputs = placement.output_positions();
    uint64_t col = 0;
    for (size_t j = 0; j < outputs.size(); j++) {
        col |= static_cast<uint64_t>(traj.current[outputs[j]]) << (2 * j);
    }
    const auto &column = adj.column(col);
    if (column.entries.empty()) {
        traj.alive = false;
        traj.weight = 0;
        return traj;
    }
    const auto *e = adj.pick(col, column.entries.size() > 1 ? rng.uniform() : 0.0);
    traj.weight *= e->value < 0 ? -column.l1 : column.l1;

    auto targets = placement.targets();
    if (placement.in_qubits() == placement.out_qubits()) {
        for (size_t a = 0; a < targets.size(); a++) {
            traj.current.set(targets[a], digit(e->row, a));
        }
        return traj;
    }
    PauliString prev(placement.width_before());
    auto surv = placement.survivor_map();
    for (size_t p = 0; p < surv.size(); p++) {
        if (surv[p] >= 0) {
            prev.set(p, traj.current[static_cast<size_t>(surv[p])]);
        }
    }
    for (size_t a = 0; a < targets.size(); a++) {
        prev.set(targets[a], digit(e->row, a));
    }
    traj.current = std::move(prev);
    return traj;
}

double sample_value(const CompiledCircuit &circuit, Mode mode, uint64_t seed, uint64_t index) {
    PhiloxStream rng(seed, index);
    if (mode == Mode::Forward) {
        auto [p, w] = sample_initial(circuit.initial, rng);
        Trajectory t{std::move(p), w, true};
        for (const auto &op : circuit.ops) {
            t = propagate_step(std::move(t), op.forward, op.placement, rng);
            if (!t.alive) {
                return 0.0;
            }
        }
        return t.weight * circuit.observable.trace_with(t.current);
    }
    auto [p, w] = circuit.observable.sample(circuit.final_width, rng);
    Trajectory t{std::move(p), w, true};
    for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
        t = propagate_step(std::move(t), it->backward, it->placement, rng);
        if (!t.alive) {
            return 0.0;
        }
    }
    double v = t.weight;
    for (size_t q = 0; q < circuit.initial.size(); q++) {
        v *= 2.0 * circuit.initial[q][static_cast<uint64_t>(t.current[q])];
    }
    return v;
}

int threads_from_environment() {
    const char *env = std::getenv("PAULI_SHUFFLE_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    int n = std::atoi(env);
    return n > 0 ? n : 0;
}

EstimateReport estimate(const CompiledCircuit &circuit, Mode mode, uint64_t n_samples, uint64_t seed, int threads) {
    if (n_samples == 0) {
        throw std::invalid_argument("need at least one sample");
    }
    if (threads <= 0) {
        threads = threads_from_environment();
    }
    auto n_blocks = static_cast<int64_t>((n_samples + kBlockSize - 1) / kBlockSize);
    std::vector<BlockStats> stats(static_cast<size_t>(n_blocks));

#ifdef _OPENMP
    int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
#endif
    for (int64_t b = 0; b < n_blocks; b++) {
        uint64_t begin = static_cast<uint64_t>(b) * kBlockSize;
        uint64_t end = std::min(n_samples, begin + kBlockSize);
        double values[kBlockSize];
        double sum = 0;
        double max_abs = 0;
        for (uint64_t i = begin; i < end; i++) {
            double v = sample_value(circuit, mode, seed, i);
            values[i - begin] = v;
            sum += v;
            max_abs = std::max(max_abs, std::abs(v));
        }
        auto count = end - begin;
        double mean = sum / static_cast<double>(count);
        double m2 = 0;
        for (uint64_t k = 0; k < count; k++) {
            m2 += (values[k] - mean) * (values[k] - mean);
        }
        stats[static_cast<size_t>(b)] = BlockStats{count, mean, m2, max_abs};
    }

    BlockStats total;
    for (const auto &s : stats) {
        merge(total, s);
    }
    EstimateReport r;
    r.mean = total.mean;
    r.n_samples = n_samples;
    r.empirical_stderr =
        n_samples > 1 ? std::sqrt(total.m2 / static_cast<double>(n_samples - 1) / static_cast<double>(n_samples)) : 0.0;
    r.range_bound = range_bound(circuit, mode);
    r.mode = mode;
    r.seed = seed;
    r.max_abs_value = total.max_abs;
    return r;
}

EstimateReport estimate_serial(const CompiledCircuit &circuit, Mode mode, uint64_t n_samples, uint64_t seed) {
    if (n_samples == 0) {
        throw std::invalid_argument("need at least one sample");
    }
    // Welford update.
    double mean = 0;
    double m2 = 0;
    double max_abs = 0;
    for (uint64_t i = 0; i < n_samples; i++) {
        double v = sample_value(circuit, mode, seed, i);
        double d = v - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (v - mean);
        max_abs = std::max(max_abs, std::abs(v));
    }
    auto n = static_cast<double>(n_samples);
    EstimateReport r;
    r.mean = mean;
    double var = n_samples > 1 ? m2 / (n - 1) : 0.0;
    r.n_samples = n_samples;
    r.empirical_stderr = std::sqrt(var / n);
    r.range_bound = range_bound(circuit, mode);
    r.mode = mode;
    r.seed = seed;
    r.max_abs_value = max_abs;
    return r;
}

EstimateReport estimate_forward(const CompiledCircuit &circuit, uint64_t n_samples, uint64_t seed, int threads) {
    return estimate(circuit, Mode::Forward, n_samples, seed, threads);
}

EstimateReport estimate_backward(const CompiledCircuit &circuit, uint64_t n_samples, uint64_t seed, int threads) {
    return estimate(circuit, Mode::Backward, n_samples, seed, threads);
}

SamplingBudget make_budget(const CompiledCircuit &circuit, Mode mode, double epsilon, double delta) {
    SamplingBudget b;
    b.epsilon = epsilon;
    b.delta = delta;
    b.range_bound = range_bound(circuit, mode);
    b.n_samples = hoeffding_samples(b.range_bound, epsilon, delta);
    return b;
}

Mode preferred_mode(const CompiledCircuit &circuit) {
    return range_bound(circuit, Mode::Backward) < range_bound(circuit, Mode::Forward) ? Mode::Backward : Mode::Forward;
}

}  // namespace pshuf
