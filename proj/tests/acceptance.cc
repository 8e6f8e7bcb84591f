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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "pauli_shuffle/channel_spec.h"
#include "pauli_shuffle/circuit.h"
#include "pauli_shuffle/magic.h"
#include "pauli_shuffle/oracle.h"
#include "pauli_shuffle/sampler.h"
#include "pauli_shuffle/transfer_matrix.h"

using namespace pshuf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string source(const std::string &rel) {
    return std::string(PAULI_SHUFFLE_SOURCE_DIR) + "/" + rel;
}

std::vector<std::string> suite_paths() {
    std::vector<std::string> out;
    for (const auto &e : std::filesystem::directory_iterator(source("tests/data/suite"))) {
        out.push_back(e.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Collects failed sub-checks for one criterion.
struct Check {
    std::vector<std::string> failures;
    std::ostringstream notes;

    void expect(bool ok, const std::string &what) {
        if (!ok) {
            failures.push_back(what);
        }
    }
    void near(double got, double want, double tol, const std::string &what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream s;
            s.precision(12);
            s << what << " got " << got << " want " << want;
            failures.push_back(s.str());
        }
    }
    bool ok() const {
        return failures.empty();
    }
};

Eigen::VectorXd combo(size_t n, std::initializer_list<std::pair<double, const char *>> terms) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pow4(n)));
    for (auto [c, t] : terms) {
        v[static_cast<Eigen::Index>(PauliString::from_text(t).index())] += c;
    }
    return v;
}

double bloch_inner(const BlochVector &a, const BlochVector &b) {
    return std::ldexp(a.coeffs.dot(b.coeffs), static_cast<int>(a.num_qubits));
}

BlochVector random_hermitian(size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd c(static_cast<Eigen::Index>(pow4(n)));
    for (Eigen::Index i = 0; i < c.size(); i++) {
        c[i] = normal(rng);
    }
    return BlochVector(n, c);
}

void criterion_1(Check &c) {
    auto start = Clock::now();
    auto a = named_qubit_state("A");
    c.near(d_measure(a), (1 + std::sqrt(2.0)) / 2, 1e-9, "D(A)");
    c.near(robustness(a, stabilizer_states(1)), std::sqrt(2.0), 1e-9, "R(A)");
    c.near(channel_cost(build_named(ChannelSpec::unitary("t"))), std::sqrt(2.0), 1e-9, "cost(T)");
    auto g = build_named(ChannelSpec::gadget());
    auto adj = adjoint(g);
    c.near(channel_cost(g), 2.0, 1e-9, "cost(gadget)");
    c.near(channel_cost(adj), 2.0, 1e-9, "cost(adjoint gadget)");
    double factor = std::pow(d_measure(a) * channel_cost(g), 2);
    c.near(factor, 5.827, 1e-6, "D(A)^2 2^2 vs 5.827");
    auto cc = compile(load_circuit(source("circuits/t_gadget.json")));
    c.near(std::pow(range_bound(cc, Mode::Forward) / 2, 2), factor, 1e-6, "t_gadget forward factor");

    auto col = [&](const char *t) { return g.image(PauliString::from_text(t).index()).coeffs; };
    auto cols_match = [&](const char *t, const Eigen::VectorXd &want) {
        c.expect((col(t) - want).lpNorm<Eigen::Infinity>() <= 1e-9, std::string("gadget column ") + t);
    };
    cols_match("II", combo(1, {{1, "I"}}) * 2);
    cols_match("IZ", combo(1, {{1, "Z"}}) * 2);
    cols_match("XX", combo(1, {{1, "X"}, {1, "Y"}}));
    cols_match("XY", combo(1, {{1, "Y"}, {-1, "X"}}));
    cols_match("YY", combo(1, {{1, "Y"}, {-1, "X"}}));
    cols_match("YX", combo(1, {{1, "X"}, {1, "Y"}}));

    auto adj_image = [&](const char *t, const Eigen::VectorXd &want) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
        e[static_cast<Eigen::Index>(PauliString::from_text(t).index())] = 1;
        auto got = adj.apply(BlochVector(1, e)).coeffs;
        c.expect((got - want).lpNorm<Eigen::Infinity>() <= 1e-9, std::string("adjoint image ") + t);
    };
    adj_image("I", combo(2, {{1, "II"}}));
    adj_image("Z", combo(2, {{1, "IZ"}}));
    adj_image("X", combo(2, {{0.5, "XX"}, {-0.5, "XY"}, {-0.5, "YY"}, {0.5, "YX"}}));
    adj_image("Y", combo(2, {{0.5, "XX"}, {0.5, "XY"}, {0.5, "YY"}, {0.5, "YX"}}));

    double t = seconds_since(start);
    c.expect(t < 1.0, "runtime over 1 s");
    c.notes << "factor=" << factor << " time=" << t << "s";
}

void criterion_2(Check &c) {
    c.near(choi_cost(build_named(ChannelSpec::unitary("t"))), (1 + std::sqrt(2.0)) / 2, 1e-9, "choi_cost(T)");
    int n = 0;
    for (const auto &spec : pshuf_test::builtin_channels()) {
        auto rho = choi_state(spec);
        double direct = d_measure(bloch_from_dense(rho.as_operator()));
        c.near(choi_cost(build_named(spec)), direct, 1e-9, "choi " + spec.label());
        n++;
    }
    c.notes << n << " channels";
}

void criterion_3(Check &c) {
    auto start = Clock::now();
    const uint64_t want[] = {6, 60, 1080};
    double worst_d = 0;
    double worst_r = 0;
    for (size_t n = 1; n <= 3; n++) {
        auto set = enumerate_stabilizer_states(n);
        c.expect(set.size() == want[n - 1], "count n=" + std::to_string(n));
        for (const auto &s : set.states) {
            worst_d = std::max(worst_d, std::abs(d_measure(s) - 1));
            worst_r = std::max(worst_r, std::abs(robustness(s, set) - 1));
        }
    }
    c.expect(worst_d <= 1e-7, "D != 1");
    c.expect(worst_r <= 1e-7, "R != 1");
    double t = seconds_since(start);
    c.expect(t < 30, "runtime over 30 s");
    c.notes << "max|D-1|=" << worst_d << " max|R-1|=" << worst_r << " time=" << t << "s";
}

void criterion_4(Check &c) {
    auto start = Clock::now();
    auto r = census(2, 100000, 7);
    double s = r.stabilizer_fraction();
    double b = r.bound_fraction();
    double m = r.magic_fraction();
    c.near(s, 0.009, 0.05, "stabilizer fraction");
    c.near(b, 0.583, 0.05, "bound fraction");
    c.near(m, 0.408, 0.05, "magic fraction");
    c.expect(s < 0.05, "stabilizer fraction >= 5%");
    c.expect(b > s && b > m, "bound is not the plurality");
    auto one = census(1, 20000, 7);
    c.expect(one.bound == 0, "n=1 census has bound states");
    double t = seconds_since(start);
    c.expect(t < 600, "runtime over 10 min");
    c.notes << "stabilizer=" << s << " bound=" << b << " magic=" << m << " time=" << t << "s";
}

void criterion_5(Check &c) {
    auto paths = suite_paths();
    c.expect(paths.size() >= 20, "suite has fewer than 20 circuits");
    for (auto mode : {Mode::Forward, Mode::Backward}) {
        size_t good = 0;
        for (const auto &path : paths) {
            auto circuit = load_circuit(path);
            double exact = exact_value(circuit);
            auto r = estimate(compile(circuit), mode, 100000, 2024);
            double err = std::abs(r.mean - exact);
            bool within = err <= 4 * r.empirical_stderr + 1e-12;
            if (within) {
                good++;
            } else {
                c.notes << " [" << mode_name(mode) << " miss " << std::filesystem::path(path).stem().string() << "]";
            }
        }
        c.expect(20 * good >= 19 * paths.size(), std::string(mode_name(mode)) + " agreement below 19/20");
        c.notes << " " << mode_name(mode) << "=" << good << "/" << paths.size();
    }

    for (const char *name : {"clifford_bell", "clifford_ghz3", "clifford_swap_cz", "clifford_y_basis"}) {
        auto cc = compile(load_circuit(source(std::string("tests/data/suite/") + name + ".json")));
        bool values_ok = true;
        bool weights_ok = true;
        for (uint64_t k = 0; k < 5000; k++) {
            for (auto mode : {Mode::Forward, Mode::Backward}) {
                double v = sample_value(cc, mode, 31, k);
                values_ok &= v == 0.0 || v == 1.0 || v == -1.0;
            }
            PhiloxStream rng(77, k);
            auto [p, w] = sample_initial(cc.initial, rng);
            Trajectory traj{p, w, true};
            weights_ok &= std::abs(traj.weight) == 1.0;
            for (const auto &op : cc.ops) {
                traj = propagate_step(traj, op.forward, op.placement, rng);
                weights_ok &= std::abs(traj.weight) == 1.0;
            }
        }
        c.expect(values_ok, std::string(name) + " sample value outside {-1,0,1}");
        c.expect(weights_ok, std::string(name) + " weight magnitude != 1");
    }
}

void criterion_6(Check &c) {
    c.expect(hoeffding_samples(2, 0.01, 0.05) == 73778, "hoeffding_samples(2, 0.01, 0.05)");
    const double eps = 0.05;
    const double delta = 0.05;
    const int reps = 200;
    for (const char *name : {"circuits/t_gadget.json", "circuits/clifford_bell.json"}) {
        auto circuit = load_circuit(source(name));
        double exact = exact_value(circuit);
        auto cc = compile(circuit);
        auto mode = preferred_mode(cc);
        auto budget = make_budget(cc, mode, eps, delta);
        int failures = 0;
        for (int rep = 0; rep < reps; rep++) {
            auto r = estimate(cc, mode, budget.n_samples, 1000 + static_cast<uint64_t>(rep));
            failures += std::abs(r.mean - exact) > eps;
        }
        double rate = static_cast<double>(failures) / reps;
        c.expect(rate <= delta, std::string(name) + " failure rate above delta");
        c.notes << " " << std::filesystem::path(name).stem().string() << ": N=" << budget.n_samples
                << " failures=" << failures << "/" << reps;
    }
}

void criterion_7(Check &c) {
    std::mt19937_64 rng(99);

    // D <= R on random two-qubit states.
    int dr = 0;
    for (uint64_t k = 0; k < 150; k++) {
        PhiloxStream s(5150, k);
        auto v = random_density(2, s);
        c.expect(d_measure(v) <= robustness(v, stabilizer_states(2)) + 1e-7, "D > R");
        dr++;
    }

    auto channels = pshuf_test::builtin_channels();
    std::vector<TransferMatrix> tms;
    for (const auto &spec : channels) {
        tms.push_back(build_named(spec));
    }

    // Duality.
    int dual = 0;
    double worst_dual = 0;
    for (int k = 0; k < 200; k++) {
        const auto &tm = tms[static_cast<size_t>(k) % tms.size()];
        auto rho = random_hermitian(tm.in_qubits(), rng);
        auto e = random_hermitian(tm.out_qubits(), rng);
        double lhs = bloch_inner(rho, adjoint(tm).apply(e));
        double rhs = bloch_inner(tm.apply(rho), e);
        worst_dual = std::max(worst_dual, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        dual++;
    }
    c.expect(worst_dual <= 1e-10, "duality");

    // Submultiplicativity over same-width pairs.
    int sub = 0;
    for (int k = 0; k < 2000 && sub < 200; k++) {
        const auto &a = tms[rng() % tms.size()];
        const auto &b = tms[rng() % tms.size()];
        if (a.out_qubits() != b.in_qubits()) {
            continue;
        }
        auto ab = compose(b, a);
        c.expect(channel_cost(ab) <= channel_cost(a) * channel_cost(b) + 1e-7, "submultiplicativity");
        sub++;
    }
    c.expect(sub >= 100, "too few composable pairs");

    // Columns against the dense Kraus sum.
    int columns = 0;
    double worst_col = 0;
    for (size_t i = 0; i < channels.size(); i++) {
        auto kraus = kraus_operators(channels[i]);
        auto ref = pshuf_test::ptm_of(kraus, channels[i].in_qubits(), channels[i].out_qubits());
        worst_col = std::max(worst_col, (ref - tms[i].entries()).lpNorm<Eigen::Infinity>());
        columns += static_cast<int>(ref.cols());
    }
    c.expect(worst_col <= 1e-10, "columns vs dense");

    // Bloch / dense round trip.
    double worst_rt = 0;
    for (uint64_t k = 0; k < 150; k++) {
        size_t n = 1 + k % 4;
        DenseOperator rho(n, pshuf_test::random_density_matrix(n, k));
        auto back = dense_from_bloch(bloch_from_dense(rho));
        worst_rt = std::max(worst_rt, (back.matrix - rho.matrix).cwiseAbs().maxCoeff());
    }
    c.expect(worst_rt <= 1e-12, "round trip");

    // Bit-identical reports across thread counts.
    int thread_cases = 0;
    for (const auto &path : suite_paths()) {
        auto cc = compile(load_circuit(path));
        for (auto mode : {Mode::Forward, Mode::Backward}) {
            for (uint64_t seed : {1, 2, 3}) {
                auto r1 = estimate(cc, mode, 6000, seed, 1);
                for (int threads : {2, 8}) {
                    auto r = estimate(cc, mode, 6000, seed, threads);
                    c.expect(r.mean == r1.mean && r.empirical_stderr == r1.empirical_stderr &&
                                 r.max_abs_value == r1.max_abs_value,
                             "thread dependence in " + path);
                }
                thread_cases++;
            }
        }
    }
    c.expect(thread_cases >= 100, "too few thread cases");
    c.notes << "D<=R:" << dr << " duality:" << dual << " (" << worst_dual << ") submult:" << sub
            << " columns:" << columns << " (" << worst_col << ") roundtrip:150 (" << worst_rt
            << ") threads:" << thread_cases;
}

void criterion_8(Check &c) {
    auto start = Clock::now();
    const auto &set = stabilizer_states(2);
    for (auto f : {Family::A, Family::B, Family::C}) {
        CrossSectionOptions o;
        auto cs = cross_section(f, o);
        std::string fam(1, family_name(f));
        for (auto cls : {MagicClass::StabilizerMixture, MagicClass::Bound, MagicClass::Magic, MagicClass::Invalid}) {
            c.expect(cs.count(cls) > 0, fam + " has no " + magic_class_name(cls) + " points");
        }
        size_t mid = o.resolution / 2;
        c.expect(cs.at(mid, mid) == MagicClass::StabilizerMixture, fam + " origin not stabilizer");

        // Origin, the first point of each non-invalid class, and one fixed point.
        std::vector<std::pair<size_t, size_t>> picks = {{mid, mid}};
        for (auto cls : {MagicClass::Bound, MagicClass::Magic, MagicClass::StabilizerMixture}) {
            for (size_t i = 0; i < cs.labels.size(); i++) {
                if (cs.labels[i] == cls && !(i % o.resolution == mid && i / o.resolution == mid)) {
                    picks.emplace_back(i % o.resolution, i / o.resolution);
                    break;
                }
            }
        }
        picks.emplace_back(o.resolution / 3, 2 * o.resolution / 5);
        for (auto [ix, iy] : picks) {
            auto full = classify_point(family_state(f, cs.x(ix), cs.y(iy)), set, o.tolerance, true);
            c.expect(full == cs.at(ix, iy), fam + " full-lp disagreement");
        }
        c.notes << " " << fam << ": S=" << cs.count(MagicClass::StabilizerMixture)
                << " B=" << cs.count(MagicClass::Bound) << " M=" << cs.count(MagicClass::Magic)
                << " I=" << cs.count(MagicClass::Invalid);
    }
    c.notes << " time=" << seconds_since(start) << "s";
}

}  // namespace

int main() {
    std::vector<std::function<void(Check &)>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                          criterion_5, criterion_6, criterion_7, criterion_8};
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        Check c;
        try {
            criteria[i](c);
        } catch (const std::exception &e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        std::printf("criterion %zu: %s %s\n", i + 1, c.ok() ? "PASS" : "FAIL", c.notes.str().c_str());
        for (const auto &f : c.failures) {
            std::printf("    %s\n", f.c_str());
        }
        std::fflush(stdout);
        failed += !c.ok();
    }
    return failed == 0 ? 0 : 1;
}
