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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pauli_shuffle/channel_spec.h"
#include "pauli_shuffle/circuit.h"
#include "pauli_shuffle/magic.h"
#include "pauli_shuffle/oracle.h"
#include "pauli_shuffle/sampler.h"
#include "pauli_shuffle/transfer_matrix.h"

using nlohmann::json;
using namespace pshuf;

namespace {

constexpr const char *kVersion = "0.1.0";

// Numerical or solver trouble; maps to exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    std::string input;
    std::string mode;
    double epsilon = 0;
    double delta = 0;
    uint64_t samples = 0;
    uint64_t seed = 0;
    bool precompose = false;
    bool full_lp = false;
    std::string out;
    size_t resolution = 301;
    std::string plane = "a";
    size_t qubits = 2;
    uint64_t count = 100000;
    int threads = 0;
};

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write " + path);
    }
    out << text;
}

void emit(const json &report, const std::string &path) {
    emit(report.dump(2) + "\n", path);
}

Mode parse_mode(const std::string &s) {
    if (s == "forward") {
        return Mode::Forward;
    }
    if (s == "backward") {
        return Mode::Backward;
    }
    throw std::invalid_argument("unknown mode '" + s + "'");
}

json estimate_json(const EstimateReport &r) {
    return json{
        {"mean", r.mean},
        {"n_samples", r.n_samples},
        {"empirical_stderr", r.empirical_stderr},
        {"range_bound", r.range_bound},
        {"mode", mode_name(r.mode)},
        {"seed", r.seed},
        {"max_abs_value", r.max_abs_value},
    };
}

int run_estimate(const Args &a) {
    auto circuit = load_circuit(a.input);
    auto cc = compile(circuit, a.precompose);
    Mode mode = a.mode.empty() ? preferred_mode(cc) : parse_mode(a.mode);
    json budget;
    uint64_t n = a.samples;
    if (n == 0) {
        double eps = a.epsilon > 0 ? a.epsilon : 0.01;
        double delta = a.delta > 0 ? a.delta : 0.05;
        auto b = make_budget(cc, mode, eps, delta);
        n = b.n_samples;
        budget = json{{"epsilon", eps}, {"delta", delta}, {"range_bound", b.range_bound}, {"n_samples", n}};
    } else if (a.epsilon > 0 || a.delta > 0) {
        throw std::invalid_argument("--samples cannot be combined with --epsilon/--delta");
    }
    auto r = estimate(cc, mode, n, a.seed, a.threads);
    if (!std::isfinite(r.mean)) {
        throw NumericalError("estimate is not finite");
    }
    json report = estimate_json(r);
    report["version"] = kVersion;
    report["circuit"] = a.input;
    report["precompose"] = a.precompose;
    report["mode_selection"] = a.mode.empty() ? "auto" : "forced";
    if (!budget.is_null()) {
        report["budget"] = budget;
    }
    emit(report, a.out);
    return 0;
}

int run_cost(const Args &a) {
    auto circuit = load_circuit(a.input);
    auto cc = compile(circuit, a.precompose);
    json ops = json::array();
    double forward_product = 1;
    double backward_product = 1;
    for (const auto &op : cc.ops) {
        double f = channel_cost(op.forward);
        double b = channel_cost(op.backward);
        forward_product *= f;
        backward_product *= b;
        ops.push_back(json{{"label", op.label}, {"forward_cost", f}, {"backward_cost", b}, {"choi_cost", choi_cost(op.forward)}});
    }
    double state_d = 1;
    for (const auto &q : cc.initial) {
        state_d *= d_measure(q);
    }
    double eps = a.epsilon > 0 ? a.epsilon : 0.01;
    double delta = a.delta > 0 ? a.delta : 0.05;
    double fwd = range_bound(cc, Mode::Forward);
    double bwd = range_bound(cc, Mode::Backward);
    size_t padding = cc.final_width - cc.observable.support().size();
    auto preferred = preferred_mode(cc);
    json report{
        {"version", kVersion},
        {"circuit", a.input},
        {"precompose", a.precompose},
        {"ops", ops},
        {"state_d", state_d},
        {"observable_d", cc.observable.d_measure()},
        {"forward_cost_product", forward_product},
        {"backward_cost_product", backward_product},
        {"forward_squared_cost_factor", std::pow(state_d * forward_product, 2)},
        {"identity_padding_qubits", padding},
        {"forward_padding_factor", std::ldexp(1.0, static_cast<int>(padding))},
        {"range_bound", {{"forward", fwd}, {"backward", bwd}}},
        {"hoeffding",
         {{"epsilon", eps},
          {"delta", delta},
          {"forward", hoeffding_samples(fwd, eps, delta)},
          {"backward", hoeffding_samples(bwd, eps, delta)}}},
        {"recommended_mode", mode_name(preferred)},
    };
    emit(report, a.out);
    return 0;
}

int run_oracle(const Args &a) {
    auto circuit = load_circuit(a.input);
    double value = exact_value(circuit);
    emit(json{{"version", kVersion}, {"circuit", a.input}, {"mode", "oracle"}, {"value", value}}, a.out);
    return 0;
}

// State files hold one of:
//   {"product": ["A", "zero"]}          named single-qubit states, qubit 0 first
//   {"bloch": [c_0, c_1, ...]}           4^n Pauli coefficients
//   {"density": [[...], ...]}            2^n x 2^n matrix; entries are numbers or [re, im]
BlochVector load_state(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(path + ": invalid JSON: " + e.what());
    }
    if (doc.contains("product")) {
        BlochVector v;
        for (const auto &name : doc["product"]) {
            auto q = named_qubit_state(name.get<std::string>());
            v = v.num_qubits == 0 ? q : tensor(v, q);
        }
        if (v.num_qubits == 0) {
            throw std::invalid_argument(path + ": empty product");
        }
        return v;
    }
    if (doc.contains("bloch")) {
        auto c = doc["bloch"].get<std::vector<double>>();
        size_t n = 0;
        while (pow4(n) < c.size()) {
            n++;
        }
        if (pow4(n) != c.size() || n == 0) {
            throw std::invalid_argument(path + ": bloch length must be 4^n");
        }
        return BlochVector(n, Eigen::Map<Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
    }
    if (doc.contains("density")) {
        const auto &rows = doc["density"];
        auto dim = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXcd m(dim, dim);
        for (Eigen::Index r = 0; r < dim; r++) {
            if (static_cast<Eigen::Index>(rows[r].size()) != dim) {
                throw std::invalid_argument(path + ": density matrix must be square");
            }
            for (Eigen::Index c = 0; c < dim; c++) {
                const auto &e = rows[r][c];
                m(r, c) = e.is_array() ? cdouble(e.at(0).get<double>(), e.at(1).get<double>()) : cdouble(e.get<double>(), 0);
            }
        }
        size_t n = 0;
        while ((Eigen::Index{1} << n) < dim) {
            n++;
        }
        if ((Eigen::Index{1} << n) != dim || n == 0) {
            throw std::invalid_argument(path + ": density dimension must be 2^n");
        }
        return bloch_from_dense(DenseOperator(n, m));
    }
    throw std::invalid_argument(path + ": expected a 'product', 'bloch' or 'density' field");
}

int run_classify(const Args &a) {
    auto v = load_state(a.input);
    if (v.num_qubits > kMaxStabilizerQubits) {
        throw std::invalid_argument("classification supports at most 3 qubits");
    }
    if (std::abs(std::ldexp(v[0], static_cast<int>(v.num_qubits)) - 1) > 1e-10) {
        throw std::invalid_argument("state does not have unit trace");
    }
    json report{{"version", kVersion}, {"state", a.input}, {"num_qubits", v.num_qubits}, {"full_lp", a.full_lp}};
    double lambda = min_eigenvalue(v);
    report["min_eigenvalue"] = lambda;
    if (lambda < kInvalidEigenvalue) {
        report["label"] = magic_class_name(MagicClass::Invalid);
        report["d_value"] = d_measure(v);
    } else {
        Classification c;
        try {
            c = classify(v, kClassifyTolerance, a.full_lp);
        } catch (const std::runtime_error &e) {
            throw NumericalError(e.what());
        }
        report["label"] = magic_class_name(c.label);
        report["d_value"] = c.d_value;
        report["r_value"] = c.r_value ? json(*c.r_value) : json(nullptr);
        report["tolerance"] = c.tolerance;
    }
    emit(report, a.out);
    return 0;
}

int run_census(const Args &a) {
    if (a.qubits < 1 || a.qubits > kMaxStabilizerQubits) {
        throw std::invalid_argument("--qubits must be 1, 2 or 3");
    }
    CensusResult r;
    try {
        r = census(a.qubits, a.count, a.seed, a.threads, a.full_lp);
    } catch (const std::runtime_error &e) {
        throw NumericalError(e.what());
    }
    json report{
        {"version", kVersion},
        {"num_qubits", r.num_qubits},
        {"count", r.count},
        {"seed", r.seed},
        {"measure", r.measure},
        {"full_lp", a.full_lp},
        {"counts", {{"stabilizer", r.stabilizer}, {"bound", r.bound}, {"magic", r.magic}}},
        {"fractions",
         {{"stabilizer", r.stabilizer_fraction()}, {"bound", r.bound_fraction()}, {"magic", r.magic_fraction()}}},
    };
    emit(report, a.out);
    return 0;
}

int run_cross_section(const Args &a) {
    CrossSectionOptions o;
    o.resolution = a.resolution;
    o.full_lp = a.full_lp;
    if (o.resolution < 2) {
        throw std::invalid_argument("--resolution must be at least 2");
    }
    CrossSection cs;
    try {
        cs = cross_section(family_from_name(a.plane), o, a.threads);
    } catch (const std::runtime_error &e) {
        throw NumericalError(e.what());
    }
    std::ostringstream csv;
    cs.write_csv(csv);
    emit(csv.str(), a.out);
    return 0;
}

int run_choi(const Args &a) {
    auto circuit = load_circuit(a.input);
    json ops = json::array();
    for (const auto &op : circuit.ops) {
        auto tm = build_named(op.channel);
        ops.push_back(json{{"label", op.channel.label()}, {"choi_cost", choi_cost(tm)}, {"max_cost", channel_cost(tm)}});
    }
    emit(json{{"version", kVersion}, {"circuit", a.input}, {"ops", ops}}, a.out);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quasiprobability sampling of circuits in the Pauli basis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Args args;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--out", args.out, "Write the report here instead of stdout");
        sub->add_option("--threads", args.threads, "Worker threads (0: PAULI_SHUFFLE_THREADS or all)");
    };

    auto *est = app.add_subcommand("estimate", "Monte Carlo estimate of Tr(E Lambda(rho))");
    est->add_option("circuit", args.input)->required();
    est->add_option("--mode", args.mode)->check(CLI::IsMember({"forward", "backward"}));
    est->add_option("--epsilon", args.epsilon);
    est->add_option("--delta", args.delta);
    est->add_option("--samples", args.samples);
    est->add_option("--seed", args.seed);
    est->add_flag("--precompose", args.precompose);
    add_common(est);

    auto *cost = app.add_subcommand("cost", "Channel costs, range bounds and sample budgets");
    cost->add_option("circuit", args.input)->required();
    cost->add_option("--epsilon", args.epsilon);
    cost->add_option("--delta", args.delta);
    cost->add_flag("--precompose", args.precompose);
    add_common(cost);

    auto *orc = app.add_subcommand("oracle", "Exact value from the dense simulator");
    orc->add_option("circuit", args.input)->required();
    add_common(orc);

    auto *cls = app.add_subcommand("classify", "Stabilizer / bound / magic label of a state");
    cls->add_option("state", args.input)->required();
    cls->add_flag("--full-lp", args.full_lp);
    add_common(cls);

    auto *cen = app.add_subcommand("census", "Class fractions of random density matrices");
    cen->add_option("--qubits", args.qubits);
    cen->add_option("--count", args.count);
    cen->add_option("--seed", args.seed);
    cen->add_flag("--full-lp", args.full_lp);
    add_common(cen);

    auto *xs = app.add_subcommand("cross-section", "Classification raster of a two-qubit family");
    xs->add_option("--plane", args.plane)->check(CLI::IsMember({"a", "b", "c"}));
    xs->add_option("--resolution", args.resolution);
    xs->add_flag("--full-lp", args.full_lp);
    add_common(xs);

    auto *choi = app.add_subcommand("choi", "Choi-state and worst-case cost of every channel");
    choi->add_option("circuit", args.input)->required();
    add_common(choi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (est->parsed()) {
            return run_estimate(args);
        }
        if (cost->parsed()) {
            return run_cost(args);
        }
        if (orc->parsed()) {
            return run_oracle(args);
        }
        if (cls->parsed()) {
            return run_classify(args);
        }
        if (cen->parsed()) {
            return run_census(args);
        }
        if (xs->parsed()) {
            return run_cross_section(args);
        }
        return run_choi(args);
    } catch (const NumericalError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const CircuitError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const json::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
