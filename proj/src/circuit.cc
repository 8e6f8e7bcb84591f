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

#include "pauli_shuffle/circuit.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pshuf {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string ptr(const std::string &base, const std::string &key) {
    return base + "/" + key;
}

std::string ptr(const std::string &base, size_t index) {
    return base + "/" + std::to_string(index);
}

const json &require(const json &obj, const std::string &key, const std::string &where) {
    if (!obj.is_object()) {
        throw CircuitError(where, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw CircuitError(where, "missing field '" + key + "'");
    }
    return *it;
}

double as_number(const json &v, const std::string &where) {
    if (!v.is_number()) {
        throw CircuitError(where, "expected a number");
    }
    return v.get<double>();
}

size_t as_index(const json &v, const std::string &where) {
    if (!v.is_number_integer() || v.get<int64_t>() < 0) {
        throw CircuitError(where, "expected a non-negative integer");
    }
    return v.get<size_t>();
}

std::vector<size_t> as_index_list(const json &v, const std::string &where) {
    if (!v.is_array()) {
        throw CircuitError(where, "expected an array of qubit indices");
    }
    std::vector<size_t> out;
    for (size_t k = 0; k < v.size(); k++) {
        out.push_back(as_index(v[k], ptr(where, k)));
    }
    return out;
}

cdouble as_complex(const json &v, const std::string &where) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw CircuitError(where, "expected a number or a [re, im] pair");
}

Eigen::MatrixXcd as_matrix(const json &v, const std::string &where) {
    if (!v.is_array() || v.empty() || !v[0].is_array() || v[0].empty()) {
        throw CircuitError(where, "expected a non-empty matrix (array of rows)");
    }
    auto rows = static_cast<Eigen::Index>(v.size());
    auto cols = static_cast<Eigen::Index>(v[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; r++) {
        auto rw = ptr(where, static_cast<size_t>(r));
        if (!v[r].is_array() || static_cast<Eigen::Index>(v[r].size()) != cols) {
            throw CircuitError(rw, "matrix rows have unequal length");
        }
        for (Eigen::Index c = 0; c < cols; c++) {
            m(r, c) = as_complex(v[r][c], ptr(rw, static_cast<size_t>(c)));
        }
    }
    return m;
}

json matrix_json(const Eigen::MatrixXcd &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(row);
    }
    return rows;
}

BlochVector qubit_state_from_density(const Eigen::MatrixXcd &m, const std::string &where) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw CircuitError(where, "custom qubit state must be a 2x2 density matrix");
    }
    DenseOperator op(1, m);
    if (!op.is_hermitian(1e-10)) {
        throw CircuitError(where, "custom qubit state is not Hermitian");
    }
    op.matrix = 0.5 * (m + m.adjoint());
    return bloch_from_dense(op);
}

void check_density_bloch(const BlochVector &b, const std::string &where) {
    if (std::abs(b[0] - 1.0 / static_cast<double>(uint64_t{1} << b.num_qubits)) > 1e-10) {
        throw CircuitError(where, "state is not normalized (trace != 1)");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense_from_bloch(b).matrix, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
        throw CircuitError(where, "state has a negative eigenvalue");
    }
}

QubitState parse_qubit_state(const json &v, const std::string &where) {
    QubitState s;
    if (v.is_string()) {
        auto name = v.get<std::string>();
        if (!is_named_qubit_state(name)) {
            throw CircuitError(where, "unknown state name '" + name + "'");
        }
        s.name = lower(name);
        s.bloch = named_qubit_state(name);
        return s;
    }
    if (v.is_object() && v.contains("density")) {
        s.bloch = qubit_state_from_density(as_matrix(v["density"], ptr(where, "density")), ptr(where, "density"));
    } else if (v.is_object() && v.contains("bloch")) {
        const auto &c = v["bloch"];
        if (!c.is_array() || c.size() != 4) {
            throw CircuitError(ptr(where, "bloch"), "expected 4 coefficients (I, X, Y, Z)");
        }
        Eigen::VectorXd coeffs(4);
        for (size_t k = 0; k < 4; k++) {
            coeffs[static_cast<Eigen::Index>(k)] = as_number(c[k], ptr(ptr(where, "bloch"), k));
        }
        s.bloch = BlochVector(1, coeffs);
    } else {
        throw CircuitError(where, "expected a state name or an object with 'density' or 'bloch'");
    }
    check_density_bloch(s.bloch, where);
    return s;
}

json qubit_state_json(const QubitState &s) {
    if (!s.name.empty()) {
        return s.name;
    }
    return json{{"bloch", std::vector<double>(s.bloch.coeffs.data(), s.bloch.coeffs.data() + 4)}};
}

Operation parse_operation(const json &v, const std::string &where) {
    if (!v.is_object()) {
        throw CircuitError(where, "expected an operation object");
    }
    const auto &g = require(v, "gate", where);
    if (!g.is_string()) {
        throw CircuitError(ptr(where, "gate"), "expected a gate name");
    }
    auto gate = lower(g.get<std::string>());
    Operation op;
    if (v.contains("targets")) {
        op.targets = as_index_list(v["targets"], ptr(where, "targets"));
    }
    auto param = [&](const char *key) { return as_number(require(v, key, where), ptr(where, key)); };
    try {
        if (is_known_unitary(gate)) {
            op.channel = ChannelSpec::unitary(gate);
        } else if (gate == "rz") {
            op.channel = ChannelSpec::rz(param("theta"));
        } else if (gate == "depolarizing") {
            op.channel = ChannelSpec::depolarizing(param("p"));
        } else if (gate == "dephasing") {
            op.channel = ChannelSpec::dephasing(param("p"));
        } else if (gate == "amplitude_damping") {
            op.channel = ChannelSpec::amplitude_damping(param("gamma"));
        } else if (gate == "trace_out") {
            op.channel = ChannelSpec::trace_out(std::max<size_t>(op.targets.size(), 1));
        } else if (gate == "append") {
            auto state = parse_qubit_state(require(v, "state", where), ptr(where, "state"));
            op.channel = ChannelSpec::append_state(state.bloch);
            op.channel.name = state.name;
        } else if (gate == "gadget") {
            op.channel = ChannelSpec::gadget();
        } else if (gate == "measure_control") {
            std::string c = "s";
            if (v.contains("clifford")) {
                if (!v["clifford"].is_string()) {
                    throw CircuitError(ptr(where, "clifford"), "expected a gate name");
                }
                c = v["clifford"].get<std::string>();
            }
            op.channel = ChannelSpec::measure_control(c);
        } else if (gate == "kraus") {
            const auto &list = require(v, "kraus", where);
            if (!list.is_array() || list.empty()) {
                throw CircuitError(ptr(where, "kraus"), "expected a non-empty list of matrices");
            }
            std::vector<Eigen::MatrixXcd> ops;
            for (size_t k = 0; k < list.size(); k++) {
                ops.push_back(as_matrix(list[k], ptr(ptr(where, "kraus"), k)));
            }
            op.channel = ChannelSpec::from_kraus(std::move(ops));
            // Completeness is enforced when the transfer matrix is built; check early for a clear message.
            auto din = op.channel.kraus[0].cols();
            Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(din, din);
            for (const auto &k : op.channel.kraus) {
                sum += k.adjoint() * k;
            }
            if ((sum - Eigen::MatrixXcd::Identity(din, din)).cwiseAbs().maxCoeff() > 1e-10) {
                throw CircuitError(ptr(where, "kraus"), "Kraus operators are not complete (sum K^dag K != I)");
            }
        } else {
            throw CircuitError(ptr(where, "gate"), "unknown gate '" + gate + "'");
        }
    } catch (const CircuitError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw CircuitError(where, e.what());
    }
    return op;
}

json operation_json(const Operation &op) {
    const auto &c = op.channel;
    json j;
    switch (c.kind) {
        case ChannelKind::Unitary:
            j["gate"] = c.name;
            break;
        case ChannelKind::Rz:
            j["gate"] = "rz";
            j["theta"] = c.parameter;
            break;
        case ChannelKind::Depolarizing:
            j["gate"] = "depolarizing";
            j["p"] = c.parameter;
            break;
        case ChannelKind::Dephasing:
            j["gate"] = "dephasing";
            j["p"] = c.parameter;
            break;
        case ChannelKind::AmplitudeDamping:
            j["gate"] = "amplitude_damping";
            j["gamma"] = c.parameter;
            break;
        case ChannelKind::TraceOut:
            j["gate"] = "trace_out";
            break;
        case ChannelKind::AppendState:
            j["gate"] = "append";
            j["state"] = qubit_state_json(QubitState{c.name, c.state});
            break;
        case ChannelKind::Gadget:
            j["gate"] = "gadget";
            break;
        case ChannelKind::MeasureControl:
            j["gate"] = "measure_control";
            j["clifford"] = c.name;
            break;
        case ChannelKind::Kraus: {
            j["gate"] = "kraus";
            json list = json::array();
            for (const auto &k : c.kraus) {
                list.push_back(matrix_json(k));
            }
            j["kraus"] = list;
            break;
        }
    }
    j["targets"] = op.targets;
    return j;
}

Observable parse_observable(const json &v, const std::string &where) {
    const auto &k = require(v, "kind", where);
    if (!k.is_string()) {
        throw CircuitError(ptr(where, "kind"), "expected an observable kind");
    }
    auto kind = lower(k.get<std::string>());
    try {
        if (kind == "product") {
            auto support = as_index_list(require(v, "support", where), ptr(where, "support"));
            const auto &f = require(v, "factors", where);
            if (!f.is_array()) {
                throw CircuitError(ptr(where, "factors"), "expected an array");
            }
            std::vector<Eigen::MatrixXcd> factors;
            std::vector<std::string> names;
            for (size_t q = 0; q < f.size(); q++) {
                auto fw = ptr(ptr(where, "factors"), q);
                if (f[q].is_string()) {
                    names.push_back(lower(f[q].get<std::string>()));
                    try {
                        factors.push_back(named_qubit_observable(names.back()));
                    } catch (const std::invalid_argument &e) {
                        throw CircuitError(fw, e.what());
                    }
                } else {
                    names.emplace_back();
                    factors.push_back(as_matrix(f[q], fw));
                }
            }
            return Observable::product(std::move(support), std::move(factors), std::move(names));
        }
        if (kind == "basis_projector") {
            auto support = as_index_list(require(v, "support", where), ptr(where, "support"));
            const auto &b = require(v, "bits", where);
            if (!b.is_array()) {
                throw CircuitError(ptr(where, "bits"), "expected an array of bits");
            }
            std::vector<int> bits;
            for (size_t q = 0; q < b.size(); q++) {
                bits.push_back(static_cast<int>(as_index(b[q], ptr(ptr(where, "bits"), q))));
            }
            return Observable::basis_projector(std::move(support), std::move(bits));
        }
        if (kind == "pauli") {
            const auto &s = require(v, "string", where);
            if (!s.is_string()) {
                throw CircuitError(ptr(where, "string"), "expected a Pauli string such as \"+XZ\"");
            }
            return Observable::pauli(PauliString::from_text(s.get<std::string>()));
        }
        if (kind == "dense_local") {
            auto support = as_index_list(require(v, "support", where), ptr(where, "support"));
            auto m = as_matrix(require(v, "matrix", where), ptr(where, "matrix"));
            auto dim = Eigen::Index{1} << support.size();
            if (m.rows() != dim || m.cols() != dim) {
                throw CircuitError(ptr(where, "matrix"), "matrix size does not match support");
            }
            return Observable::dense_local(std::move(support), std::move(m));
        }
    } catch (const CircuitError &) {
        throw;
    } catch (const std::exception &e) {
        throw CircuitError(where, e.what());
    }
    throw CircuitError(ptr(where, "kind"), "unknown observable kind '" + kind + "'");
}

json observable_json(const Observable &o) {
    json j;
    j["kind"] = observable_kind_name(o.kind());
    switch (o.kind()) {
        case ObservableKind::Product: {
            j["support"] = o.support();
            json f = json::array();
            for (size_t q = 0; q < o.blocks().size(); q++) {
                const auto &name = o.factor_names()[q];
                if (name.empty()) {
                    f.push_back(matrix_json(o.blocks()[q].matrix));
                } else {
                    f.push_back(name);
                }
            }
            j["factors"] = f;
            break;
        }
        case ObservableKind::BasisProjector:
            j["support"] = o.support();
            j["bits"] = o.bits();
            break;
        case ObservableKind::Pauli:
            j["string"] = o.pauli_string().str();
            break;
        case ObservableKind::DenseLocal:
            j["support"] = o.support();
            j["matrix"] = matrix_json(o.blocks()[0].matrix);
            break;
    }
    return j;
}

std::string line_column(std::string_view text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::vector<Placement> Circuit::placements() const {
    std::vector<Placement> out;
    size_t width = num_qubits;
    for (size_t k = 0; k < ops.size(); k++) {
        const auto &op = ops[k];
        try {
            out.emplace_back(width, op.targets, op.channel.in_qubits(), op.channel.out_qubits());
        } catch (const std::exception &e) {
            throw CircuitError("/ops/" + std::to_string(k) + "/targets", e.what());
        }
        width = out.back().width_after();
        if (width == 0) {
            throw CircuitError("/ops/" + std::to_string(k), "register would become empty");
        }
    }
    if (observable.kind() == ObservableKind::Pauli && observable.pauli_string().num_qubits() != width) {
        throw CircuitError("/observable/string", "Pauli observable must cover all " + std::to_string(width) + " final qubits");
    }
    if (observable.min_width() > width) {
        throw CircuitError(
            "/observable/support", "observable touches qubit " + std::to_string(observable.min_width() - 1) + " but the final register has " +
                               std::to_string(width) + " qubit(s)");
    }
    return out;
}

size_t Circuit::final_width() const {
    auto p = placements();
    return p.empty() ? num_qubits : p.back().width_after();
}

std::vector<int64_t> Circuit::final_register_map() const {
    std::vector<int64_t> reg(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        reg[q] = static_cast<int64_t>(q);
    }
    int64_t appended = 0;
    for (const auto &p : placements()) {
        std::vector<int64_t> next(p.width_after(), 0);
        auto surv = p.survivor_map();
        for (size_t q = 0; q < reg.size(); q++) {
            if (surv[q] >= 0) {
                next[static_cast<size_t>(surv[q])] = reg[q];
            }
        }
        for (size_t j = p.in_qubits(); j < p.out_qubits(); j++) {
            next[p.output_positions()[j]] = -(++appended);
        }
        reg = std::move(next);
    }
    return reg;
}

std::vector<BlochVector> Circuit::initial_bloch() const {
    std::vector<BlochVector> out;
    for (const auto &s : initial) {
        out.push_back(s.bloch);
    }
    return out;
}

Circuit parse_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw CircuitError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
    }
    Circuit c;
    if (!doc.is_object()) {
        throw CircuitError("", "circuit document must be a JSON object");
    }
    c.num_qubits = as_index(require(doc, "num_qubits", ""), "/num_qubits");
    if (c.num_qubits == 0) {
        throw CircuitError("/num_qubits", "circuit needs at least one qubit");
    }
    const auto &init = require(doc, "initial", "");
    if (!init.is_array() || init.size() != c.num_qubits) {
        throw CircuitError("/initial", "expected one state per qubit (" + std::to_string(c.num_qubits) + ")");
    }
    for (size_t q = 0; q < init.size(); q++) {
        c.initial.push_back(parse_qubit_state(init[q], ptr("/initial", q)));
    }
    if (doc.contains("ops")) {
        const auto &ops = doc["ops"];
        if (!ops.is_array()) {
            throw CircuitError("/ops", "expected an array");
        }
        for (size_t k = 0; k < ops.size(); k++) {
            c.ops.push_back(parse_operation(ops[k], ptr("/ops", k)));
        }
    }
    c.observable = parse_observable(require(doc, "observable", ""), "/observable");
    c.placements();
    return c;
}

Circuit load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw CircuitError(path, "cannot open file");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_circuit(buf.str());
    } catch (const CircuitError &e) {
        throw CircuitError(path + ":" + e.where(), std::string(e.what()).substr(e.where().empty() ? 0 : e.where().size() + 2));
    }
}

std::string serialize_circuit(const Circuit &circuit, int indent) {
    json doc;
    doc["num_qubits"] = circuit.num_qubits;
    json init = json::array();
    for (const auto &s : circuit.initial) {
        init.push_back(qubit_state_json(s));
    }
    doc["initial"] = init;
    json ops = json::array();
    for (const auto &op : circuit.ops) {
        ops.push_back(operation_json(op));
    }
    doc["ops"] = ops;
    doc["observable"] = observable_json(circuit.observable);
    return doc.dump(indent);
}

}  // namespace pshuf
