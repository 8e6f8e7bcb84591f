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

#include "pauli_shuffle/magic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "pauli_shuffle/sampler.h"
#include "pauli_shuffle/simplex.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pshuf {

namespace {

bool indices_commute(uint64_t a, uint64_t b, size_t n) {
    size_t anti = 0;
    for (size_t q = 0; q < n; q++) {
        auto da = static_cast<uint64_t>(digit(a, q));
        auto db = static_cast<uint64_t>(digit(b, q));
        anti += (da != 0 && db != 0 && da != db) ? 1 : 0;
    }
    return anti % 2 == 0;
}

// Unsigned Pauli product is XOR of indices in this encoding.
std::vector<uint64_t> span_of(const std::vector<uint64_t> &generators) {
    std::vector<uint64_t> out{0};
    for (auto g : generators) {
        auto size = out.size();
        for (size_t k = 0; k < size; k++) {
            out.push_back(out[k] ^ g);
        }
    }
    return out;
}

void search_groups(size_t n, std::vector<uint64_t> &chosen, std::set<std::vector<uint64_t>> &seen,
                   std::vector<std::vector<uint64_t>> &generator_sets) {
    if (chosen.size() == n) {
        auto elements = span_of(chosen);
        std::sort(elements.begin(), elements.end());
        if (seen.insert(elements).second) {
            generator_sets.push_back(chosen);
        }
        return;
    }
    auto current = span_of(chosen);
    std::vector<bool> in_span(pow4(n), false);
    for (auto e : current) {
        in_span[e] = true;
    }
    uint64_t start = chosen.empty() ? 1 : chosen.back() + 1;
    for (uint64_t p = start; p < pow4(n); p++) {
        if (in_span[p]) {
            continue;
        }
        bool ok = true;
        for (auto g : chosen) {
            if (!indices_commute(g, p, n)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        chosen.push_back(p);
        search_groups(n, chosen, seen, generator_sets);
        chosen.pop_back();
    }
}

Eigen::MatrixXcd hermitian_from_bloch(const BlochVector &v) {
    return dense_from_bloch(v).matrix;
}

int team_size(int threads) {
    if (threads <= 0) {
        threads = threads_from_environment();
    }
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

uint64_t stabilizer_state_count(size_t n) {
    uint64_t count = uint64_t{1} << n;
    for (size_t k = 1; k <= n; k++) {
        count *= (uint64_t{1} << k) + 1;
    }
    return count;
}

StabilizerStateSet enumerate_stabilizer_states(size_t n) {
    if (n < 1 || n > kMaxStabilizerQubits) {
        throw std::invalid_argument("stabilizer enumeration supports 1 to 3 qubits, got " + std::to_string(n));
    }
    std::vector<uint64_t> chosen;
    std::set<std::vector<uint64_t>> seen;
    std::vector<std::vector<uint64_t>> generator_sets;
    search_groups(n, chosen, seen, generator_sets);

    StabilizerStateSet set;
    set.num_qubits = n;
    double scale = 1.0 / static_cast<double>(uint64_t{1} << n);
    for (const auto &gens : generator_sets) {
        for (uint64_t signs = 0; signs < (uint64_t{1} << n); signs++) {
            BlochVector v = BlochVector::zero(n);
            for (uint64_t subset = 0; subset < (uint64_t{1} << n); subset++) {
                PauliString element(n);
                Phase phase{};
                for (size_t k = 0; k < n; k++) {
                    if ((subset >> k) & 1) {
                        auto g = PauliString::from_index(gens[k], n);
                        g.set_sign((signs >> k) & 1 ? -1 : +1);
                        auto [ph, prod] = pauli_product(element, g);
                        phase = phase * ph;
                        element = prod;
                    }
                }
                if (!phase.is_real()) {
                    throw std::logic_error("stabilizer group element with imaginary phase");
                }
                v.coeffs[static_cast<Eigen::Index>(element.index())] = phase.sign() * scale;
            }
            set.states.push_back(std::move(v));
        }
    }
    if (set.states.size() != stabilizer_state_count(n)) {
        throw std::logic_error("stabilizer enumeration produced the wrong number of states");
    }
    auto dim = static_cast<Eigen::Index>(pow4(n));
    set.scaled_columns.resize(dim, static_cast<Eigen::Index>(set.states.size()));
    for (size_t s = 0; s < set.states.size(); s++) {
        set.scaled_columns.col(static_cast<Eigen::Index>(s)) =
            set.states[s].coeffs * static_cast<double>(uint64_t{1} << n);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(set.scaled_columns);
    if (qr.rank() != dim) {
        throw std::logic_error("stabilizer states do not span the operator space");
    }
    for (Eigen::Index k = 0; k < dim; k++) {
        set.spanning_columns.push_back(qr.colsPermutation().indices()[k]);
    }
    return set;
}

const StabilizerStateSet &stabilizer_states(size_t n) {
    static std::once_flag flags[kMaxStabilizerQubits + 1];
    static StabilizerStateSet sets[kMaxStabilizerQubits + 1];
    if (n < 1 || n > kMaxStabilizerQubits) {
        throw std::invalid_argument("stabilizer enumeration supports 1 to 3 qubits, got " + std::to_string(n));
    }
    std::call_once(flags[n], [n] { sets[n] = enumerate_stabilizer_states(n); });
    return sets[n];
}

double d_measure(const BlochVector &v) {
    return v.l1_norm();
}

RobustnessResult robustness_decomposition(const BlochVector &v, const StabilizerStateSet &set) {
    if (v.num_qubits != set.num_qubits) {
        throw std::invalid_argument("state and stabilizer set have different qubit counts");
    }
    const auto &s = set.scaled_columns;
    auto rows = s.rows();
    auto cols = s.cols();
    double scale = static_cast<double>(uint64_t{1} << v.num_qubits);

    Eigen::MatrixXd a(rows, 2 * cols);
    a.leftCols(cols) = s;
    a.rightCols(cols) = -s;
    Eigen::VectorXd b = v.coeffs * scale;
    Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * cols);

    // q = B^-1 b on the spanning states, with each negative weight moved to
    // the negated copy of its column, is a feasible starting point.
    std::vector<Eigen::Index> start;
    if (!set.spanning_columns.empty()) {
        Eigen::MatrixXd basis(rows, rows);
        for (Eigen::Index k = 0; k < rows; k++) {
            basis.col(k) = s.col(set.spanning_columns[static_cast<size_t>(k)]);
        }
        Eigen::VectorXd q = basis.partialPivLu().solve(b);
        for (Eigen::Index k = 0; k < rows; k++) {
            auto j = set.spanning_columns[static_cast<size_t>(k)];
            start.push_back(q[k] >= 0 ? j : j + cols);
        }
    }

    auto lp = solve_standard_form(a, b, c, SimplexOptions{}, start);
    if (lp.status != LpStatus::Optimal) {
        throw std::runtime_error(std::string("robustness LP did not reach optimality: ") + lp_status_name(lp.status));
    }
    RobustnessResult r;
    r.weights = lp.x.head(cols) - lp.x.tail(cols);
    r.value = r.weights.lpNorm<1>();
    r.residual = (s * r.weights / scale - v.coeffs).lpNorm<Eigen::Infinity>();
    r.iterations = lp.iterations;
    if (r.residual > 1e-8) {
        throw std::runtime_error("robustness decomposition residual " + std::to_string(r.residual) + " exceeds 1e-8");
    }
    return r;
}

double robustness(const BlochVector &v, const StabilizerStateSet &set) {
    return robustness_decomposition(v, set).value;
}

const char *magic_class_name(MagicClass c) {
    switch (c) {
        case MagicClass::StabilizerMixture:
            return "stabilizer";
        case MagicClass::Bound:
            return "bound";
        case MagicClass::Magic:
            return "magic";
        case MagicClass::Invalid:
            return "invalid";
    }
    return "?";
}

Classification classify(const BlochVector &v, const StabilizerStateSet &set, double tol, bool full_lp) {
    Classification out;
    out.tolerance = tol;
    out.d_value = d_measure(v);
    bool magic_by_d = out.d_value > 1 + tol;
    if (magic_by_d && !full_lp) {
        out.label = MagicClass::Magic;
        return out;
    }
    double r = robustness(v, set);
    out.r_value = r;
    if (magic_by_d) {
        out.label = MagicClass::Magic;
    } else if (r <= 1 + tol) {
        out.label = MagicClass::StabilizerMixture;
    } else {
        out.label = MagicClass::Bound;
    }
    return out;
}

Classification classify(const BlochVector &v, double tol, bool full_lp) {
    return classify(v, stabilizer_states(v.num_qubits), tol, full_lp);
}

double min_eigenvalue(const BlochVector &v) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_from_bloch(v), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_valid_density(const BlochVector &v, double eigen_floor) {
    return std::abs(v.coeffs[0] * static_cast<double>(uint64_t{1} << v.num_qubits) - 1.0) <= 1e-9 &&
           min_eigenvalue(v) >= eigen_floor;
}

BlochVector random_density(size_t n, PhiloxStream &rng, size_t rank) {
    if (n < 1 || n > kMaxBlochQubits) {
        throw std::invalid_argument("random_density supports 1 to 8 qubits");
    }
    auto dim = size_t{1} << n;
    if (rank == 0) {
        rank = dim;
    }
    if (rank > dim) {
        throw std::invalid_argument("rank exceeds the Hilbert space dimension");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
    for (Eigen::Index c = 0; c < g.cols(); c++) {
        for (Eigen::Index r = 0; r < g.rows(); r++) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = cdouble(re, im);
        }
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()).eval() * 0.5;
    return bloch_from_dense(DenseOperator(n, rho));
}

double CensusResult::stabilizer_fraction() const {
    return count == 0 ? 0.0 : static_cast<double>(stabilizer) / static_cast<double>(count);
}
double CensusResult::bound_fraction() const {
    return count == 0 ? 0.0 : static_cast<double>(bound) / static_cast<double>(count);
}
double CensusResult::magic_fraction() const {
    return count == 0 ? 0.0 : static_cast<double>(magic) / static_cast<double>(count);
}

namespace {

CensusResult tally(size_t n, uint64_t count, uint64_t seed, const std::vector<MagicClass> &labels) {
    CensusResult r;
    r.num_qubits = n;
    r.count = count;
    r.seed = seed;
    for (auto l : labels) {
        switch (l) {
            case MagicClass::StabilizerMixture:
                r.stabilizer++;
                break;
            case MagicClass::Bound:
                r.bound++;
                break;
            case MagicClass::Magic:
                r.magic++;
                break;
            case MagicClass::Invalid:
                throw std::logic_error("census drew an invalid state");
        }
    }
    return r;
}

MagicClass census_label(size_t n, uint64_t seed, uint64_t i, const StabilizerStateSet &set, bool full_lp) {
    PhiloxStream rng(seed, i);
    auto v = random_density(n, rng);
    return classify(v, set, kClassifyTolerance, full_lp).label;
}

}  // namespace

CensusResult census(size_t n, uint64_t count, uint64_t seed, int threads, bool full_lp) {
    if (count == 0) {
        throw std::invalid_argument("census needs at least one state");
    }
    const auto &set = stabilizer_states(n);
    std::vector<MagicClass> labels(count);
    auto total = static_cast<int64_t>(count);
    int team = team_size(threads);
    (void)team;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256) num_threads(team)
#endif
    for (int64_t i = 0; i < total; i++) {
        labels[static_cast<size_t>(i)] = census_label(n, seed, static_cast<uint64_t>(i), set, full_lp);
    }
    return tally(n, count, seed, labels);
}

CensusResult census_serial(size_t n, uint64_t count, uint64_t seed, bool full_lp) {
    if (count == 0) {
        throw std::invalid_argument("census needs at least one state");
    }
    const auto &set = stabilizer_states(n);
    std::vector<MagicClass> labels;
    labels.reserve(count);
    for (uint64_t i = 0; i < count; i++) {
        labels.push_back(census_label(n, seed, i, set, full_lp));
    }
    return tally(n, count, seed, labels);
}

Family family_from_name(std::string_view name) {
    if (name == "a" || name == "A") {
        return Family::A;
    }
    if (name == "b" || name == "B") {
        return Family::B;
    }
    if (name == "c" || name == "C") {
        return Family::C;
    }
    throw std::invalid_argument("unknown cross-section family '" + std::string(name) + "' (expected a, b or c)");
}

char family_name(Family f) {
    switch (f) {
        case Family::A:
            return 'a';
        case Family::B:
            return 'b';
        case Family::C:
            return 'c';
    }
    return '?';
}

BlochVector family_state(Family f, double x, double y) {
    auto v = BlochVector::zero(2);
    auto set = [&v](const char *text, double value) {
        v.coeffs[static_cast<Eigen::Index>(PauliString::from_text(text).index())] += value;
    };
    set("II", 0.25);
    switch (f) {
        case Family::A:
            set("XX", x);
            set("ZZ", x);
            set("YY", -x);
            set("ZI", y);
            set("IZ", y);
            break;
        case Family::B:
            set("ZZ", x);
            set("XX", y);
            set("XY", y);
            set("YX", y);
            set("YY", -y);
            break;
        case Family::C:
            set("ZZ", 0.2);
            set("XX", x);
            set("YY", -x);
            set("XY", y);
            set("YX", y);
            break;
    }
    return v;
}

double CrossSection::x(size_t ix) const {
    if (options.resolution < 2) {
        return options.x_min;
    }
    return options.x_min + (options.x_max - options.x_min) * static_cast<double>(ix) /
                               static_cast<double>(options.resolution - 1);
}

double CrossSection::y(size_t iy) const {
    if (options.resolution < 2) {
        return options.y_min;
    }
    return options.y_min + (options.y_max - options.y_min) * static_cast<double>(iy) /
                               static_cast<double>(options.resolution - 1);
}

uint64_t CrossSection::count(MagicClass c) const {
    return static_cast<uint64_t>(std::count(labels.begin(), labels.end(), c));
}

void CrossSection::write_csv(std::ostream &out) const {
    out << "x,y,class\n";
    auto precision = out.precision(10);
    for (size_t iy = 0; iy < options.resolution; iy++) {
        for (size_t ix = 0; ix < options.resolution; ix++) {
            out << x(ix) << ',' << y(iy) << ',' << magic_class_name(at(ix, iy)) << '\n';
        }
    }
    out.precision(precision);
}

MagicClass classify_point(const BlochVector &v, const StabilizerStateSet &set, double tol, bool full_lp) {
    if (min_eigenvalue(v) < kInvalidEigenvalue) {
        return MagicClass::Invalid;
    }
    return classify(v, set, tol, full_lp).label;
}

namespace {

CrossSection empty_section(Family f, const CrossSectionOptions &options) {
    if (options.resolution == 0) {
        throw std::invalid_argument("cross-section resolution must be positive");
    }
    CrossSection out;
    out.family = f;
    out.options = options;
    out.labels.assign(options.resolution * options.resolution, MagicClass::Invalid);
    return out;
}

}  // namespace

CrossSection cross_section(Family f, const CrossSectionOptions &options, int threads) {
    auto out = empty_section(f, options);
    const auto &set = stabilizer_states(2);
    auto total = static_cast<int64_t>(out.labels.size());
    int team = team_size(threads);
    (void)team;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(team)
#endif
    for (int64_t k = 0; k < total; k++) {
        auto ix = static_cast<size_t>(k) % options.resolution;
        auto iy = static_cast<size_t>(k) / options.resolution;
        out.labels[static_cast<size_t>(k)] =
            classify_point(family_state(f, out.x(ix), out.y(iy)), set, options.tolerance, options.full_lp);
    }
    return out;
}

CrossSection cross_section_serial(Family f, const CrossSectionOptions &options) {
    auto out = empty_section(f, options);
    const auto &set = stabilizer_states(2);
    for (size_t iy = 0; iy < options.resolution; iy++) {
        for (size_t ix = 0; ix < options.resolution; ix++) {
            out.labels[iy * options.resolution + ix] =
                classify_point(family_state(f, out.x(ix), out.y(iy)), set, options.tolerance, options.full_lp);
        }
    }
    return out;
}

}  // namespace pshuf
