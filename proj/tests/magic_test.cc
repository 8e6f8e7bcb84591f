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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "oracles.h"

using namespace pshuf;

namespace {

BlochVector bloch(const Eigen::MatrixXcd &rho, size_t n) {
    return BlochVector(n, pshuf_test::bloch_of(rho, n));
}

}  // namespace

TEST(magic, stabilizer_counts) {
    EXPECT_EQ(stabilizer_state_count(1), 6u);
    EXPECT_EQ(stabilizer_state_count(2), 60u);
    EXPECT_EQ(stabilizer_state_count(3), 1080u);
    EXPECT_EQ(stabilizer_state_count(4), 36720u);
    for (size_t n = 1; n <= 3; n++) {
        EXPECT_EQ(stabilizer_states(n).size(), stabilizer_state_count(n));
    }
    EXPECT_THROW(enumerate_stabilizer_states(0), std::invalid_argument);
    EXPECT_THROW(enumerate_stabilizer_states(4), std::invalid_argument);
}

TEST(magic, stabilizer_states_are_pure_distinct_and_unit_cost) {
    for (size_t n = 1; n <= 3; n++) {
        const auto &set = stabilizer_states(n);
        std::set<std::vector<double>> distinct;
        for (const auto &s : set.states) {
            EXPECT_NEAR(d_measure(s), 1.0, 1e-12);
            EXPECT_NEAR(s.purity(), 1.0, 1e-12);
            distinct.insert(std::vector<double>(s.coeffs.data(), s.coeffs.data() + s.coeffs.size()));
        }
        EXPECT_EQ(distinct.size(), set.size());
    }
}

TEST(magic, single_qubit_states_are_axis_eigenstates) {
    std::set<std::string> found;
    for (const auto &s : stabilizer_states(1).states) {
        auto rho = pshuf_test::dense_of(s.coeffs, 1);
        for (const char *name : {"zero", "one", "plus", "minus", "i_plus", "i_minus"}) {
            if ((rho - pshuf_test::dense_of(named_qubit_state(name).coeffs, 1)).norm() < 1e-14) {
                found.insert(name);
            }
        }
    }
    EXPECT_EQ(found.size(), 6u);
}

TEST(magic, two_qubit_states_are_positive_rank_one) {
    for (const auto &s : stabilizer_states(2).states) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(pshuf_test::dense_of(s.coeffs, 2));
        EXPECT_NEAR(eig.eigenvalues().maxCoeff(), 1.0, 1e-12);
        EXPECT_NEAR(eig.eigenvalues().minCoeff(), 0.0, 1e-12);
    }
}

TEST(magic, d_measure_values) {
    EXPECT_NEAR(d_measure(named_qubit_state("A")), (1 + std::sqrt(2.0)) / 2, 1e-15);
    EXPECT_NEAR(d_measure(BlochVector::maximally_mixed(2)), 0.25, 1e-15);
}

TEST(magic, robustness_values) {
    auto a = named_qubit_state("A");
    EXPECT_NEAR(robustness(a, stabilizer_states(1)), std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(robustness(named_qubit_state("zero"), stabilizer_states(1)), 1.0, 1e-9);
    EXPECT_NEAR(robustness(BlochVector::maximally_mixed(2), stabilizer_states(2)), 1.0, 1e-9);
    EXPECT_NEAR(robustness(tensor(a, a), stabilizer_states(2)), 1.747546895706, 1e-9);
    EXPECT_THROW(robustness(a, stabilizer_states(2)), std::invalid_argument);
}

TEST(magic, robustness_decomposition_certificate) {
    for (uint64_t seed = 0; seed < 100; seed++) {
        auto v = bloch(pshuf_test::random_density_matrix(2, seed), 2);
        auto r = robustness_decomposition(v, stabilizer_states(2));
        EXPECT_LE(r.residual, 1e-8);
        EXPECT_NEAR(r.weights.sum(), 1.0, 1e-8);
        EXPECT_NEAR(r.weights.lpNorm<1>(), r.value, 1e-12);
        EXPECT_LE(d_measure(v), r.value + 1e-7);
    }
}

TEST(magic, three_qubit_robustness) {
    auto a = named_qubit_state("A");
    auto v = tensor(tensor(a, a), named_qubit_state("zero"));
    auto r = robustness_decomposition(v, stabilizer_states(3));
    EXPECT_NEAR(r.value, 1.747546895706, 1e-8);
    EXPECT_LE(r.residual, 1e-8);
}

TEST(magic, classify_examples) {
    auto mixed = classify(BlochVector::maximally_mixed(2));
    EXPECT_EQ(mixed.label, MagicClass::StabilizerMixture);
    ASSERT_TRUE(mixed.r_value.has_value());
    auto a = classify(named_qubit_state("A"));
    EXPECT_EQ(a.label, MagicClass::Magic);
    EXPECT_FALSE(a.r_value.has_value());
    auto full = classify(named_qubit_state("A"), kClassifyTolerance, true);
    EXPECT_EQ(full.label, MagicClass::Magic);
    EXPECT_NEAR(*full.r_value, std::sqrt(2.0), 1e-9);
    EXPECT_STREQ(magic_class_name(MagicClass::Bound), "bound");
}

TEST(magic, family_c_has_a_bound_state) {
    CrossSectionOptions o;
    o.resolution = 41;
    auto cs = cross_section(Family::C, o);
    EXPECT_GT(cs.count(MagicClass::Bound), 0u);
}

TEST(magic, family_states_at_origin) {
    for (auto f : {Family::A, Family::B, Family::C}) {
        auto v = family_state(f, 0, 0);
        EXPECT_TRUE(is_valid_density(v));
        EXPECT_EQ(classify_point(v, stabilizer_states(2), kClassifyTolerance, false), MagicClass::StabilizerMixture);
        EXPECT_EQ(classify_point(family_state(f, 3, 3), stabilizer_states(2), kClassifyTolerance, false),
                  MagicClass::Invalid);
    }
    auto a = family_state(Family::A, 0.1, -0.05);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(4, 4) / 4.0 +
                                0.1 * (pshuf_test::pauli_text_matrix("XX") + pshuf_test::pauli_text_matrix("ZZ") -
                                       pshuf_test::pauli_text_matrix("YY")) -
                                0.05 * (pshuf_test::pauli_text_matrix("ZI") + pshuf_test::pauli_text_matrix("IZ"));
    EXPECT_LT((pshuf_test::dense_of(a.coeffs, 2) - expected).norm(), 1e-14);
    auto c = family_state(Family::C, 0, 0);
    EXPECT_NEAR(c[PauliString::from_text("ZZ").index()], 0.2, 1e-15);
}

TEST(magic, random_density_is_valid) {
    for (uint64_t k = 0; k < 2000; k++) {
        PhiloxStream rng(1, k);
        auto v = random_density(2, rng);
        EXPECT_NEAR(v[0], 0.25, 1e-14);
        EXPECT_GE(min_eigenvalue(v), -1e-12);
    }
    PhiloxStream rng(2, 0);
    EXPECT_NEAR(random_density(2, rng, 1).purity(), 1.0, 1e-12);
    EXPECT_THROW(random_density(2, rng, 5), std::invalid_argument);
}

TEST(magic, random_density_mean_is_maximally_mixed) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(16);
    const int n = 100000;
    for (int k = 0; k < n; k++) {
        PhiloxStream rng(6, static_cast<uint64_t>(k));
        sum += random_density(2, rng).coeffs;
    }
    Eigen::VectorXd mean = sum / n;
    EXPECT_NEAR(mean[0], 0.25, 1e-12);
    EXPECT_LT(mean.tail(15).lpNorm<Eigen::Infinity>(), 0.01);
}

TEST(magic, census_basics) {
    auto c = census(2, 2000, 7);
    EXPECT_EQ(c.stabilizer + c.bound + c.magic, 2000u);
    EXPECT_DOUBLE_EQ(c.stabilizer_fraction() + c.bound_fraction() + c.magic_fraction(), 1.0);
    auto one = census(1, 3000, 7);
    EXPECT_EQ(one.bound, 0u);
}

TEST(magic, census_independent_of_threads) {
    auto a = census(2, 3000, 12, 1);
    auto b = census(2, 3000, 12, 4);
    auto s = census_serial(2, 3000, 12);
    EXPECT_EQ(a.stabilizer, b.stabilizer);
    EXPECT_EQ(a.bound, b.bound);
    EXPECT_EQ(a.magic, b.magic);
    EXPECT_EQ(a.bound, s.bound);
    EXPECT_EQ(a.magic, s.magic);
}

TEST(magic, classifier_consistency_on_random_states) {
    for (uint64_t k = 0; k < 300; k++) {
        PhiloxStream rng(21, k);
        auto v = random_density(2, rng);
        auto c = classify(v, kClassifyTolerance, true);
        if (c.label == MagicClass::StabilizerMixture) {
            EXPECT_LE(c.d_value, 1 + kClassifyTolerance);
        }
        if (c.d_value <= 1 + kClassifyTolerance) {
            EXPECT_EQ(c.label, classify(v).label);
        }
    }
}

TEST(magic, cross_section_serial_matches_parallel) {
    CrossSectionOptions o;
    o.resolution = 31;
    for (auto f : {Family::A, Family::B, Family::C}) {
        auto par = cross_section(f, o, 3);
        auto ser = cross_section_serial(f, o);
        EXPECT_EQ(par.labels, ser.labels);
    }
}

TEST(magic, cross_section_csv) {
    CrossSectionOptions o;
    o.resolution = 3;
    auto cs = cross_section(Family::A, o);
    std::ostringstream out;
    cs.write_csv(out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,y,class");
    int rows = 0;
    while (std::getline(in, line)) {
        rows++;
    }
    EXPECT_EQ(rows, 9);
    EXPECT_EQ(cs.at(1, 1), MagicClass::StabilizerMixture);
    EXPECT_DOUBLE_EQ(cs.x(0), -0.35);
    EXPECT_DOUBLE_EQ(cs.y(2), 0.35);
    EXPECT_THROW(family_from_name("d"), std::invalid_argument);
    EXPECT_EQ(family_from_name("B"), Family::B);
}
