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

#include <gtest/gtest.h>

#include "oracles.h"

using namespace pshuf;

TEST(placement, same_width_keeps_positions) {
    Placement p(4, {2, 0}, 2, 2);
    EXPECT_EQ(p.width_after(), 4u);
    EXPECT_EQ(p.output_positions()[0], 2u);
    EXPECT_EQ(p.output_positions()[1], 0u);
    for (size_t q = 0; q < 4; q++) {
        EXPECT_EQ(p.survivor_map()[q], static_cast<int64_t>(q));
    }
}

TEST(placement, shrinking_discards_first_targets) {
    // 2 -> 1 on targets (1, 3) of a 4-qubit register: qubit 1 goes away and
    // the output lands where qubit 3 ends up (position 2).
    Placement p(4, {1, 3}, 2, 1);
    EXPECT_EQ(p.width_after(), 3u);
    EXPECT_EQ(p.survivor_map()[0], 0);
    EXPECT_EQ(p.survivor_map()[1], -1);
    EXPECT_EQ(p.survivor_map()[2], 1);
    EXPECT_EQ(p.survivor_map()[3], 2);
    EXPECT_EQ(p.output_positions()[0], 2u);
}

TEST(placement, trace_out_closes_gap) {
    Placement p(3, {0}, 1, 0);
    EXPECT_EQ(p.width_after(), 2u);
    EXPECT_EQ(p.survivor_map()[1], 0);
    EXPECT_EQ(p.survivor_map()[2], 1);
}

TEST(placement, append_goes_to_the_end) {
    Placement p(2, {}, 0, 1);
    EXPECT_EQ(p.width_after(), 3u);
    EXPECT_EQ(p.output_positions()[0], 2u);
}

TEST(placement, rejects_bad_targets) {
    EXPECT_THROW(Placement(2, {2}, 1, 1), std::out_of_range);
    EXPECT_THROW(Placement(3, {1, 1}, 2, 2), std::invalid_argument);
    EXPECT_THROW(Placement(3, {1}, 2, 2), std::invalid_argument);
}

TEST(placement, bit_helpers_agree_with_oracle_embedding) {
    struct Case {
        size_t width;
        std::vector<size_t> targets;
        size_t in;
        size_t out;
    };
    std::vector<Case> cases = {
        {3, {2, 0}, 2, 2}, {4, {1, 3}, 2, 1}, {4, {3, 0, 2}, 3, 1}, {3, {1}, 1, 0}, {2, {}, 0, 1}, {3, {2}, 1, 2},
    };
    for (const auto &c : cases) {
        Placement p(c.width, c.targets, c.in, c.out);
        auto in_dim = Eigen::Index{1} << c.in;
        auto out_dim = Eigen::Index{1} << c.out;
        for (Eigen::Index li = 0; li < in_dim; li++) {
            for (Eigen::Index lo = 0; lo < out_dim; lo++) {
                Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(out_dim, in_dim);
                k(lo, li) = 1;
                auto full = pshuf_test::embed_kraus(k, c.in, c.out, c.targets, c.width);
                for (uint64_t b = 0; b < (uint64_t{1} << c.width); b++) {
                    if (p.local_input_bits(b) != static_cast<uint64_t>(li)) {
                        continue;
                    }
                    auto ob = p.carried_bits(b) | p.scatter_output_bits(static_cast<uint64_t>(lo));
                    EXPECT_EQ(full(static_cast<Eigen::Index>(ob), static_cast<Eigen::Index>(b)),
                              std::complex<double>(1));
                }
            }
        }
    }
}
