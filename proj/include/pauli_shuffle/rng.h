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

#ifndef PAULI_SHUFFLE_RNG_H
#define PAULI_SHUFFLE_RNG_H

#include <array>
#include <cstdint>
#include <limits>

namespace pshuf {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
    constexpr uint32_t kMulA = 0xD2511F53;
    constexpr uint32_t kMulB = 0xCD9E8D57;
    constexpr uint32_t kWeylA = 0x9E3779B9;
    constexpr uint32_t kWeylB = 0xBB67AE85;
    for (int round = 0; round < 10; round++) {
        uint64_t p0 = uint64_t{kMulA} * ctr[0];
        uint64_t p1 = uint64_t{kMulB} * ctr[2];
        ctr = {
            static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
            static_cast<uint32_t>(p1),
            static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
            static_cast<uint32_t>(p0),
        };
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return ctr;
}

/// Independent random stream identified by (seed, stream). Sample i of an
/// estimate uses stream i, so results do not depend on how samples are
/// scheduled across threads. Satisfies UniformRandomBitGenerator.
class PhiloxStream {
   public:
    using result_type = uint64_t;

    PhiloxStream(uint64_t seed, uint64_t stream)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          stream_lo_(static_cast<uint32_t>(stream)),
          stream_hi_(static_cast<uint32_t>(stream >> 32)) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        if (used_ >= 2) {
            refill();
        }
        auto w = used_++ * 2;
        return (uint64_t{block_[w]} << 32) | block_[w + 1];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

   private:
    void refill() {
        block_ = philox4x32(
            {static_cast<uint32_t>(block_index_), static_cast<uint32_t>(block_index_ >> 32), stream_lo_, stream_hi_},
            key_);
        block_index_++;
        used_ = 0;
    }

    std::array<uint32_t, 2> key_;
    uint32_t stream_lo_;
    uint32_t stream_hi_;
    uint64_t block_index_ = 0;
    std::array<uint32_t, 4> block_{};
    unsigned used_ = 2;
};

}  // namespace pshuf

#endif
