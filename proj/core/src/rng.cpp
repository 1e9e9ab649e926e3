// Copyright 2026 The tracer-current Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#include "tracer/rng.hpp"

namespace tracer {

namespace {

constexpr std::uint32_t mul_a = 0xD2511F53u;
constexpr std::uint32_t mul_b = 0xCD9E8D57u;
constexpr std::uint32_t weyl_a = 0x9E3779B9u;
constexpr std::uint32_t weyl_b = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x,
                       const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(mul_a) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(mul_b) * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += weyl_a;
            key[1] += weyl_b;
        }
        round_once(counter, key);
    }
    return counter;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

void CounterRng::refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_index_),
        static_cast<std::uint32_t>(block_index_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32),
    };
    const auto out = philox4x32(ctr, key_);
    buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    available_ = 2;
    ++block_index_;
}

std::uint64_t CounterRng::next_u64() {
    if (available_ == 0) {
        refill();
    }
    return buffer_[--available_];
}

double CounterRng::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace tracer
