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

#pragma once

#include <array>
#include <cstdint>

namespace tracer {

/// One 10-round Philox-4x32 block. Counter-based: the output is a pure
/// function of (counter, key), which is what makes replica substreams
/// reproducible independent of scheduling.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Stream of uniform variates generated by Philox-4x32-10.
///
/// The 128-bit counter block is split as (draw index, stream id) and the
/// 64-bit seed is the key, so (seed, stream) fully determines the stream
/// and distinct stream ids never collide. Ensembles give replica r the
/// stream id r.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform variate strictly inside (0,1): ((u >> 11) + 0.5) * 2^-53.
    double uniform01();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int available_ = 0;
};

} // namespace tracer
