// SPDX-License-Identifier: Apache-2.0
//
// gammaclutter: detection statistics for fluctuating targets in compound clutter
// Copyright (C) 2026 The gammaclutter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cstdint>

namespace gcl {

// Philox4x32-10 counter-based generator (Salmon et al. style): a keyed bijection
// of 128-bit counters, so any (seed, sample, stream) block is reachable in O(1).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter block(Counter ctr, Key key)
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

// Sequential draws from one (seed, sample, stream) substream: counter words are
// {sample low, sample high, stream, block}.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t sample, std::uint32_t stream, bool complement = false)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32), stream, 0u},
          complement_(complement)
    {
    }

    std::uint32_t next_u32()
    {
        if (used_ == 4) {
            buffer_ = Philox4x32::block(ctr_, key_);
            ++ctr_[3];
            used_ = 0;
        }
        return buffer_[used_++];
    }

    // 53-bit uniform on the open interval (0, 1); mirrored when complemented.
    double uniform()
    {
        const std::uint64_t hi = next_u32() >> 5, lo = next_u32() >> 6;
        const double u = (static_cast<double>((hi << 26) | lo) + 0.5) * 0x1.0p-53;
        return complement_ ? 1.0 - u : u;
    }

private:
    Philox4x32::Key key_;
    Philox4x32::Counter ctr_;
    Philox4x32::Counter buffer_{};
    int used_ = 4;
    bool complement_;
};

// SplitMix64 finalizer; derives per-replicate seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace gcl
