// SPDX-License-Identifier: Apache-2.0
//
// holosense: radio-image sensing workbench for large intelligent surfaces
// Copyright (C) 2026 The holosense authors
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

#ifndef HOLOSENSE_COUNTER_RNG_HPP
#define HOLOSENSE_COUNTER_RNG_HPP

// Counter-based random numbers: every draw is a pure function of a key, so
// results do not depend on evaluation order or thread scheduling.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <utility>

namespace holosense::rng
{
    // SplitMix64 finalizer (Stafford variant 13)
    constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Order-sensitive combination of a key with one more counter
    constexpr std::uint64_t combine(std::uint64_t key, std::uint64_t value)
    {
        return mix64(key ^ mix64(value + 0x632be59bd9b4e019ULL));
    }

    template <typename... Counters>
    constexpr std::uint64_t key(std::uint64_t seed, Counters... counters)
    {
        std::uint64_t k = mix64(seed);
        ((k = combine(k, std::uint64_t(counters))), ...);
        return k;
    }

    // FNV-1a, stable across platforms (used to fold names into seeds)
    constexpr std::uint64_t fnv1a(std::string_view text)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const char ch : text)
        {
            h ^= std::uint64_t(static_cast<unsigned char>(ch));
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    // Uniform in (0, 1], 53-bit resolution
    constexpr double to_unit_open0(std::uint64_t bits)
    {
        return (double(bits >> 11) + 1.0) * 0x1.0p-53;
    }

    // Two independent standard normal values for one key (Box-Muller)
    inline std::pair<double, double> normal_pair(std::uint64_t k)
    {
        const double u1 = to_unit_open0(mix64(k));
        const double u2 = to_unit_open0(mix64(k ^ 0xd1b54a32d192ed03ULL));
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    // Sequential generator over a key, for shuffles and Monte-Carlo loops
    class Stream
    {
    public:
        explicit Stream(std::uint64_t seed) : key_(mix64(seed)) {}

        std::uint64_t next() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
        double uniform() { return to_unit_open0(next()); }
        std::pair<double, double> normal_pair() { return rng::normal_pair(next()); }

        // Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection)
        std::uint64_t below(std::uint64_t bound)
        {
            while (true)
            {
                const std::uint64_t x = next();
                const __uint128_t m = __uint128_t(x) * __uint128_t(bound);
                const std::uint64_t low = std::uint64_t(m);
                if (low >= bound || low >= (-bound) % bound)
                    return std::uint64_t(m >> 64);
            }
        }

        template <typename Vec>
        void shuffle(Vec &v)
        {
            for (std::size_t i = v.size(); i > 1; --i)
            {
                const std::size_t j = std::size_t(below(i));
                std::swap(v[i - 1], v[j]);
            }
        }

    private:
        std::uint64_t key_;
        std::uint64_t counter_ = 0;
    };

} // namespace holosense::rng

#endif
