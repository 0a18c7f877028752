// Copyright 2026 The cavswap Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace cavswap {

/// Seeded, splittable source of per-shot random streams.
///
/// Shot i always draws from the same sub-stream regardless of how shots are
/// partitioned across workers, so results merge deterministically by index.
class ShotStream {
   public:
    explicit ShotStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    class Generator {
       public:
        explicit Generator(std::uint64_t key) : engine_(key) {}
        /// Uniform double in [0, 1) with 53 random bits.
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

       private:
        std::mt19937_64 engine_;
    };

    Generator for_shot(std::uint64_t shot_index) const;
    /// Independent stream for a labelled purpose (e.g. a sweep row).
    ShotStream split(std::uint64_t label) const;

   private:
    std::uint64_t seed_;
};

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cavswap
