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

#include "cavswap/shot_stream.hpp"

namespace cavswap {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ShotStream::Generator ShotStream::for_shot(std::uint64_t shot_index) const {
    return Generator(splitmix64(seed_ ^ splitmix64(shot_index)));
}

ShotStream ShotStream::split(std::uint64_t label) const {
    return ShotStream(splitmix64(seed_ + 0x632be59bd9b4e019ULL * (label + 1)));
}

}  // namespace cavswap
