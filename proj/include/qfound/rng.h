// Copyright 2026 The qfound Authors
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

#ifndef QFOUND_RNG_H
#define QFOUND_RNG_H

#include <cstdint>
#include <random>

namespace qfound {

/// Seedable generator used by every stochastic routine.
///
/// Engine: std::mt19937_64 (MT19937-64, fully specified by the standard).
/// uniform() takes the top 53 bits of one draw; normal() is the cosine branch
/// of Box-Muller over two uniform() draws. Both are library independent, so a
/// seed reproduces the same stream on any conforming toolchain.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    uint64_t next() {
        return engine_();
    }
    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal deviate.
    double normal();

   private:
    std::mt19937_64 engine_;
};

}  // namespace qfound

#endif
