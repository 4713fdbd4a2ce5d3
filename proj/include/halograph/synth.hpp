// Copyright 2026 The HaloGraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "halograph/bundle.hpp"

namespace halograph {

// Shape of a synthetic corpus. Each sentence draws a latent hallucination
// label; lower-confidence top-k distributions go with higher labels so that
// evaluation numbers are informative rather than pure noise.
struct SynthShape {
  std::size_t max_sentences = 5;
  std::size_t max_tokens_per_sentence = 8;
  std::size_t k = 3;
  double entity_rate = 0.35;
  double link_rate = 0.4;
  std::size_t max_triples_per_sentence = 3;
};

// Deterministic for a given seed on every platform: draws use a 64-bit
// Mersenne Twister and explicit integer-to-real conversion.
std::vector<PassageBundle> synthesize_corpus(std::uint64_t seed, std::size_t n_passages,
                                             const SynthShape& shape = {});

}  // namespace halograph
