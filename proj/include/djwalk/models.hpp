#pragma once

#include <cstdint>

namespace djwalk {

/// How sampled phase shifters relate to the hidden sequence.
enum class SamplingModel : std::uint8_t {
  IID,                 // each sample independently +1 with the sequence's fraction
  WithoutReplacement,  // distinct positions of a fixed-composition sequence
};

/// Which detection probabilities feed the quantum strategy.
enum class LikelihoodMode : std::uint8_t {
  Idealized,  // O(1/N) terms dropped: nu, 0, nu*eps^2
  ExactN,     // finite-N exit probabilities
};

}  // namespace djwalk
