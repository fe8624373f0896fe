#ifndef PIPEHAZARD_FUZZ_HPP
#define PIPEHAZARD_FUZZ_HPP

#include <cstdint>

#include "pipehazard/isa.hpp"

namespace pipehazard {

struct FuzzConfig {
  int max_depth = 8;
  int max_ops = 3;
  int max_instructions = 4;
};

// Random instruction set that passes validation by construction: stage fields
// are drawn inside their legal ranges, never rejected and re-rolled, so every
// seed costs the same. Deterministic for a given (seed, config).
InstructionSet random_instruction_set(std::uint64_t seed,
                                      const FuzzConfig& config = {});

// Stream seed for sample i of a fuzz run with base seed s.
std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index);

}  // namespace pipehazard

#endif
