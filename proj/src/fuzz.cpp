#include "pipehazard/fuzz.hpp"

namespace pipehazard {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Fixed-width generator so fuzz streams are identical on every platform;
// the standard distributions do not guarantee that.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Uniform in [lo, hi]. The top bits of splitmix64 are well mixed; modulo
  // bias is negligible for the tiny ranges used here.
  int uniform(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>((splitmix64(state_) >> 33) % span);
  }

 private:
  std::uint64_t state_;
};

}  // namespace

std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t state = base + index;
  return splitmix64(state);
}

InstructionSet random_instruction_set(std::uint64_t seed,
                                      const FuzzConfig& config) {
  Rng rng(seed);
  InstructionSet set;
  const int count = rng.uniform(1, config.max_instructions);
  for (int i = 1; i <= count; ++i) {
    InstructionSpec inst;
    inst.opcode = "op" + std::to_string(i);
    inst.depth = rng.uniform(2, config.max_depth);
    const int n_src = rng.uniform(0, config.max_ops);
    const int n_dst = rng.uniform(0, config.max_ops);
    for (int j = 1; j <= n_src; ++j) {
      SourceOperand s;
      s.name = "s" + std::to_string(j);
      s.last_needed = rng.uniform(1, inst.depth);
      s.first_needed = rng.uniform(1, s.last_needed);
      s.read_stage = rng.uniform(1, inst.depth);
      inst.sources.push_back(std::move(s));
    }
    for (int j = 1; j <= n_dst; ++j) {
      DestOperand d;
      d.name = "d" + std::to_string(j);
      d.last_avail = rng.uniform(1, inst.depth);
      d.first_avail = rng.uniform(1, d.last_avail);
      d.write_stage = rng.uniform(1, d.last_avail);
      inst.dests.push_back(std::move(d));
    }
    set.instructions.push_back(std::move(inst));
  }
  return set;
}

}  // namespace pipehazard
