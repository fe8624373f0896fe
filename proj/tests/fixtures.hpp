#ifndef PIPEHAZARD_TESTS_FIXTURES_HPP
#define PIPEHAZARD_TESTS_FIXTURES_HPP

#include <stdexcept>
#include <string>

#include "pipehazard/isa.hpp"

namespace fixtures {

// Mirrors tests/data/producer_consumer.isa (a unit test keeps them in sync).
inline constexpr char kProducerConsumer[] = R"(instruction inst1 depth=5
  dst d1 write=4 first_avail=3 last_avail=4
  dst d2 write=5 first_avail=5 last_avail=5
end

instruction inst2 depth=3
  src s1 read=1 first_needed=1 last_needed=1
  src s2 read=2 first_needed=1 last_needed=2
end
)";

// Mirrors tests/data/reader_writer.isa.
inline constexpr char kReaderWriter[] = R"(instruction inst1 depth=5
  dst d1 write=1 first_avail=1 last_avail=1
  dst d2 write=2 first_avail=2 last_avail=2
end

instruction inst2 depth=5
  src s1 read=4 first_needed=4 last_needed=4
  src s2 read=5 first_needed=5 last_needed=5
end
)";

inline pipehazard::InstructionSet parse_ok(const std::string& text) {
  auto result = pipehazard::parse_instruction_set(text);
  if (!result.set)
    throw std::runtime_error("fixture did not parse:\n" +
                             pipehazard::format_diagnostics(result.diagnostics));
  return *result.set;
}

inline pipehazard::InstructionSet producer_consumer() {
  return parse_ok(kProducerConsumer);
}

inline pipehazard::InstructionSet reader_writer() {
  return parse_ok(kReaderWriter);
}

}  // namespace fixtures

#endif
