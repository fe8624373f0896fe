#ifndef PIPEHAZARD_HAZARDS_HPP
#define PIPEHAZARD_HAZARDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pipehazard/isa.hpp"
#include "pipehazard/records.hpp"

namespace pipehazard {

// Read-after-write: producer (older) writes d, consumer (newer) reads s.
// Emits a record per overlapped stage pair (ln, k), ln = s.last_needed:
// stalls while k < d.first_avail, forwards for k in [first_avail, last_avail].
std::vector<HazardRecord> raw_hazards(const InstructionSpec& producer,
                                      const DestOperand& d,
                                      const InstructionSpec& consumer,
                                      const SourceOperand& s);

// Write-after-read: reader (older) reads s, writer (newer) writes d.
// The writer must not overwrite before the read completes; all records stall
// the writer.
std::vector<HazardRecord> war_hazards(const InstructionSpec& reader,
                                      const SourceOperand& s,
                                      const InstructionSpec& writer,
                                      const DestOperand& d);

// Write-after-write: both write the same register; the newer write must land
// strictly after the older one.
std::vector<HazardRecord> waw_hazards(const InstructionSpec& first_writer,
                                      const DestOperand& d_i,
                                      const InstructionSpec& second_writer,
                                      const DestOperand& d_j);

// Every ordered instruction pair (self-pairs included) crossed with every
// operand case of the requested types, in canonical order. With use_reduction
// the engine runs over equivalence classes and expands; the output is
// identical either way.
std::vector<HazardRecord> enumerate_all(const InstructionSet& is,
                                        unsigned types = kTypeAll,
                                        bool use_reduction = true);

// Optional restriction to one (older, newer) opcode pair.
struct PairFilter {
  std::optional<std::string> older;
  std::optional<std::string> newer;

  bool matches(const std::string& older_opcode,
               const std::string& newer_opcode) const {
    return (!older || *older == older_opcode) && (!newer || *newer == newer_opcode);
  }
};

std::vector<HazardRecord> filter_pair(const std::vector<HazardRecord>& records,
                                      const PairFilter& filter);

}  // namespace pipehazard

#endif
