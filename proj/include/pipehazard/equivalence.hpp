#ifndef PIPEHAZARD_EQUIVALENCE_HPP
#define PIPEHAZARD_EQUIVALENCE_HPP

#include <string>
#include <vector>

#include "pipehazard/isa.hpp"
#include "pipehazard/records.hpp"

namespace pipehazard {

// FULL keeps every field the hazard rules consult; RAW keeps only what the
// read-after-write rule consults; WRITE keeps only what the write-ordering
// rules (WAR, WAW) consult.
enum class ReductionLevel { Full, Raw, Write };

const char* level_name(ReductionLevel level);

enum class OperandRole { Source, Dest };

// Key fields per level and role:
//   FULL   source (read, last_needed)   dest (write, first_avail, last_avail)
//   RAW    source (last_needed)         dest (first_avail, last_avail)
//   WRITE  source (read)                dest (write)
std::vector<Stage> operand_key(const SourceOperand& op, ReductionLevel level);
std::vector<Stage> operand_key(const DestOperand& op, ReductionLevel level);

// Field names matching the key tuple positions, for rendering.
std::vector<std::string> key_field_names(OperandRole role, ReductionLevel level);

struct OperandRef {
  std::string opcode;
  std::string name;

  bool operator==(const OperandRef&) const = default;
};

// Operands (of one role, across all instructions of one instruction class)
// sharing identical key fields. The first member belongs to the class
// representative instruction and names the class.
struct OperandClass {
  OperandRole role = OperandRole::Source;
  std::vector<Stage> key;
  std::vector<OperandRef> members;

  const OperandRef& representative() const { return members.front(); }
};

// Instructions with equal depth whose operand classes match key-for-key.
// The representative spec carries one operand per class (the representative
// member's operand, verbatim), so it can be enumerated like any instruction.
struct InstructionClass {
  InstructionSpec representative;
  std::vector<OperandClass> source_classes;
  std::vector<OperandClass> dest_classes;
  std::vector<std::string> members;
};

struct ReducedSet {
  ReductionLevel level = ReductionLevel::Full;
  std::vector<InstructionClass> classes;
  InstructionSet origin;
};

// Groups the set into maximal classes at the given level. Classes and their
// members keep declaration order; representatives are first members.
ReducedSet reduce(const InstructionSet& is, ReductionLevel level);

// Replicates class-level records (named by representatives) over every member
// combination: member instruction on each side, crossed with that
// instruction's member operands of the referenced operand class.
// Throws std::invalid_argument when a record names an unknown class.
std::vector<HazardRecord> expand(const std::vector<HazardRecord>& records,
                                 const ReducedSet& reduced);

std::string render_reduction(const ReducedSet& reduced);

}  // namespace pipehazard

#endif
