#ifndef PIPEHAZARD_RECORDS_HPP
#define PIPEHAZARD_RECORDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pipehazard/isa.hpp"

namespace pipehazard {

enum class HazardType { Raw, War, Waw };

// Bit masks for selecting hazard types in queries.
inline constexpr unsigned kTypeRaw = 1u;
inline constexpr unsigned kTypeWar = 2u;
inline constexpr unsigned kTypeWaw = 4u;
inline constexpr unsigned kTypeAll = kTypeRaw | kTypeWar | kTypeWaw;

const char* type_name(HazardType type);
unsigned type_mask(HazardType type);

enum class ActionKind { Stall, Forward };

struct Resolution {
  ActionKind kind = ActionKind::Stall;
  // Forward: value produced at older stage forward_from feeds newer stage
  // forward_to in the same cycle. Stall stages are zero for forwards.
  Stage forward_from = 0;
  Stage forward_to = 0;
  int stall_cycles = 0;

  bool operator==(const Resolution&) const = default;
};

// One hazard between a concrete operand pair at a concrete gap.
// hazard_pair is the co-resident stage pair where the conflict shows up;
// apply_at is the stage pair at which the resolution must take effect
// (equal to hazard_pair for forwards, earlier for stalls).
struct HazardRecord {
  HazardType type = HazardType::Raw;
  std::string older_opcode;
  std::string older_operand;
  std::string newer_opcode;
  std::string newer_operand;
  StagePair hazard_pair;
  int gap = 0;
  Resolution resolution;
  StagePair apply_at;
  std::string stalled_opcode;  // empty for forwards

  bool operator==(const HazardRecord&) const = default;
};

// "inst1.d1 = inst2.s1" style label; writer side first. When both opcodes
// match, issue-order tags (1)/(2) disambiguate the two occurrences.
std::string case_label(const HazardRecord& rec);

// One-line human-readable rendering, stable across runs.
std::string describe(const HazardRecord& rec);

// Sorts records into the canonical report order: type, then older and newer
// instruction declaration order, then operand declaration order (sources
// before dests), then gap. Unknown names sort after known ones.
void canonicalize(std::vector<HazardRecord>& records, const InstructionSet& origin);

}  // namespace pipehazard

#endif
