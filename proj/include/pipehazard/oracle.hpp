#ifndef PIPEHAZARD_ORACLE_HPP
#define PIPEHAZARD_ORACLE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pipehazard/isa.hpp"
#include "pipehazard/records.hpp"

namespace pipehazard {

// Cycle-accurate reference simulator for two co-resident instructions.
// Deliberately derives everything from the operand intervals per cycle;
// it never reuses the closed-form enumeration rules it arbitrates.

enum class SimEventKind {
  None,
  RawStallNeeded,
  RawForwardPossible,
  WarViolation,
  WawViolation,
};

// Operand pair under observation. Roles follow the hazard type:
// RAW older dest / newer source; WAR older source / newer dest;
// WAW older dest / newer dest.
struct Binding {
  HazardType type = HazardType::Raw;
  std::string older_operand;
  std::string newer_operand;
};

struct SimEvent {
  int cycle = 0;
  std::optional<Stage> newer_stage;
  std::optional<Stage> older_stage;
  SimEventKind kind = SimEventKind::None;
};

struct SimTimeline {
  int gap = 0;
  std::map<int, int> stall_schedule;  // cycle -> extra cycles the newer holds
  std::vector<SimEvent> events;       // one row per co-resident cycle

  bool contains(SimEventKind kind) const;
  int co_resident_cycles() const;
};

// Walks cycles while both instructions are in the pipeline. The older
// instruction enters at cycle 0 and never stalls; the newer enters at cycle
// `gap`. A schedule entry (c, n) holds the newer in place for n extra cycles
// starting at cycle c; the bubble cycles [c, c+n) are not evaluated (the
// hazard is being resolved there), the release cycle c+n is.
// Throws std::invalid_argument for gap < 1 or binding operands that do not
// exist with the role the hazard type requires.
SimTimeline simulate_pair(const InstructionSpec& older,
                          const InstructionSpec& newer, int gap,
                          const Binding& binding,
                          const std::map<int, int>& stall_schedule = {});

// Applies the record's resolution (stalls at its apply point; forwards change
// nothing) and re-simulates. A correct record leaves no stall-needed or
// violation event for its binding.
SimTimeline replay_with_resolution(const InstructionSpec& older,
                                   const InstructionSpec& newer, int gap,
                                   const Binding& binding,
                                   const HazardRecord& record);

// Brute-force sweep over every ordered instruction pair, binding, and gap.
// Stall counts are found by replaying with increasing counts until the event
// clears, never by formula. Output is canonicalized like enumerate_all.
std::vector<HazardRecord> oracle_enumerate(const InstructionSet& is,
                                           unsigned types = kTypeAll);

}  // namespace pipehazard

#endif
