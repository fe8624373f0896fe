#include "pipehazard/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace pipehazard {

bool SimTimeline::contains(SimEventKind kind) const {
  return std::any_of(events.begin(), events.end(),
                     [kind](const SimEvent& e) { return e.kind == kind; });
}

int SimTimeline::co_resident_cycles() const {
  return static_cast<int>(events.size());
}

namespace {

struct BoundOperands {
  // RAW: older dest vs newer source. WAR: older source vs newer dest.
  // WAW: older dest vs newer dest. Unused pointers stay null.
  const DestOperand* older_dest = nullptr;
  const SourceOperand* older_src = nullptr;
  const DestOperand* newer_dest = nullptr;
  const SourceOperand* newer_src = nullptr;
};

BoundOperands bind(const InstructionSpec& older, const InstructionSpec& newer,
                   const Binding& binding) {
  BoundOperands b;
  switch (binding.type) {
    case HazardType::Raw:
      b.older_dest = older.find_dest(binding.older_operand);
      b.newer_src = newer.find_source(binding.newer_operand);
      if (!b.older_dest || !b.newer_src)
        throw std::invalid_argument(
            "simulate_pair: RAW binding needs an older destination and a newer "
            "source");
      break;
    case HazardType::War:
      b.older_src = older.find_source(binding.older_operand);
      b.newer_dest = newer.find_dest(binding.newer_operand);
      if (!b.older_src || !b.newer_dest)
        throw std::invalid_argument(
            "simulate_pair: WAR binding needs an older source and a newer "
            "destination");
      break;
    case HazardType::Waw:
      b.older_dest = older.find_dest(binding.older_operand);
      b.newer_dest = newer.find_dest(binding.newer_operand);
      if (!b.older_dest || !b.newer_dest)
        throw std::invalid_argument(
            "simulate_pair: WAW binding needs destinations on both sides");
      break;
  }
  return b;
}

SimEventKind evaluate(const Binding& binding, const BoundOperands& ops,
                      Stage newer_stage, Stage older_stage) {
  switch (binding.type) {
    case HazardType::Raw: {
      if (newer_stage != ops.newer_src->last_needed) return SimEventKind::None;
      if (older_stage <= ops.older_dest->first_avail - 1)
        return SimEventKind::RawStallNeeded;
      if (older_stage <= ops.older_dest->last_avail)
        return SimEventKind::RawForwardPossible;
      return SimEventKind::None;  // datum already at its final destination
    }
    case HazardType::War:
      return newer_stage == ops.newer_dest->write_stage &&
                     older_stage <= ops.older_src->read_stage
                 ? SimEventKind::WarViolation
                 : SimEventKind::None;
    case HazardType::Waw:
      return newer_stage == ops.newer_dest->write_stage &&
                     older_stage <= ops.older_dest->write_stage
                 ? SimEventKind::WawViolation
                 : SimEventKind::None;
  }
  return SimEventKind::None;
}

}  // namespace

SimTimeline simulate_pair(const InstructionSpec& older,
                          const InstructionSpec& newer, int gap,
                          const Binding& binding,
                          const std::map<int, int>& stall_schedule) {
  if (gap < 1) throw std::invalid_argument("simulate_pair: gap must be >= 1");
  const BoundOperands ops = bind(older, newer, binding);

  SimTimeline timeline;
  timeline.gap = gap;
  timeline.stall_schedule = stall_schedule;

  Stage newer_stage = 0;     // 0 = not entered
  int hold_remaining = 0;    // advance opportunities the newer must skip
  int suppress_until = -1;   // cycles below this are bubble cycles
  for (int t = gap; t + 1 <= older.depth; ++t) {
    const Stage older_stage = t + 1;
    if (t == gap) {
      newer_stage = 1;
    } else if (hold_remaining > 0) {
      --hold_remaining;
    } else {
      ++newer_stage;
    }
    if (newer_stage > newer.depth) break;
    if (auto it = stall_schedule.find(t); it != stall_schedule.end()) {
      hold_remaining += it->second;
      suppress_until = std::max(suppress_until, t + it->second);
    }
    SimEvent event;
    event.cycle = t;
    event.newer_stage = newer_stage;
    event.older_stage = older_stage;
    event.kind = t < suppress_until
                     ? SimEventKind::None
                     : evaluate(binding, ops, newer_stage, older_stage);
    timeline.events.push_back(event);
  }
  return timeline;
}

SimTimeline replay_with_resolution(const InstructionSpec& older,
                                   const InstructionSpec& newer, int gap,
                                   const Binding& binding,
                                   const HazardRecord& record) {
  if (record.gap != gap)
    throw std::invalid_argument("replay_with_resolution: record gap mismatch");
  std::map<int, int> schedule;
  if (record.resolution.kind == ActionKind::Stall) {
    const int apply_cycle = gap + record.apply_at.newer - 1;
    schedule[apply_cycle] = record.resolution.stall_cycles;
  }
  return simulate_pair(older, newer, gap, binding, schedule);
}

namespace {

// Smallest hold count that clears the conflict; the newer is held at entry.
// Bounded by older.depth: holding that long outlives the older instruction.
int minimal_stall(const InstructionSpec& older, const InstructionSpec& newer,
                  int gap, const Binding& binding, SimEventKind kind) {
  for (int n = 1; n <= older.depth; ++n) {
    const SimTimeline replay = simulate_pair(older, newer, gap, binding, {{gap, n}});
    if (!replay.contains(kind)) return n;
  }
  return older.depth;
}

void sweep_binding(const InstructionSpec& older, const InstructionSpec& newer,
                   const Binding& binding, std::vector<HazardRecord>& out) {
  for (int gap = 1; gap <= older.depth - 1; ++gap) {
    const SimTimeline timeline = simulate_pair(older, newer, gap, binding);
    for (const SimEvent& event : timeline.events) {
      if (event.kind == SimEventKind::None) continue;
      HazardRecord rec;
      rec.type = binding.type;
      rec.older_opcode = older.opcode;
      rec.older_operand = binding.older_operand;
      rec.newer_opcode = newer.opcode;
      rec.newer_operand = binding.newer_operand;
      rec.hazard_pair = {*event.newer_stage, *event.older_stage};
      rec.gap = gap;
      if (event.kind == SimEventKind::RawForwardPossible) {
        rec.resolution = {ActionKind::Forward, *event.older_stage,
                          *event.newer_stage, 0};
        rec.apply_at = rec.hazard_pair;
      } else {
        rec.resolution = {ActionKind::Stall, 0, 0,
                          minimal_stall(older, newer, gap, binding, event.kind)};
        rec.apply_at = {1, gap + 1};
        rec.stalled_opcode = newer.opcode;
      }
      out.push_back(std::move(rec));
    }
  }
}

}  // namespace

std::vector<HazardRecord> oracle_enumerate(const InstructionSet& is,
                                           unsigned types) {
  std::vector<HazardRecord> out;
  for (const auto& older : is.instructions) {
    for (const auto& newer : is.instructions) {
      if (types & kTypeRaw)
        for (const auto& d : older.dests)
          for (const auto& s : newer.sources)
            sweep_binding(older, newer, {HazardType::Raw, d.name, s.name}, out);
      if (types & kTypeWar)
        for (const auto& s : older.sources)
          for (const auto& d : newer.dests)
            sweep_binding(older, newer, {HazardType::War, s.name, d.name}, out);
      if (types & kTypeWaw)
        for (const auto& di : older.dests)
          for (const auto& dj : newer.dests)
            sweep_binding(older, newer, {HazardType::Waw, di.name, dj.name}, out);
    }
  }
  canonicalize(out, is);
  return out;
}

}  // namespace pipehazard
