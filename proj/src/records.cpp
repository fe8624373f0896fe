#include "pipehazard/records.hpp"

#include <algorithm>
#include <tuple>

namespace pipehazard {

const char* type_name(HazardType type) {
  switch (type) {
    case HazardType::Raw: return "RAW";
    case HazardType::War: return "WAR";
    case HazardType::Waw: return "WAW";
  }
  return "?";
}

unsigned type_mask(HazardType type) {
  switch (type) {
    case HazardType::Raw: return kTypeRaw;
    case HazardType::War: return kTypeWar;
    case HazardType::Waw: return kTypeWaw;
  }
  return 0;
}

std::string case_label(const HazardRecord& rec) {
  const bool same = rec.older_opcode == rec.newer_opcode;
  auto side = [&](const std::string& opcode, const std::string& operand, int issue) {
    std::string s = opcode;
    if (same) s += "(" + std::to_string(issue) + ")";
    s += "." + operand;
    return s;
  };
  // Writer side first: the dest operand defines the value under contention.
  switch (rec.type) {
    case HazardType::Raw:
      return side(rec.older_opcode, rec.older_operand, 1) + " = " +
             side(rec.newer_opcode, rec.newer_operand, 2);
    case HazardType::War:
      return side(rec.newer_opcode, rec.newer_operand, 2) + " = " +
             side(rec.older_opcode, rec.older_operand, 1);
    case HazardType::Waw:
      return side(rec.older_opcode, rec.older_operand, 1) + " = " +
             side(rec.newer_opcode, rec.newer_operand, 2);
  }
  return {};
}

std::string describe(const HazardRecord& rec) {
  std::string s = type_name(rec.type);
  s += " " + case_label(rec);
  s += " pair=(" + std::to_string(rec.hazard_pair.newer) + "," +
       std::to_string(rec.hazard_pair.older) + ")";
  s += " gap=" + std::to_string(rec.gap);
  if (rec.resolution.kind == ActionKind::Forward) {
    s += " forward " + std::to_string(rec.resolution.forward_from) + " -> " +
         std::to_string(rec.resolution.forward_to);
  } else {
    s += " stall " + std::to_string(rec.resolution.stall_cycles) + " (" +
         rec.stalled_opcode + ") at (" + std::to_string(rec.apply_at.newer) + "," +
         std::to_string(rec.apply_at.older) + ")";
  }
  return s;
}

namespace {

int instruction_rank(const InstructionSet& is, const std::string& opcode) {
  for (size_t i = 0; i < is.instructions.size(); ++i)
    if (is.instructions[i].opcode == opcode) return static_cast<int>(i);
  return static_cast<int>(is.instructions.size());
}

// Sources come before dests, both in declaration order.
int operand_rank(const InstructionSet& is, const std::string& opcode,
                 const std::string& operand) {
  const InstructionSpec* inst = is.find(opcode);
  if (!inst) return 1 << 20;
  for (size_t i = 0; i < inst->sources.size(); ++i)
    if (inst->sources[i].name == operand) return static_cast<int>(i);
  for (size_t i = 0; i < inst->dests.size(); ++i)
    if (inst->dests[i].name == operand)
      return static_cast<int>(inst->sources.size() + i);
  return 1 << 20;
}

int type_rank(HazardType t) {
  switch (t) {
    case HazardType::Raw: return 0;
    case HazardType::War: return 1;
    case HazardType::Waw: return 2;
  }
  return 3;
}

}  // namespace

void canonicalize(std::vector<HazardRecord>& records, const InstructionSet& origin) {
  auto key = [&](const HazardRecord& r) {
    return std::make_tuple(type_rank(r.type),
                           instruction_rank(origin, r.older_opcode), r.older_opcode,
                           instruction_rank(origin, r.newer_opcode), r.newer_opcode,
                           operand_rank(origin, r.older_opcode, r.older_operand),
                           r.older_operand,
                           operand_rank(origin, r.newer_opcode, r.newer_operand),
                           r.newer_operand, r.gap);
  };
  std::stable_sort(records.begin(), records.end(),
                   [&](const HazardRecord& a, const HazardRecord& b) {
                     return key(a) < key(b);
                   });
}

}  // namespace pipehazard
