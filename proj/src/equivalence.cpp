#include "pipehazard/equivalence.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace pipehazard {

const char* level_name(ReductionLevel level) {
  switch (level) {
    case ReductionLevel::Full: return "full";
    case ReductionLevel::Raw: return "raw";
    case ReductionLevel::Write: return "write";
  }
  return "?";
}

std::vector<Stage> operand_key(const SourceOperand& op, ReductionLevel level) {
  switch (level) {
    case ReductionLevel::Full: return {op.read_stage, op.last_needed};
    case ReductionLevel::Raw: return {op.last_needed};
    case ReductionLevel::Write: return {op.read_stage};
  }
  return {};
}

std::vector<Stage> operand_key(const DestOperand& op, ReductionLevel level) {
  switch (level) {
    case ReductionLevel::Full:
      return {op.write_stage, op.first_avail, op.last_avail};
    case ReductionLevel::Raw: return {op.first_avail, op.last_avail};
    case ReductionLevel::Write: return {op.write_stage};
  }
  return {};
}

std::vector<std::string> key_field_names(OperandRole role, ReductionLevel level) {
  if (role == OperandRole::Source) {
    switch (level) {
      case ReductionLevel::Full: return {"read", "last_needed"};
      case ReductionLevel::Raw: return {"last_needed"};
      case ReductionLevel::Write: return {"read"};
    }
  } else {
    switch (level) {
      case ReductionLevel::Full: return {"write", "first_avail", "last_avail"};
      case ReductionLevel::Raw: return {"first_avail", "last_avail"};
      case ReductionLevel::Write: return {"write"};
    }
  }
  return {};
}

namespace {

// Per-instruction operand partition: distinct keys in declaration order of
// their first occurrence, each with that instruction's matching operands.
template <typename Op>
std::vector<std::pair<std::vector<Stage>, std::vector<std::string>>>
partition_operands(const std::vector<Op>& ops, ReductionLevel level) {
  std::vector<std::pair<std::vector<Stage>, std::vector<std::string>>> groups;
  for (const auto& op : ops) {
    auto key = operand_key(op, level);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == key; });
    if (it == groups.end())
      groups.push_back({std::move(key), {op.name}});
    else
      it->second.push_back(op.name);
  }
  return groups;
}

// Merging requires equal depth and equal distinct key sets per role; the
// groups above keep first-occurrence order, so compare them sorted.
std::vector<std::vector<Stage>> sorted_keys(
    const std::vector<std::pair<std::vector<Stage>, std::vector<std::string>>>&
        groups) {
  std::vector<std::vector<Stage>> keys;
  keys.reserve(groups.size());
  for (const auto& g : groups) keys.push_back(g.first);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

ReducedSet reduce(const InstructionSet& is, ReductionLevel level) {
  ReducedSet out;
  out.level = level;
  out.origin = is;

  struct Prepared {
    const InstructionSpec* inst;
    std::vector<std::pair<std::vector<Stage>, std::vector<std::string>>> src_groups;
    std::vector<std::pair<std::vector<Stage>, std::vector<std::string>>> dst_groups;
    std::vector<std::vector<Stage>> src_sig;
    std::vector<std::vector<Stage>> dst_sig;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(is.instructions.size());
  for (const auto& inst : is.instructions) {
    Prepared p;
    p.inst = &inst;
    p.src_groups = partition_operands(inst.sources, level);
    p.dst_groups = partition_operands(inst.dests, level);
    p.src_sig = sorted_keys(p.src_groups);
    p.dst_sig = sorted_keys(p.dst_groups);
    prepared.push_back(std::move(p));
  }

  struct Signature {
    int depth;
    std::vector<std::vector<Stage>> src;
    std::vector<std::vector<Stage>> dst;
    bool operator==(const Signature&) const = default;
  };
  std::vector<Signature> signatures;  // parallel to out.classes

  for (const auto& p : prepared) {
    const Signature sig{p.inst->depth, p.src_sig, p.dst_sig};
    InstructionClass* home = nullptr;
    for (size_t c = 0; c < out.classes.size(); ++c) {
      if (signatures[c] == sig) {
        home = &out.classes[c];
        break;
      }
    }
    if (!home) {
      InstructionClass cls;
      cls.representative = *p.inst;
      cls.representative.sources.clear();
      cls.representative.dests.clear();
      for (const auto& [key, names] : p.src_groups) {
        OperandClass oc;
        oc.role = OperandRole::Source;
        oc.key = key;
        for (const auto& n : names) oc.members.push_back({p.inst->opcode, n});
        cls.representative.sources.push_back(*p.inst->find_source(names.front()));
        cls.source_classes.push_back(std::move(oc));
      }
      for (const auto& [key, names] : p.dst_groups) {
        OperandClass oc;
        oc.role = OperandRole::Dest;
        oc.key = key;
        for (const auto& n : names) oc.members.push_back({p.inst->opcode, n});
        cls.representative.dests.push_back(*p.inst->find_dest(names.front()));
        cls.dest_classes.push_back(std::move(oc));
      }
      cls.members.push_back(p.inst->opcode);
      out.classes.push_back(std::move(cls));
      signatures.push_back(sig);
    } else {
      home->members.push_back(p.inst->opcode);
      for (const auto& [key, names] : p.src_groups) {
        auto it = std::find_if(home->source_classes.begin(),
                               home->source_classes.end(),
                               [&](const OperandClass& oc) { return oc.key == key; });
        for (const auto& n : names) it->members.push_back({p.inst->opcode, n});
      }
      for (const auto& [key, names] : p.dst_groups) {
        auto it = std::find_if(home->dest_classes.begin(), home->dest_classes.end(),
                               [&](const OperandClass& oc) { return oc.key == key; });
        for (const auto& n : names) it->members.push_back({p.inst->opcode, n});
      }
    }
  }
  return out;
}

namespace {

struct ClassRef {
  const InstructionClass* cls;
  const OperandClass* operand;
};

ClassRef resolve(const ReducedSet& reduced, const std::string& opcode,
                 const std::string& operand) {
  for (const auto& cls : reduced.classes) {
    if (cls.representative.opcode != opcode) continue;
    for (const auto& oc : cls.source_classes)
      if (oc.representative().name == operand) return {&cls, &oc};
    for (const auto& oc : cls.dest_classes)
      if (oc.representative().name == operand) return {&cls, &oc};
    throw std::invalid_argument("expand: unknown operand class " + opcode + "." +
                                operand);
  }
  throw std::invalid_argument("expand: unknown instruction class " + opcode);
}

}  // namespace

std::vector<HazardRecord> expand(const std::vector<HazardRecord>& records,
                                 const ReducedSet& reduced) {
  std::vector<HazardRecord> out;
  for (const auto& rec : records) {
    ClassRef older = resolve(reduced, rec.older_opcode, rec.older_operand);
    ClassRef newer = resolve(reduced, rec.newer_opcode, rec.newer_operand);
    for (const auto& older_inst : older.cls->members) {
      for (const auto& older_ref : older.operand->members) {
        if (older_ref.opcode != older_inst) continue;
        for (const auto& newer_inst : newer.cls->members) {
          for (const auto& newer_ref : newer.operand->members) {
            if (newer_ref.opcode != newer_inst) continue;
            HazardRecord r = rec;
            r.older_opcode = older_inst;
            r.older_operand = older_ref.name;
            r.newer_opcode = newer_inst;
            r.newer_operand = newer_ref.name;
            if (rec.stalled_opcode == rec.newer_opcode)
              r.stalled_opcode = newer_inst;
            else if (rec.stalled_opcode == rec.older_opcode)
              r.stalled_opcode = older_inst;
            out.push_back(std::move(r));
          }
        }
      }
    }
  }
  return out;
}

std::string render_reduction(const ReducedSet& reduced) {
  std::string out = "level=";
  out += level_name(reduced.level);
  out += " classes=" + std::to_string(reduced.classes.size()) + "\n";
  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += parts[i];
    }
    return s;
  };
  for (const auto& cls : reduced.classes) {
    out += "class " + cls.representative.opcode +
           " depth=" + std::to_string(cls.representative.depth) +
           " members=" + join(cls.members) + "\n";
    auto render_operand_class = [&](const OperandClass& oc) {
      const auto fields = key_field_names(oc.role, reduced.level);
      std::string line = "  ";
      line += oc.role == OperandRole::Source ? "src " : "dst ";
      line += oc.representative().name + " key(";
      for (size_t i = 0; i < oc.key.size(); ++i) {
        if (i) line += ",";
        line += fields[i] + "=" + std::to_string(oc.key[i]);
      }
      line += ") members=";
      std::vector<std::string> refs;
      for (const auto& m : oc.members) refs.push_back(m.opcode + "." + m.name);
      line += join(refs);
      out += line + "\n";
    };
    for (const auto& oc : cls.source_classes) render_operand_class(oc);
    for (const auto& oc : cls.dest_classes) render_operand_class(oc);
  }
  return out;
}

}  // namespace pipehazard
