#include "pipehazard/hazards.hpp"

#include <algorithm>

#include "pipehazard/equivalence.hpp"

namespace pipehazard {

std::vector<HazardRecord> raw_hazards(const InstructionSpec& producer,
                                      const DestOperand& d,
                                      const InstructionSpec& consumer,
                                      const SourceOperand& s) {
  std::vector<HazardRecord> out;
  const Stage ln = s.last_needed;
  const Stage fa = d.first_avail;
  const Stage la = d.last_avail;
  auto base = [&](Stage k) {
    HazardRecord r;
    r.type = HazardType::Raw;
    r.older_opcode = producer.opcode;
    r.older_operand = d.name;
    r.newer_opcode = consumer.opcode;
    r.newer_operand = s.name;
    r.hazard_pair = {ln, k};
    r.gap = k - ln;
    return r;
  };
  // The producer has not produced yet: hold the consumer until it has.
  for (Stage k = std::max(1, ln + 1); k <= fa - 1; ++k) {
    HazardRecord r = base(k);
    r.resolution = {ActionKind::Stall, 0, 0, fa - k};
    r.apply_at = {1, k - ln + 1};
    r.stalled_opcode = consumer.opcode;
    out.push_back(std::move(r));
  }
  // The value is live in the producer's pipeline: route it to the read stage.
  for (Stage k = std::max(fa, ln + 1); k <= la; ++k) {
    HazardRecord r = base(k);
    r.resolution = {ActionKind::Forward, k, ln, 0};
    r.apply_at = {ln, k};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<HazardRecord> war_hazards(const InstructionSpec& reader,
                                      const SourceOperand& s,
                                      const InstructionSpec& writer,
                                      const DestOperand& d) {
  std::vector<HazardRecord> out;
  const Stage w = d.write_stage;
  const Stage r = s.read_stage;
  for (Stage k = std::max(1, w + 1); k <= r; ++k) {
    HazardRecord rec;
    rec.type = HazardType::War;
    rec.older_opcode = reader.opcode;
    rec.older_operand = s.name;
    rec.newer_opcode = writer.opcode;
    rec.newer_operand = d.name;
    rec.hazard_pair = {w, k};
    rec.gap = k - w;
    rec.resolution = {ActionKind::Stall, 0, 0, r - k + 1};
    rec.apply_at = {1, k - w + 1};
    rec.stalled_opcode = writer.opcode;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<HazardRecord> waw_hazards(const InstructionSpec& first_writer,
                                      const DestOperand& d_i,
                                      const InstructionSpec& second_writer,
                                      const DestOperand& d_j) {
  std::vector<HazardRecord> out;
  const Stage wi = d_i.write_stage;
  const Stage wj = d_j.write_stage;
  for (Stage k = std::max(1, wj + 1); k <= wi; ++k) {
    HazardRecord rec;
    rec.type = HazardType::Waw;
    rec.older_opcode = first_writer.opcode;
    rec.older_operand = d_i.name;
    rec.newer_opcode = second_writer.opcode;
    rec.newer_operand = d_j.name;
    rec.hazard_pair = {wj, k};
    rec.gap = k - wj;
    rec.resolution = {ActionKind::Stall, 0, 0, wi - k + 1};
    rec.apply_at = {1, k - wj + 1};
    rec.stalled_opcode = second_writer.opcode;
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

template <typename Pairs>
std::vector<HazardRecord> enumerate_pairs(const Pairs& instructions,
                                          unsigned types) {
  std::vector<HazardRecord> out;
  auto append = [&](std::vector<HazardRecord> recs) {
    out.insert(out.end(), std::make_move_iterator(recs.begin()),
               std::make_move_iterator(recs.end()));
  };
  for (const InstructionSpec* older : instructions) {
    for (const InstructionSpec* newer : instructions) {
      if (types & kTypeRaw)
        for (const auto& d : older->dests)
          for (const auto& s : newer->sources)
            append(raw_hazards(*older, d, *newer, s));
      if (types & kTypeWar)
        for (const auto& s : older->sources)
          for (const auto& d : newer->dests)
            append(war_hazards(*older, s, *newer, d));
      if (types & kTypeWaw)
        for (const auto& di : older->dests)
          for (const auto& dj : newer->dests)
            append(waw_hazards(*older, di, *newer, dj));
    }
  }
  return out;
}

std::vector<HazardRecord> enumerate_reduced(const InstructionSet& is,
                                            unsigned types) {
  std::vector<HazardRecord> out;
  auto run = [&](ReductionLevel level, unsigned mask) {
    if (!(types & mask)) return;
    ReducedSet reduced = reduce(is, level);
    std::vector<const InstructionSpec*> reps;
    reps.reserve(reduced.classes.size());
    for (const auto& cls : reduced.classes) reps.push_back(&cls.representative);
    auto class_records = enumerate_pairs(reps, mask);
    auto concrete = expand(class_records, reduced);
    out.insert(out.end(), std::make_move_iterator(concrete.begin()),
               std::make_move_iterator(concrete.end()));
  };
  run(ReductionLevel::Raw, kTypeRaw);
  run(ReductionLevel::Write, kTypeWar);
  run(ReductionLevel::Write, kTypeWaw);
  return out;
}

}  // namespace

std::vector<HazardRecord> enumerate_all(const InstructionSet& is, unsigned types,
                                        bool use_reduction) {
  std::vector<HazardRecord> out;
  if (use_reduction) {
    out = enumerate_reduced(is, types);
  } else {
    std::vector<const InstructionSpec*> insts;
    insts.reserve(is.instructions.size());
    for (const auto& inst : is.instructions) insts.push_back(&inst);
    out = enumerate_pairs(insts, types);
  }
  canonicalize(out, is);
  return out;
}

std::vector<HazardRecord> filter_pair(const std::vector<HazardRecord>& records,
                                      const PairFilter& filter) {
  std::vector<HazardRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const HazardRecord& r) {
                 return filter.matches(r.older_opcode, r.newer_opcode);
               });
  return out;
}

}  // namespace pipehazard
