#ifndef PIPEHAZARD_TESTS_GOLDEN_HPP
#define PIPEHAZARD_TESTS_GOLDEN_HPP

#include <string>
#include <vector>

#include "pipehazard/records.hpp"

namespace fixtures {

using pipehazard::ActionKind;
using pipehazard::HazardRecord;
using pipehazard::HazardType;

// gap always equals pair_older - pair_newer on a coupled sequence.
inline HazardRecord stall_rec(HazardType type, std::string older_op,
                              std::string older_operand, std::string newer_op,
                              std::string newer_operand, int pair_n, int pair_o,
                              int cycles, int apply_n, int apply_o) {
  HazardRecord r;
  r.type = type;
  r.older_opcode = std::move(older_op);
  r.older_operand = std::move(older_operand);
  r.newer_opcode = std::move(newer_op);
  r.newer_operand = std::move(newer_operand);
  r.hazard_pair = {pair_n, pair_o};
  r.gap = pair_o - pair_n;
  r.resolution = {ActionKind::Stall, 0, 0, cycles};
  r.apply_at = {apply_n, apply_o};
  r.stalled_opcode = r.newer_opcode;
  return r;
}

inline HazardRecord forward_rec(std::string older_op, std::string older_operand,
                                std::string newer_op, std::string newer_operand,
                                int pair_n, int pair_o) {
  HazardRecord r;
  r.type = HazardType::Raw;
  r.older_opcode = std::move(older_op);
  r.older_operand = std::move(older_operand);
  r.newer_opcode = std::move(newer_op);
  r.newer_operand = std::move(newer_operand);
  r.hazard_pair = {pair_n, pair_o};
  r.gap = pair_o - pair_n;
  r.resolution = {ActionKind::Forward, pair_o, pair_n, 0};
  r.apply_at = {pair_n, pair_o};
  return r;
}

// All read-after-write cases for the producer/consumer fixture, in canonical
// order: d1 feeds s1 and s2, then d2 feeds s1 and s2, gaps ascending.
inline std::vector<HazardRecord> golden_raw_producer_consumer() {
  const auto raw = HazardType::Raw;
  return {
      stall_rec(raw, "inst1", "d1", "inst2", "s1", 1, 2, 1, 1, 2),
      forward_rec("inst1", "d1", "inst2", "s1", 1, 3),
      forward_rec("inst1", "d1", "inst2", "s1", 1, 4),
      forward_rec("inst1", "d1", "inst2", "s2", 2, 3),
      forward_rec("inst1", "d1", "inst2", "s2", 2, 4),
      stall_rec(raw, "inst1", "d2", "inst2", "s1", 1, 2, 3, 1, 2),
      stall_rec(raw, "inst1", "d2", "inst2", "s1", 1, 3, 2, 1, 3),
      stall_rec(raw, "inst1", "d2", "inst2", "s1", 1, 4, 1, 1, 4),
      forward_rec("inst1", "d2", "inst2", "s1", 1, 5),
      stall_rec(raw, "inst1", "d2", "inst2", "s2", 2, 3, 2, 1, 2),
      stall_rec(raw, "inst1", "d2", "inst2", "s2", 2, 4, 1, 1, 3),
      forward_rec("inst1", "d2", "inst2", "s2", 2, 5),
  };
}

// All write-after-read cases for the reader/writer fixture: the reader inst2
// is older, the writer inst1 is newer and is the one stalled.
inline std::vector<HazardRecord> golden_war_reader_writer() {
  const auto war = HazardType::War;
  return {
      stall_rec(war, "inst2", "s1", "inst1", "d1", 1, 2, 3, 1, 2),
      stall_rec(war, "inst2", "s1", "inst1", "d1", 1, 3, 2, 1, 3),
      stall_rec(war, "inst2", "s1", "inst1", "d1", 1, 4, 1, 1, 4),
      stall_rec(war, "inst2", "s1", "inst1", "d2", 2, 3, 2, 1, 2),
      stall_rec(war, "inst2", "s1", "inst1", "d2", 2, 4, 1, 1, 3),
      stall_rec(war, "inst2", "s2", "inst1", "d1", 1, 2, 4, 1, 2),
      stall_rec(war, "inst2", "s2", "inst1", "d1", 1, 3, 3, 1, 3),
      stall_rec(war, "inst2", "s2", "inst1", "d1", 1, 4, 2, 1, 4),
      stall_rec(war, "inst2", "s2", "inst1", "d1", 1, 5, 1, 1, 5),
      stall_rec(war, "inst2", "s2", "inst1", "d2", 2, 3, 3, 1, 2),
      stall_rec(war, "inst2", "s2", "inst1", "d2", 2, 4, 2, 1, 3),
      stall_rec(war, "inst2", "s2", "inst1", "d2", 2, 5, 1, 1, 4),
  };
}

// The single write-after-write case of the reader/writer fixture: inst1's
// late d2 write (stage 2) against a second issue's d1 write (stage 1).
inline std::vector<HazardRecord> golden_waw_reader_writer() {
  return {stall_rec(HazardType::Waw, "inst1", "d2", "inst1", "d1", 1, 2, 1, 1, 2)};
}

// The single write-after-write case of the producer/consumer fixture.
inline std::vector<HazardRecord> golden_waw_producer_consumer() {
  return {stall_rec(HazardType::Waw, "inst1", "d2", "inst1", "d1", 4, 5, 1, 1, 2)};
}

}  // namespace fixtures

#endif
