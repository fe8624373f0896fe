#ifndef PIPEHAZARD_REPORT_HPP
#define PIPEHAZARD_REPORT_HPP

#include <string>
#include <vector>

#include "pipehazard/hazards.hpp"
#include "pipehazard/isa.hpp"
#include "pipehazard/records.hpp"

namespace pipehazard {

// One (older operand, newer operand) combination a hazard table must cover,
// whether or not any record exists for it.
struct HazardCase {
  HazardType type = HazardType::Raw;
  std::string older_opcode;
  std::string older_operand;
  std::string newer_opcode;
  std::string newer_operand;
};

std::string case_label(const HazardCase& c);

// Every case of the requested types over every ordered instruction pair,
// in canonical order, optionally restricted to one opcode pair.
std::vector<HazardCase> case_matrix(const InstructionSet& is, unsigned types,
                                    const PairFilter& filter = {});

// Text tables in the style:
//   == RAW hazards ==
//   Case  Hazard  Stalled inst.  # stall cycles   (one row per stall record,
//                                                  "-" row for empty cases)
//   == RAW forwards ==
//   Case  Hazard  Forward                         (e.g. "3 -> 1")
// One section pair per hazard type present in records or cases; records must
// already be in canonical order.
std::string render_hazard_table(const std::vector<HazardRecord>& records,
                                const std::vector<HazardCase>& cases = {});

// Operands drawn in one grid: the older-side operand against one or more
// newer-side operands (rows of several sources or dests share the grid).
struct DiagramBinding {
  HazardType type = HazardType::Raw;
  std::string older_operand;
  std::vector<std::string> newer_operands;
};

// ASCII stage grid: rows are newer stages (stage 1 at the bottom), columns
// are older stages. Hazard cells come from the supplied records (only those
// matching the binding are drawn); a legend is always appended.
// Throws std::invalid_argument for operands missing the role the type needs.
std::string render_diagram(const InstructionSpec& older,
                           const InstructionSpec& newer,
                           const DiagramBinding& binding,
                           const std::vector<HazardRecord>& records);

// CSV dialect: fixed header, one row per record, LF newlines, empty cells
// for fields the action does not use. import_csv throws std::runtime_error
// on any malformed input. import_csv(export_csv(x)) == x.
std::string export_csv(const std::vector<HazardRecord>& records);
std::vector<HazardRecord> import_csv(const std::string& text);

// Normalized file form; parse_instruction_set(render_isa(x)) reproduces x.
std::string render_isa(const InstructionSet& is);

}  // namespace pipehazard

#endif
