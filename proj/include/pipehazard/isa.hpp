#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pipehazard {

// 1-based pipeline stage number.
using Stage = int;

// Source operand timing: the value is read at `read_stage` and can be
// delivered anywhere in [first_needed, last_needed]. `last_needed` is the
// critical stage; past it the instruction cannot accept the value any more.
struct SourceOperand {
  std::string name;
  Stage read_stage = 1;
  Stage first_needed = 1;
  Stage last_needed = 1;

  friend bool operator==(const SourceOperand&, const SourceOperand&) = default;
};

// Destination operand timing: the result is written at `write_stage`, lives
// in pipeline registers during [first_avail, last_avail], and sits at its
// final destination afterwards.
struct DestOperand {
  std::string name;
  Stage write_stage = 1;
  Stage first_avail = 1;
  Stage last_avail = 1;

  friend bool operator==(const DestOperand&, const DestOperand&) = default;
};

struct InstructionSpec {
  std::string opcode;
  int depth = 1;  // number of pipeline stages the instruction traverses
  std::vector<SourceOperand> sources;
  std::vector<DestOperand> dests;

  const SourceOperand* find_source(std::string_view name) const;
  const DestOperand* find_dest(std::string_view name) const;

  friend bool operator==(const InstructionSpec&, const InstructionSpec&) = default;
};

struct InstructionSet {
  std::vector<InstructionSpec> instructions;

  const InstructionSpec* find(std::string_view opcode) const;
  bool empty() const { return instructions.empty(); }

  friend bool operator==(const InstructionSet&, const InstructionSet&) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string location;  // line number (as text) or opcode/operand path
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

bool has_errors(const std::vector<Diagnostic>& diags);

// One diagnostic per line, "severity:location:message".
std::string format_diagnostics(const std::vector<Diagnostic>& diags);

struct ParseResult {
  // Engaged iff no error diagnostics were produced. Warnings alone do not
  // prevent a parse from succeeding.
  std::optional<InstructionSet> set;
  std::vector<Diagnostic> diagnostics;
};

// Parses the line-oriented ISA description format:
//
//   # comment (full-line or trailing)
//   instruction <opcode> depth=<int>
//     src <name> read=<int> first_needed=<int> last_needed=<int>
//     dst <name> write=<int> first_avail=<int> last_avail=<int>
//   end
//
// Tokens are separated by spaces/tabs, integers are decimal, identifiers
// match [A-Za-z_][A-Za-z0-9_.]*. All diagnostics are collected, not just the
// first.
ParseResult parse_instruction_set(std::string_view text);

// Checks every structural invariant: unique opcodes, unique operand names
// per instruction, stage fields within [1, depth], first_needed <=
// last_needed, first_avail <= last_avail, write <= last_avail. Emits
// warnings for read stages outside the needed interval and for writes before
// first availability. Empty sets are valid here; analysis entry points
// reject them separately.
std::vector<Diagnostic> validate(const InstructionSet& is);

// Stage pair on a coupled execution sequence: the newer instruction is at
// stage `newer` while the older is at stage `older`; older - newer == gap.
struct StagePair {
  Stage newer = 0;
  Stage older = 0;

  friend bool operator==(const StagePair&, const StagePair&) = default;
};

struct CoupledSequence {
  int gap = 0;  // cycles between the two pipeline entries
  std::vector<StagePair> pairs;
};

// The ordered stage list <1, 2, ..., depth>.
std::vector<Stage> execution_sequence(const InstructionSpec& inst);

// Pairs <(a, a+gap)> for a = 1 .. min(newer.depth, older.depth - gap);
// empty when gap >= older.depth. Throws std::invalid_argument for gap < 1.
CoupledSequence coupled_sequence(const InstructionSpec& older,
                                 const InstructionSpec& newer, int gap);

// One sequence per gap in 1 .. older.depth - 1, ascending.
std::vector<CoupledSequence> all_coupled_sequences(const InstructionSpec& older,
                                                   const InstructionSpec& newer);

}  // namespace pipehazard
