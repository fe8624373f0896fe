#include "pipehazard/isa.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <stdexcept>

namespace pipehazard {

const SourceOperand* InstructionSpec::find_source(std::string_view name) const {
  for (const auto& s : sources)
    if (s.name == name) return &s;
  return nullptr;
}

const DestOperand* InstructionSpec::find_dest(std::string_view name) const {
  for (const auto& d : dests)
    if (d.name == name) return &d;
  return nullptr;
}

const InstructionSpec* InstructionSet::find(std::string_view opcode) const {
  for (const auto& inst : instructions)
    if (inst.opcode == opcode) return &inst;
  return nullptr;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

std::string format_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    out += d.severity == Severity::Error ? "error" : "warning";
    out += ':';
    out += d.location;
    out += ':';
    out += d.message;
    out += '\n';
  }
  return out;
}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
  if (!alpha(s[0]) && s[0] != '_') return false;
  for (char c : s.substr(1))
    if (!alnum(c) && c != '_' && c != '.') return false;
  return true;
}

bool parse_int(std::string_view s, int& value) {
  if (s.empty()) return false;
  int out = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  if (ec != std::errc() || ptr != end) return false;
  value = out;
  return true;
}

// Token of the exact form key=<int>.
bool parse_kv(std::string_view token, std::string_view key, int& value) {
  auto eq = token.find('=');
  if (eq == std::string_view::npos) return false;
  if (token.substr(0, eq) != key) return false;
  return parse_int(token.substr(eq + 1), value);
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

// Per-instruction invariant checks shared by validate() and the parser.
// Locations are opcode/operand paths; the parser remaps them to line numbers.
std::vector<Diagnostic> check_instruction(const InstructionSpec& inst) {
  std::vector<Diagnostic> out;
  auto emit = [&](Severity sev, std::string loc, std::string msg) {
    out.push_back({sev, std::move(loc), std::move(msg)});
  };
  if (inst.depth < 1) {
    emit(Severity::Error, inst.opcode, "depth must be at least 1");
    return out;  // stage ranges are meaningless without a depth
  }
  auto in_range = [&](const std::string& loc, const char* field, Stage v) {
    if (v < 1 || v > inst.depth)
      emit(Severity::Error, loc,
           std::string("stage out of range: ") + field + "=" + std::to_string(v) +
               " not in [1, " + std::to_string(inst.depth) + "]");
  };
  // Warnings are advisory; an operand that already has an error skips them.
  for (const auto& s : inst.sources) {
    const std::string loc = inst.opcode + "." + s.name;
    const size_t before = out.size();
    in_range(loc, "read", s.read_stage);
    in_range(loc, "first_needed", s.first_needed);
    in_range(loc, "last_needed", s.last_needed);
    if (s.first_needed > s.last_needed) {
      emit(Severity::Error, loc,
           "invalid interval: first_needed=" + std::to_string(s.first_needed) +
               " > last_needed=" + std::to_string(s.last_needed));
    } else if (out.size() == before &&
               (s.read_stage < s.first_needed || s.read_stage > s.last_needed)) {
      emit(Severity::Warning, loc, "read stage outside needed interval");
    }
  }
  for (const auto& d : inst.dests) {
    const std::string loc = inst.opcode + "." + d.name;
    const size_t before = out.size();
    in_range(loc, "write", d.write_stage);
    in_range(loc, "first_avail", d.first_avail);
    in_range(loc, "last_avail", d.last_avail);
    if (d.first_avail > d.last_avail)
      emit(Severity::Error, loc,
           "invalid interval: first_avail=" + std::to_string(d.first_avail) +
               " > last_avail=" + std::to_string(d.last_avail));
    if (d.write_stage > d.last_avail)
      emit(Severity::Error, loc,
           "write after last availability: write=" + std::to_string(d.write_stage) +
               " > last_avail=" + std::to_string(d.last_avail));
    else if (out.size() == before && d.write_stage < d.first_avail)
      emit(Severity::Warning, loc, "write stage before first availability");
  }
  return out;
}

}  // namespace

std::vector<Diagnostic> validate(const InstructionSet& is) {
  std::vector<Diagnostic> out;
  std::set<std::string, std::less<>> opcodes;
  for (const auto& inst : is.instructions) {
    if (!opcodes.insert(inst.opcode).second)
      out.push_back({Severity::Error, inst.opcode,
                     "duplicate opcode " + quoted(inst.opcode)});
    std::set<std::string, std::less<>> names;
    auto check_name = [&](const std::string& n) {
      if (!names.insert(n).second)
        out.push_back({Severity::Error, inst.opcode + "." + n,
                       "duplicate operand name " + quoted(n) + " in instruction " +
                           quoted(inst.opcode)});
    };
    for (const auto& s : inst.sources) check_name(s.name);
    for (const auto& d : inst.dests) check_name(d.name);
    auto inst_diags = check_instruction(inst);
    out.insert(out.end(), inst_diags.begin(), inst_diags.end());
  }
  return out;
}

ParseResult parse_instruction_set(std::string_view text) {
  struct LineDiag {
    int line;
    Diagnostic diag;
  };
  struct Block {
    InstructionSpec spec;
    int header_line = 0;
    bool poisoned = false;  // header failed to parse; skip semantic checks
    std::map<std::string, int, std::less<>> operand_lines;
    std::set<std::string, std::less<>> operand_names;
  };

  std::vector<LineDiag> diags;
  std::vector<Block> blocks;
  std::map<std::string, int, std::less<>> opcode_lines;
  std::optional<Block> current;
  int line_no = 0;

  auto emit = [&](int line, Severity sev, std::string msg) {
    diags.push_back({line, {sev, std::to_string(line), std::move(msg)}});
  };
  auto close_block = [&]() {
    if (current) {
      blocks.push_back(std::move(*current));
      current.reset();
    }
  };

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                 ? text.size() - pos
                                                 : nl - pos);
    if (nl == std::string_view::npos && line.empty() && pos == text.size()) break;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::vector<std::string_view> tokens;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    if (tokens.empty()) continue;

    const std::string_view kw = tokens[0];
    if (kw == "instruction") {
      if (current) {
        emit(line_no, Severity::Error,
             "missing 'end' for instruction " + quoted(current->spec.opcode) +
                 " before new instruction block");
        close_block();
      }
      Block b;
      b.header_line = line_no;
      if (tokens.size() != 3) {
        emit(line_no, Severity::Error,
             "expected 'instruction <opcode> depth=<int>'");
        b.poisoned = true;
      } else {
        if (!is_identifier(tokens[1])) {
          emit(line_no, Severity::Error,
               "invalid identifier " + quoted(tokens[1]));
          b.poisoned = true;
        }
        b.spec.opcode = std::string(tokens[1]);
        int depth = 0;
        if (!parse_kv(tokens[2], "depth", depth)) {
          emit(line_no, Severity::Error,
               "malformed token " + quoted(tokens[2]) + ": expected 'depth=<int>'");
          b.poisoned = true;
        } else {
          b.spec.depth = depth;
        }
      }
      if (!b.poisoned) {
        auto [it, inserted] = opcode_lines.emplace(b.spec.opcode, line_no);
        if (!inserted)
          emit(line_no, Severity::Error,
               "duplicate opcode " + quoted(b.spec.opcode) +
                   " (first declared on line " + std::to_string(it->second) + ")");
      }
      current = std::move(b);
    } else if (kw == "src" || kw == "dst") {
      if (!current) {
        emit(line_no, Severity::Error,
             "operand line outside an instruction block");
        continue;
      }
      const bool is_src = kw == "src";
      const char* keys_src[] = {"read", "first_needed", "last_needed"};
      const char* keys_dst[] = {"write", "first_avail", "last_avail"};
      const char** keys = is_src ? keys_src : keys_dst;
      if (tokens.size() != 5) {
        emit(line_no, Severity::Error,
             std::string("expected '") + (is_src ? "src" : "dst") + " <name> " +
                 keys[0] + "=<int> " + keys[1] + "=<int> " + keys[2] + "=<int>'");
        continue;
      }
      if (!is_identifier(tokens[1])) {
        emit(line_no, Severity::Error, "invalid identifier " + quoted(tokens[1]));
        continue;
      }
      int values[3] = {0, 0, 0};
      bool ok = true;
      for (int f = 0; f < 3; ++f) {
        if (!parse_kv(tokens[2 + f], keys[f], values[f])) {
          emit(line_no, Severity::Error,
               "malformed token " + quoted(tokens[2 + f]) + ": expected '" +
                   keys[f] + "=<int>'");
          ok = false;
        }
      }
      if (!ok) continue;
      const std::string name(tokens[1]);
      if (!current->operand_names.insert(name).second)
        emit(line_no, Severity::Error,
             "duplicate operand name " + quoted(name) + " in instruction " +
                 quoted(current->spec.opcode));
      current->operand_lines.emplace(name, line_no);
      if (is_src)
        current->spec.sources.push_back({name, values[0], values[1], values[2]});
      else
        current->spec.dests.push_back({name, values[0], values[1], values[2]});
    } else if (kw == "end") {
      if (tokens.size() != 1)
        emit(line_no, Severity::Error, "unexpected tokens after 'end'");
      if (!current) {
        emit(line_no, Severity::Error, "'end' outside an instruction block");
        continue;
      }
      close_block();
    } else {
      emit(line_no, Severity::Error, "unknown keyword " + quoted(kw));
    }
  }
  if (current) {
    emit(current->header_line, Severity::Error,
         "missing 'end' for instruction " + quoted(current->spec.opcode));
    close_block();
  }

  InstructionSet set;
  for (const auto& b : blocks) {
    if (b.poisoned) continue;
    for (const auto& d : check_instruction(b.spec)) {
      int line = b.header_line;
      if (auto dot = d.location.find('.'); dot != std::string::npos) {
        auto it = b.operand_lines.find(d.location.substr(dot + 1));
        if (it != b.operand_lines.end()) line = it->second;
      }
      diags.push_back({line, {d.severity, std::to_string(line), d.message}});
    }
    set.instructions.push_back(b.spec);
  }

  std::stable_sort(diags.begin(), diags.end(),
                   [](const LineDiag& a, const LineDiag& b) { return a.line < b.line; });
  ParseResult result;
  for (auto& d : diags) result.diagnostics.push_back(std::move(d.diag));
  if (!has_errors(result.diagnostics)) result.set = std::move(set);
  return result;
}

std::vector<Stage> execution_sequence(const InstructionSpec& inst) {
  std::vector<Stage> stages(static_cast<size_t>(std::max(inst.depth, 0)));
  for (int i = 0; i < inst.depth; ++i) stages[static_cast<size_t>(i)] = i + 1;
  return stages;
}

CoupledSequence coupled_sequence(const InstructionSpec& older,
                                 const InstructionSpec& newer, int gap) {
  if (gap < 1) throw std::invalid_argument("coupled_sequence: gap must be >= 1");
  CoupledSequence seq;
  seq.gap = gap;
  const int last = std::min(newer.depth, older.depth - gap);
  for (int a = 1; a <= last; ++a) seq.pairs.push_back({a, a + gap});
  return seq;
}

std::vector<CoupledSequence> all_coupled_sequences(const InstructionSpec& older,
                                                   const InstructionSpec& newer) {
  std::vector<CoupledSequence> out;
  for (int gap = 1; gap <= older.depth - 1; ++gap) {
    auto seq = coupled_sequence(older, newer, gap);
    if (!seq.pairs.empty()) out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace pipehazard
