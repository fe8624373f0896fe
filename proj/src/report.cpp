#include "pipehazard/report.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace pipehazard {

std::string case_label(const HazardCase& c) {
  HazardRecord r;
  r.type = c.type;
  r.older_opcode = c.older_opcode;
  r.older_operand = c.older_operand;
  r.newer_opcode = c.newer_opcode;
  r.newer_operand = c.newer_operand;
  return case_label(r);
}

std::vector<HazardCase> case_matrix(const InstructionSet& is, unsigned types,
                                    const PairFilter& filter) {
  std::vector<HazardCase> out;
  auto pairs = [&](auto&& emit) {
    for (const auto& older : is.instructions)
      for (const auto& newer : is.instructions)
        if (filter.matches(older.opcode, newer.opcode)) emit(older, newer);
  };
  if (types & kTypeRaw)
    pairs([&](const InstructionSpec& older, const InstructionSpec& newer) {
      for (const auto& d : older.dests)
        for (const auto& s : newer.sources)
          out.push_back({HazardType::Raw, older.opcode, d.name, newer.opcode, s.name});
    });
  if (types & kTypeWar)
    pairs([&](const InstructionSpec& older, const InstructionSpec& newer) {
      for (const auto& s : older.sources)
        for (const auto& d : newer.dests)
          out.push_back({HazardType::War, older.opcode, s.name, newer.opcode, d.name});
    });
  if (types & kTypeWaw)
    pairs([&](const InstructionSpec& older, const InstructionSpec& newer) {
      for (const auto& di : older.dests)
        for (const auto& dj : newer.dests)
          out.push_back(
              {HazardType::Waw, older.opcode, di.name, newer.opcode, dj.name});
    });
  return out;
}

namespace {

std::string pair_str(StagePair p) {
  return "(" + std::to_string(p.newer) + "," + std::to_string(p.older) + ")";
}

// Left-aligned columns, two-space gutter, no trailing spaces.
std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths(header.size());
  for (size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size())
        line += std::string(widths[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

const std::vector<std::string> kStallHeader = {"Case", "Hazard", "Stalled inst.",
                                               "# stall cycles"};
const std::vector<std::string> kForwardHeader = {"Case", "Hazard", "Forward"};

bool record_matches_case(const HazardRecord& r, const HazardCase& c) {
  return r.type == c.type && r.older_opcode == c.older_opcode &&
         r.older_operand == c.older_operand && r.newer_opcode == c.newer_opcode &&
         r.newer_operand == c.newer_operand;
}

HazardCase case_of(const HazardRecord& r) {
  return {r.type, r.older_opcode, r.older_operand, r.newer_opcode, r.newer_operand};
}

std::string stalled_label(const HazardRecord& r) {
  if (r.older_opcode == r.newer_opcode) return r.stalled_opcode + "(2)";
  return r.stalled_opcode;
}

}  // namespace

std::string render_hazard_table(const std::vector<HazardRecord>& records,
                                const std::vector<HazardCase>& cases) {
  std::vector<std::string> sections;
  for (HazardType type : {HazardType::Raw, HazardType::War, HazardType::Waw}) {
    std::vector<const HazardRecord*> stalls;
    std::vector<const HazardRecord*> forwards;
    for (const auto& r : records) {
      if (r.type != type) continue;
      (r.resolution.kind == ActionKind::Stall ? stalls : forwards).push_back(&r);
    }
    std::vector<HazardCase> type_cases;
    for (const auto& c : cases)
      if (c.type == type) type_cases.push_back(c);
    if (stalls.empty() && forwards.empty() && type_cases.empty()) continue;

    // Stall cases not in the requested matrix still get printed, after it.
    std::vector<HazardCase> stall_cases = type_cases;
    for (const auto* r : stalls) {
      const bool known = std::any_of(
          stall_cases.begin(), stall_cases.end(),
          [&](const HazardCase& c) { return record_matches_case(*r, c); });
      if (!known) stall_cases.push_back(case_of(*r));
    }
    std::vector<std::vector<std::string>> stall_rows;
    for (const auto& c : stall_cases) {
      bool populated = false;
      for (const auto* r : stalls) {
        if (!record_matches_case(*r, c)) continue;
        populated = true;
        stall_rows.push_back({case_label(c), pair_str(r->hazard_pair),
                              stalled_label(*r),
                              std::to_string(r->resolution.stall_cycles)});
      }
      if (!populated) stall_rows.push_back({case_label(c), "-", "-", "-"});
    }
    std::string section = "== ";
    section += type_name(type);
    section += " hazards ==\n";
    section += format_table(kStallHeader, stall_rows);
    sections.push_back(std::move(section));

    if (!forwards.empty()) {
      std::vector<std::vector<std::string>> forward_rows;
      for (const auto* r : forwards)
        forward_rows.push_back({case_label(*r), pair_str(r->hazard_pair),
                                std::to_string(r->resolution.forward_from) +
                                    " -> " +
                                    std::to_string(r->resolution.forward_to)});
      std::string fsection = "== ";
      fsection += type_name(type);
      fsection += " forwards ==\n";
      fsection += format_table(kForwardHeader, forward_rows);
      sections.push_back(std::move(fsection));
    }
  }
  if (sections.empty()) return format_table(kStallHeader, {});
  std::string out;
  for (size_t i = 0; i < sections.size(); ++i) {
    if (i) out += "\n";
    out += sections[i];
  }
  return out;
}

namespace {

std::string brace_list(const std::vector<std::string>& names) {
  if (names.size() == 1) return names.front();
  std::string s = "{";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) s += ",";
    s += names[i];
  }
  return s + "}";
}

const char kLegend[] =
    "legend:\n"
    "  .   not co-resident\n"
    "  *   co-resident stage pair\n"
    "  S   stall required at this pair\n"
    "  F   forward possible at this pair\n"
    "  -   older column: value not yet available\n"
    "  a   older column: value available in a pipeline register\n"
    "  +   older column: value at its final destination\n"
    "  r   older column: read stage of the bound source\n"
    "  w   older column: write stage of the bound destination\n"
    "  <   marks the critical stage row of a newer operand\n";

}  // namespace

std::string render_diagram(const InstructionSpec& older,
                           const InstructionSpec& newer,
                           const DiagramBinding& binding,
                           const std::vector<HazardRecord>& records) {
  if (binding.newer_operands.empty())
    throw std::invalid_argument("render_diagram: no newer operands");
  const bool same = older.opcode == newer.opcode;
  auto tagged = [&](const std::string& opcode, int issue) {
    return same ? opcode + "(" + std::to_string(issue) + ")" : opcode;
  };

  // Column annotations under the older axis and the critical rows on the
  // newer axis, per hazard type.
  std::vector<char> col_marks(static_cast<size_t>(older.depth) + 1, '-');
  std::map<Stage, std::vector<std::string>> critical;
  std::string title = type_name(binding.type);
  title += " ";
  switch (binding.type) {
    case HazardType::Raw: {
      const DestOperand* d = older.find_dest(binding.older_operand);
      if (!d)
        throw std::invalid_argument("render_diagram: unknown destination '" +
                                    binding.older_operand + "'");
      for (Stage b = 1; b <= older.depth; ++b)
        col_marks[static_cast<size_t>(b)] =
            b < d->first_avail ? '-' : (b <= d->last_avail ? 'a' : '+');
      for (const auto& name : binding.newer_operands) {
        const SourceOperand* s = newer.find_source(name);
        if (!s)
          throw std::invalid_argument("render_diagram: unknown source '" + name +
                                      "'");
        critical[s->last_needed].push_back(name);
      }
      title += tagged(older.opcode, 1) + "." + binding.older_operand + " = " +
               tagged(newer.opcode, 2) + "." + brace_list(binding.newer_operands);
      break;
    }
    case HazardType::War: {
      const SourceOperand* s = older.find_source(binding.older_operand);
      if (!s)
        throw std::invalid_argument("render_diagram: unknown source '" +
                                    binding.older_operand + "'");
      col_marks[static_cast<size_t>(s->read_stage)] = 'r';
      for (const auto& name : binding.newer_operands) {
        const DestOperand* d = newer.find_dest(name);
        if (!d)
          throw std::invalid_argument("render_diagram: unknown destination '" +
                                      name + "'");
        critical[d->write_stage].push_back(name);
      }
      title += tagged(newer.opcode, 2) + "." + brace_list(binding.newer_operands) +
               " = " + tagged(older.opcode, 1) + "." + binding.older_operand;
      break;
    }
    case HazardType::Waw: {
      const DestOperand* di = older.find_dest(binding.older_operand);
      if (!di)
        throw std::invalid_argument("render_diagram: unknown destination '" +
                                    binding.older_operand + "'");
      col_marks[static_cast<size_t>(di->write_stage)] = 'w';
      for (const auto& name : binding.newer_operands) {
        const DestOperand* dj = newer.find_dest(name);
        if (!dj)
          throw std::invalid_argument("render_diagram: unknown destination '" +
                                      name + "'");
        critical[dj->write_stage].push_back(name);
      }
      title += tagged(older.opcode, 1) + "." + binding.older_operand + " = " +
               tagged(newer.opcode, 2) + "." + brace_list(binding.newer_operands);
      break;
    }
  }

  std::map<std::pair<Stage, Stage>, char> marks;  // (newer, older) -> S/F
  for (const auto& r : records) {
    if (r.type != binding.type || r.older_opcode != older.opcode ||
        r.newer_opcode != newer.opcode || r.older_operand != binding.older_operand)
      continue;
    if (std::find(binding.newer_operands.begin(), binding.newer_operands.end(),
                  r.newer_operand) == binding.newer_operands.end())
      continue;
    const char glyph = r.resolution.kind == ActionKind::Stall ? 'S' : 'F';
    auto [it, inserted] =
        marks.emplace(std::make_pair(r.hazard_pair.newer, r.hazard_pair.older),
                      glyph);
    if (!inserted && glyph == 'S') it->second = 'S';
  }

  const size_t label_width = std::to_string(newer.depth).size();
  auto pad_label = [&](const std::string& s) {
    return std::string(label_width - std::min(label_width, s.size()), ' ') + s;
  };
  auto cell = [](std::string s) {
    while (s.size() < 3) s += ' ';
    return s;
  };
  auto rtrim = [](std::string& s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
  };

  std::string out = title + "\n\n";
  for (Stage a = newer.depth; a >= 1; --a) {
    std::string line = pad_label(std::to_string(a)) + " | ";
    for (Stage b = 1; b <= older.depth; ++b) {
      auto it = marks.find({a, b});
      const char glyph = it != marks.end() ? it->second : (b > a ? '*' : '.');
      line += cell(std::string(1, glyph));
    }
    rtrim(line);
    if (auto it = critical.find(a); it != critical.end()) {
      std::string names;
      for (size_t i = 0; i < it->second.size(); ++i) {
        if (i) names += ",";
        names += it->second[i];
      }
      line += "  < " + names;
    }
    out += line + "\n";
  }
  out += std::string(label_width, ' ') + " +" +
         std::string(static_cast<size_t>(older.depth) * 3, '-') + "\n";
  std::string numbers = std::string(label_width, ' ') + "   ";
  for (Stage b = 1; b <= older.depth; ++b) numbers += cell(std::to_string(b));
  rtrim(numbers);
  out += numbers + "\n";
  std::string marks_line = std::string(label_width, ' ') + "   ";
  for (Stage b = 1; b <= older.depth; ++b)
    marks_line += cell(std::string(1, col_marks[static_cast<size_t>(b)]));
  rtrim(marks_line);
  out += marks_line + "\n";
  out += "\n";
  out += kLegend;
  return out;
}

namespace {

const char kCsvHeader[] =
    "type,older_inst,older_operand,newer_inst,newer_operand,newer_stage,"
    "older_stage,gap,action,forward_from,forward_to,stall_cycles,"
    "apply_newer_stage,apply_older_stage";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_csv_int(const std::string& field, const char* what) {
  int value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty())
    throw std::runtime_error(std::string("import_csv: bad integer in column ") +
                             what + ": '" + field + "'");
  return value;
}

}  // namespace

std::string export_csv(const std::vector<HazardRecord>& records) {
  std::string out = kCsvHeader;
  out += "\n";
  for (const auto& r : records) {
    out += type_name(r.type);
    out += "," + r.older_opcode + "," + r.older_operand;
    out += "," + r.newer_opcode + "," + r.newer_operand;
    out += "," + std::to_string(r.hazard_pair.newer);
    out += "," + std::to_string(r.hazard_pair.older);
    out += "," + std::to_string(r.gap);
    if (r.resolution.kind == ActionKind::Forward) {
      out += ",forward," + std::to_string(r.resolution.forward_from) + "," +
             std::to_string(r.resolution.forward_to) + ",";
    } else {
      out += ",stall,,," + std::to_string(r.resolution.stall_cycles);
    }
    out += "," + std::to_string(r.apply_at.newer);
    out += "," + std::to_string(r.apply_at.older);
    out += "\n";
  }
  return out;
}

std::vector<HazardRecord> import_csv(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t pos = text.find('\n', start);
    if (pos == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (lines.empty() || lines.front() != kCsvHeader)
    throw std::runtime_error("import_csv: missing or unrecognized header");

  std::vector<HazardRecord> out;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split(lines[i], ',');
    if (fields.size() != 14)
      throw std::runtime_error("import_csv: line " + std::to_string(i + 1) +
                               ": expected 14 columns, got " +
                               std::to_string(fields.size()));
    HazardRecord r;
    if (fields[0] == "RAW")
      r.type = HazardType::Raw;
    else if (fields[0] == "WAR")
      r.type = HazardType::War;
    else if (fields[0] == "WAW")
      r.type = HazardType::Waw;
    else
      throw std::runtime_error("import_csv: unknown type '" + fields[0] + "'");
    r.older_opcode = fields[1];
    r.older_operand = fields[2];
    r.newer_opcode = fields[3];
    r.newer_operand = fields[4];
    r.hazard_pair.newer = parse_csv_int(fields[5], "newer_stage");
    r.hazard_pair.older = parse_csv_int(fields[6], "older_stage");
    r.gap = parse_csv_int(fields[7], "gap");
    if (fields[8] == "forward") {
      r.resolution.kind = ActionKind::Forward;
      r.resolution.forward_from = parse_csv_int(fields[9], "forward_from");
      r.resolution.forward_to = parse_csv_int(fields[10], "forward_to");
      if (!fields[11].empty())
        throw std::runtime_error("import_csv: forward row with stall_cycles");
    } else if (fields[8] == "stall") {
      r.resolution.kind = ActionKind::Stall;
      r.resolution.stall_cycles = parse_csv_int(fields[11], "stall_cycles");
      if (!fields[9].empty() || !fields[10].empty())
        throw std::runtime_error("import_csv: stall row with forward stages");
      r.stalled_opcode = r.newer_opcode;  // the newer side always stalls
    } else {
      throw std::runtime_error("import_csv: unknown action '" + fields[8] + "'");
    }
    r.apply_at.newer = parse_csv_int(fields[12], "apply_newer_stage");
    r.apply_at.older = parse_csv_int(fields[13], "apply_older_stage");
    out.push_back(std::move(r));
  }
  return out;
}

std::string render_isa(const InstructionSet& is) {
  std::string out;
  for (size_t i = 0; i < is.instructions.size(); ++i) {
    const auto& inst = is.instructions[i];
    if (i) out += "\n";
    out += "instruction " + inst.opcode + " depth=" + std::to_string(inst.depth) +
           "\n";
    for (const auto& s : inst.sources)
      out += "  src " + s.name + " read=" + std::to_string(s.read_stage) +
             " first_needed=" + std::to_string(s.first_needed) +
             " last_needed=" + std::to_string(s.last_needed) + "\n";
    for (const auto& d : inst.dests)
      out += "  dst " + d.name + " write=" + std::to_string(d.write_stage) +
             " first_avail=" + std::to_string(d.first_avail) +
             " last_avail=" + std::to_string(d.last_avail) + "\n";
    out += "end\n";
  }
  return out;
}

}  // namespace pipehazard
