#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pipehazard.h"

namespace {

struct StringDeleter {
  void operator()(char* s) const { phz_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct IsaDeleter {
  void operator()(phz_isa* p) const { phz_isa_free(p); }
};
using IsaHandle = std::unique_ptr<phz_isa, IsaDeleter>;

struct RecordsDeleter {
  void operator()(phz_records* p) const { phz_records_free(p); }
};
using RecordsHandle = std::unique_ptr<phz_records, RecordsDeleter>;

// Exit codes: 0 ok, 1 data errors, 2 usage errors, 3 verification mismatch.
// phz_status uses the same numbering, so statuses pass through unchanged.

int load_isa(const std::string& path, IsaHandle& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "hazardctl: cannot read file: " << path << "\n";
    return 2;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  phz_isa* isa = nullptr;
  char* diagnostics = nullptr;
  const phz_status status = phz_isa_parse(text.c_str(), &isa, &diagnostics);
  ApiString diag_guard(diagnostics);
  if (diagnostics && *diagnostics) std::cerr << diagnostics;
  if (status != PHZ_OK) return static_cast<int>(status);
  out.reset(isa);
  return 0;
}

int require_nonempty(const phz_isa* isa) {
  if (phz_isa_instruction_count(isa) > 0) return 0;
  std::cerr << "hazardctl: instruction set is empty\n";
  return 1;
}

bool parse_types(const std::string& list, unsigned& mask) {
  mask = 0;
  size_t start = 0;
  while (start <= list.size()) {
    size_t pos = list.find(',', start);
    if (pos == std::string::npos) pos = list.size();
    const std::string item = list.substr(start, pos - start);
    if (item == "raw") mask |= PHZ_TYPE_RAW;
    else if (item == "war") mask |= PHZ_TYPE_WAR;
    else if (item == "waw") mask |= PHZ_TYPE_WAW;
    else return false;
    start = pos + 1;
  }
  return mask != 0;
}

int print_api_string(phz_status status, ApiString text) {
  if (status != PHZ_OK) return static_cast<int>(status);
  if (text) std::cout << text.get();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pipeline data-hazard analysis for declarative ISA timing files"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return std::string(phz_version()); });

  std::string path;
  std::string level = "full";
  std::string types_list = "raw,war,waw";
  std::string pair_list;
  std::string format = "table";
  bool no_reduce = false;
  std::string diagram_type;
  std::string older_opcode;
  std::string newer_opcode;
  std::string dst_operand;
  std::string src_operand;
  std::string dst2_operand;
  bool fuzz = false;
  int samples = 100;
  std::uint64_t seed = 0;
  int max_depth = 8;
  int max_ops = 3;

  auto* validate_cmd =
      app.add_subcommand("validate", "Check a file; diagnostics on stderr");
  validate_cmd->add_option("path", path, "instruction set file")->required();

  auto* reduce_cmd =
      app.add_subcommand("reduce", "Print equivalence classes of the set");
  reduce_cmd->add_option("path", path, "instruction set file")->required();
  reduce_cmd->add_option("--level", level, "full, raw, or write")
      ->check(CLI::IsMember({"full", "raw", "write"}));

  auto* hazards_cmd =
      app.add_subcommand("hazards", "Enumerate hazards with resolutions");
  hazards_cmd->add_option("path", path, "instruction set file")->required();
  hazards_cmd->add_option("--type", types_list,
                          "comma list of raw, war, waw (default: all)");
  hazards_cmd->add_option("--pair", pair_list,
                          "older,newer opcode pair to restrict to");
  hazards_cmd->add_option("--format", format, "table or csv")
      ->check(CLI::IsMember({"table", "csv"}));
  hazards_cmd->add_flag("--no-reduce", no_reduce,
                        "bypass equivalence reduction (same output, slower)");

  auto* diagram_cmd =
      app.add_subcommand("diagram", "Draw the stage grid for one binding");
  diagram_cmd->add_option("path", path, "instruction set file")->required();
  diagram_cmd->add_option("--type", diagram_type, "raw, war, or waw")
      ->required()
      ->check(CLI::IsMember({"raw", "war", "waw"}));
  diagram_cmd->add_option("--older", older_opcode, "older instruction opcode")
      ->required();
  diagram_cmd->add_option("--newer", newer_opcode, "newer instruction opcode")
      ->required();
  diagram_cmd->add_option(
      "--dst", dst_operand,
      "raw: older destination; war: newer destination list");
  diagram_cmd->add_option(
      "--src", src_operand, "raw: newer source list; war: older source");
  diagram_cmd->add_option("--dst2", dst2_operand,
                          "waw: newer destination list");

  auto* verify_cmd = app.add_subcommand(
      "verify", "Cross-check the rule engine against the cycle simulator");
  verify_cmd->add_option("path", path, "instruction set file");
  verify_cmd->add_flag("--fuzz", fuzz, "verify generated sets instead of a file");
  verify_cmd->add_option("--samples", samples, "fuzz sample count")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed, "fuzz base seed");
  verify_cmd->add_option("--max-depth", max_depth, "fuzz pipeline depth cap")
      ->check(CLI::Range(2, 64));
  verify_cmd->add_option("--max-ops", max_ops,
                         "fuzz per-role operand count cap")
      ->check(CLI::Range(0, 16));
  verify_cmd->add_option("--type", types_list,
                         "comma list of raw, war, waw (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  unsigned types = 0;
  if (!parse_types(types_list, types)) {
    std::cerr << "hazardctl: unknown hazard type in --type: " << types_list
              << "\n";
    return 2;
  }

  if (validate_cmd->parsed()) {
    IsaHandle isa;
    return load_isa(path, isa);
  }

  if (reduce_cmd->parsed()) {
    IsaHandle isa;
    if (int rc = load_isa(path, isa)) return rc;
    if (int rc = require_nonempty(isa.get())) return rc;
    char* text = nullptr;
    const phz_status status = phz_reduce_listing(isa.get(), level.c_str(), &text);
    return print_api_string(status, ApiString(text));
  }

  if (hazards_cmd->parsed()) {
    IsaHandle isa;
    if (int rc = load_isa(path, isa)) return rc;
    if (int rc = require_nonempty(isa.get())) return rc;
    std::string older, newer;
    if (!pair_list.empty()) {
      const size_t comma = pair_list.find(',');
      if (comma == std::string::npos || comma == 0 ||
          comma + 1 == pair_list.size() ||
          pair_list.find(',', comma + 1) != std::string::npos) {
        std::cerr << "hazardctl: --pair expects 'older,newer'\n";
        return 2;
      }
      older = pair_list.substr(0, comma);
      newer = pair_list.substr(comma + 1);
    }
    char* text = nullptr;
    const phz_status status = phz_hazards_report(
        isa.get(), types, older.empty() ? nullptr : older.c_str(),
        newer.empty() ? nullptr : newer.c_str(), no_reduce ? 1 : 0,
        format.c_str(), &text);
    return print_api_string(status, ApiString(text));
  }

  if (diagram_cmd->parsed()) {
    IsaHandle isa;
    if (int rc = load_isa(path, isa)) return rc;
    std::string older_operand, newer_operands;
    if (diagram_type == "raw") {
      older_operand = dst_operand;
      newer_operands = src_operand;
      if (older_operand.empty() || newer_operands.empty() ||
          !dst2_operand.empty()) {
        std::cerr << "hazardctl: raw diagrams need --dst <older destination> "
                     "and --src <newer sources>\n";
        return 2;
      }
    } else if (diagram_type == "war") {
      older_operand = src_operand;
      newer_operands = dst_operand;
      if (older_operand.empty() || newer_operands.empty() ||
          !dst2_operand.empty()) {
        std::cerr << "hazardctl: war diagrams need --src <older source> and "
                     "--dst <newer destinations>\n";
        return 2;
      }
    } else {
      older_operand = dst_operand;
      newer_operands = dst2_operand;
      if (older_operand.empty() || newer_operands.empty() ||
          !src_operand.empty()) {
        std::cerr << "hazardctl: waw diagrams need --dst <older destination> "
                     "and --dst2 <newer destinations>\n";
        return 2;
      }
    }
    char* text = nullptr;
    const phz_status status = phz_diagram(
        isa.get(), diagram_type.c_str(), older_opcode.c_str(),
        newer_opcode.c_str(), older_operand.c_str(), newer_operands.c_str(),
        &text);
    ApiString guard(text);
    if (status == PHZ_BAD_ARGUMENT)
      std::cerr << "hazardctl: unknown opcode or operand for diagram\n";
    return print_api_string(status, std::move(guard));
  }

  if (verify_cmd->parsed()) {
    if (fuzz != path.empty()) {  // exactly one input source
      std::cerr << "hazardctl: verify needs either a file or --fuzz\n";
      return 2;
    }
    char* report = nullptr;
    phz_status status;
    if (fuzz) {
      status = phz_verify_fuzz(samples, seed, max_depth, max_ops, types, &report);
    } else {
      IsaHandle isa;
      if (int rc = load_isa(path, isa)) return rc;
      if (int rc = require_nonempty(isa.get())) return rc;
      status = phz_verify_isa(isa.get(), types, &report);
    }
    ApiString guard(report);
    if (report) std::cout << report;
    return static_cast<int>(status);
  }

  return 2;
}
