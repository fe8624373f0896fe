#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "pipehazard/isa.hpp"

using namespace pipehazard;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("parses the producer/consumer fixture") {
  const InstructionSet is = fixtures::producer_consumer();
  REQUIRE(is.instructions.size() == 2);

  const InstructionSpec& inst1 = is.instructions[0];
  CHECK(inst1.opcode == "inst1");
  CHECK(inst1.depth == 5);
  CHECK(inst1.sources.empty());
  REQUIRE(inst1.dests.size() == 2);
  CHECK(inst1.dests[0] == DestOperand{"d1", 4, 3, 4});
  CHECK(inst1.dests[1] == DestOperand{"d2", 5, 5, 5});

  const InstructionSpec& inst2 = is.instructions[1];
  CHECK(inst2.depth == 3);
  REQUIRE(inst2.sources.size() == 2);
  CHECK(inst2.sources[0] == SourceOperand{"s1", 1, 1, 1});
  CHECK(inst2.sources[1] == SourceOperand{"s2", 2, 1, 2});
  CHECK(inst2.dests.empty());

  CHECK(is.find("inst2") == &inst2);
  CHECK(is.find("nope") == nullptr);
  CHECK(inst1.find_dest("d2") == &inst1.dests[1]);
  CHECK(inst1.find_dest("s1") == nullptr);
  CHECK(inst2.find_source("s1") == &inst2.sources[0]);
}

TEST_CASE("data files stay in sync with the embedded fixtures") {
  const std::string dir = TEST_DATA_DIR;
  auto from_file = [&](const std::string& name) {
    return fixtures::parse_ok(read_file(dir + "/" + name));
  };
  CHECK(from_file("producer_consumer.isa") == fixtures::producer_consumer());
  CHECK(from_file("reader_writer.isa") == fixtures::reader_writer());
}

TEST_CASE("comments, blank lines, and CRLF are tolerated") {
  const std::string text =
      "# leading comment\r\n"
      "instruction i depth=2  # trailing comment\r\n"
      "\r\n"
      "  src a read=1 first_needed=1 last_needed=2\r\n"
      "end\r\n";
  const auto result = parse_instruction_set(text);
  REQUIRE(result.set.has_value());
  CHECK(result.diagnostics.empty());
  CHECK(result.set->instructions[0].sources[0].last_needed == 2);
}

TEST_CASE("empty input parses to an empty set") {
  const auto result = parse_instruction_set("");
  REQUIRE(result.set.has_value());
  CHECK(result.set->empty());
  CHECK(result.diagnostics.empty());
}

TEST_CASE("errors leave the set disengaged but keep all diagnostics") {
  const std::string text =
      "instruction a depth=3\n"
      "  src s read=4 first_needed=1 last_needed=1\n"
      "end\n"
      "instruction a depth=3\n"
      "end\n"
      "junk line here\n";
  const auto result = parse_instruction_set(text);
  CHECK(!result.set.has_value());
  REQUIRE(result.diagnostics.size() == 3);
  CHECK(result.diagnostics[0].severity == Severity::Error);
  CHECK(result.diagnostics[0].location == "2");
  CHECK(result.diagnostics[0].message ==
        "stage out of range: read=4 not in [1, 3]");
  CHECK(result.diagnostics[1].message == "duplicate opcode 'a' (first declared on line 1)");
  CHECK(result.diagnostics[2].message == "unknown keyword 'junk'");
}

TEST_CASE("interval and ordering violations are reported per operand") {
  const std::string text =
      "instruction a depth=5\n"
      "  src s read=2 first_needed=3 last_needed=2\n"
      "  dst d write=5 first_avail=1 last_avail=4\n"
      "  dst e write=1 first_avail=2 last_avail=3\n"
      "end\n";
  const auto result = parse_instruction_set(text);
  CHECK(!result.set.has_value());
  REQUIRE(result.diagnostics.size() == 3);
  CHECK(result.diagnostics[0].message ==
        "invalid interval: first_needed=3 > last_needed=2");
  CHECK(result.diagnostics[1].message ==
        "write after last availability: write=5 > last_avail=4");
  CHECK(result.diagnostics[1].location == "3");
  CHECK(result.diagnostics[2].severity == Severity::Warning);
  CHECK(result.diagnostics[2].message == "write stage before first availability");
}

TEST_CASE("warnings alone keep the set usable") {
  const std::string text =
      "instruction a depth=5\n"
      "  src s read=4 first_needed=1 last_needed=2\n"
      "end\n";
  const auto result = parse_instruction_set(text);
  REQUIRE(result.set.has_value());
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].severity == Severity::Warning);
  CHECK(result.diagnostics[0].message == "read stage outside needed interval");
  CHECK(has_errors(result.diagnostics) == false);
}

TEST_CASE("malformed structure is diagnosed with recovery") {
  SUBCASE("missing end at EOF") {
    const auto result = parse_instruction_set("instruction a depth=2\n");
    CHECK(!result.set.has_value());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].message == "missing 'end' for instruction 'a'");
  }
  SUBCASE("missing end before next block") {
    const auto result = parse_instruction_set(
        "instruction a depth=2\ninstruction b depth=2\nend\n");
    CHECK(!result.set.has_value());
    CHECK(result.diagnostics.size() == 1);
  }
  SUBCASE("operand outside a block") {
    const auto result =
        parse_instruction_set("src s read=1 first_needed=1 last_needed=1\n");
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].message == "operand line outside an instruction block");
  }
  SUBCASE("stray end") {
    const auto result = parse_instruction_set("end\n");
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].message == "'end' outside an instruction block");
  }
  SUBCASE("wrong operand field keyword") {
    const auto result = parse_instruction_set(
        "instruction a depth=2\n  src s read=1 fn=1 last_needed=1\nend\n");
    CHECK(!result.set.has_value());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].message ==
          "malformed token 'fn=1': expected 'first_needed=<int>'");
  }
  SUBCASE("non-integer value") {
    const auto result = parse_instruction_set("instruction a depth=two\nend\n");
    CHECK(!result.set.has_value());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].message ==
          "malformed token 'depth=two': expected 'depth=<int>'");
  }
  SUBCASE("bad identifier") {
    const auto result = parse_instruction_set("instruction 9a depth=2\nend\n");
    CHECK(!result.set.has_value());
    CHECK(result.diagnostics[0].message == "invalid identifier '9a'");
  }
  SUBCASE("depth below one") {
    const auto result = parse_instruction_set("instruction a depth=0\nend\n");
    CHECK(!result.set.has_value());
    CHECK(result.diagnostics[0].message == "depth must be at least 1");
  }
  SUBCASE("duplicate operand name") {
    const auto result = parse_instruction_set(
        "instruction a depth=2\n"
        "  src x read=1 first_needed=1 last_needed=1\n"
        "  dst x write=1 first_avail=1 last_avail=1\n"
        "end\n");
    CHECK(!result.set.has_value());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].location == "3");
    CHECK(result.diagnostics[0].message ==
          "duplicate operand name 'x' in instruction 'a'");
  }
}

TEST_CASE("diagnostics come out sorted by line") {
  const std::string text =
      "instruction a depth=0\n"
      "end\n"
      "instruction b depth=2\n"
      "  src s read=3 first_needed=1 last_needed=1\n"
      "end\n";
  const auto result = parse_instruction_set(text);
  REQUIRE(result.diagnostics.size() == 2);
  CHECK(result.diagnostics[0].location == "1");
  CHECK(result.diagnostics[1].location == "4");
}

TEST_CASE("format_diagnostics emits severity:location:message lines") {
  const std::vector<Diagnostic> diags = {
      {Severity::Error, "3", "boom"},
      {Severity::Warning, "a.s", "meh"},
  };
  CHECK(format_diagnostics(diags) == "error:3:boom\nwarning:a.s:meh\n");
}

TEST_CASE("validate mirrors the parser's semantic checks on built sets") {
  InstructionSet is;
  InstructionSpec a;
  a.opcode = "a";
  a.depth = 4;
  a.sources.push_back({"s", 2, 1, 2});
  a.dests.push_back({"s", 3, 1, 4});  // clean timing, duplicate name
  is.instructions.push_back(a);
  is.instructions.push_back(a);  // duplicate opcode

  const auto diags = validate(is);
  REQUIRE(diags.size() == 3);
  CHECK(diags[0].location == "a.s");
  CHECK(diags[0].message == "duplicate operand name 's' in instruction 'a'");
  CHECK(diags[1].location == "a");
  CHECK(diags[1].message == "duplicate opcode 'a'");
  CHECK(diags[2] == diags[0]);
  CHECK(has_errors(diags));

  InstructionSet late_write;
  InstructionSpec c;
  c.opcode = "c";
  c.depth = 4;
  c.dests.push_back({"d", 6, 1, 4});
  late_write.instructions.push_back(c);
  const auto late_diags = validate(late_write);
  REQUIRE(late_diags.size() == 2);
  CHECK(late_diags[0].message == "stage out of range: write=6 not in [1, 4]");
  CHECK(late_diags[1].message ==
        "write after last availability: write=6 > last_avail=4");

  CHECK(validate(fixtures::producer_consumer()).empty());
  CHECK(validate(fixtures::reader_writer()).empty());
}

TEST_CASE("execution sequence is 1..depth") {
  InstructionSpec inst;
  inst.depth = 4;
  CHECK(execution_sequence(inst) == std::vector<Stage>{1, 2, 3, 4});
}

TEST_CASE("coupled sequences pair stage a with a+gap") {
  const InstructionSet is = fixtures::producer_consumer();
  const InstructionSpec& older = *is.find("inst1");  // depth 5
  const InstructionSpec& newer = *is.find("inst2");  // depth 3

  const CoupledSequence seq = coupled_sequence(older, newer, 1);
  REQUIRE(seq.pairs.size() == 3);  // min(3, 5-1)
  CHECK(seq.pairs[0] == StagePair{1, 2});
  CHECK(seq.pairs[2] == StagePair{3, 4});

  CHECK(coupled_sequence(older, newer, 4).pairs ==
        std::vector<StagePair>{StagePair{1, 5}});
  CHECK(coupled_sequence(older, newer, 5).pairs.empty());
  CHECK_THROWS_AS(coupled_sequence(older, newer, 0), std::invalid_argument);

  const auto all = all_coupled_sequences(older, newer);
  REQUIRE(all.size() == 4);  // gaps 1..4 all non-empty
  for (size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].gap == static_cast<int>(i) + 1);
    for (const StagePair& p : all[i].pairs) CHECK(p.older - p.newer == all[i].gap);
  }
}
