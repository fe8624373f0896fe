#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "pipehazard/equivalence.hpp"
#include "pipehazard/fuzz.hpp"
#include "pipehazard/hazards.hpp"

using namespace pipehazard;

TEST_CASE("operand keys keep exactly the fields each level consults") {
  const DestOperand d{"d", 4, 3, 4};
  CHECK(operand_key(d, ReductionLevel::Full) == std::vector<Stage>{4, 3, 4});
  CHECK(operand_key(d, ReductionLevel::Raw) == std::vector<Stage>{3, 4});
  CHECK(operand_key(d, ReductionLevel::Write) == std::vector<Stage>{4});

  const SourceOperand s{"s", 2, 1, 2};
  CHECK(operand_key(s, ReductionLevel::Full) == std::vector<Stage>{2, 2});
  CHECK(operand_key(s, ReductionLevel::Raw) == std::vector<Stage>{2});
  CHECK(operand_key(s, ReductionLevel::Write) == std::vector<Stage>{2});

  CHECK(key_field_names(OperandRole::Source, ReductionLevel::Full) ==
        std::vector<std::string>{"read", "last_needed"});
  CHECK(key_field_names(OperandRole::Dest, ReductionLevel::Raw) ==
        std::vector<std::string>{"first_avail", "last_avail"});
  CHECK(key_field_names(OperandRole::Dest, ReductionLevel::Write) ==
        std::vector<std::string>{"write"});
}

TEST_CASE("distinct timing rosters stay in distinct classes") {
  const InstructionSet is = fixtures::producer_consumer();
  for (ReductionLevel level :
       {ReductionLevel::Full, ReductionLevel::Raw, ReductionLevel::Write}) {
    const ReducedSet reduced = reduce(is, level);
    REQUIRE(reduced.classes.size() == 2);
    CHECK(reduced.classes[0].representative.opcode == "inst1");
    CHECK(reduced.classes[0].members == std::vector<std::string>{"inst1"});
    CHECK(reduced.classes[1].members == std::vector<std::string>{"inst2"});
  }
}

TEST_CASE("identical instructions merge into one class") {
  std::string text;
  for (const char* opcode : {"a", "b"}) {
    text += std::string("instruction ") + opcode + " depth=5\n" +
            "  dst d1 write=4 first_avail=3 last_avail=4\n" + "end\n";
  }
  const InstructionSet is = fixtures::parse_ok(text);
  const ReducedSet reduced = reduce(is, ReductionLevel::Full);
  REQUIRE(reduced.classes.size() == 1);
  CHECK(reduced.classes[0].representative.opcode == "a");
  CHECK(reduced.classes[0].members == std::vector<std::string>{"a", "b"});
  REQUIRE(reduced.classes[0].dest_classes.size() == 1);
  CHECK(reduced.classes[0].dest_classes[0].members ==
        std::vector<OperandRef>{{"a", "d1"}, {"b", "d1"}});
}

TEST_CASE("equal depth is required for instruction merging") {
  const InstructionSet is = fixtures::parse_ok(
      "instruction a depth=5\n"
      "  dst d write=4 first_avail=3 last_avail=4\n"
      "end\n"
      "instruction b depth=6\n"
      "  dst d write=4 first_avail=3 last_avail=4\n"
      "end\n");
  CHECK(reduce(is, ReductionLevel::Full).classes.size() == 2);
}

TEST_CASE("source classes follow the level keys") {
  const InstructionSet is = fixtures::producer_consumer();
  const ReducedSet raw = reduce(is, ReductionLevel::Raw);
  const InstructionClass& consumer = raw.classes[1];
  REQUIRE(consumer.source_classes.size() == 2);  // ln = 1 vs ln = 2
  CHECK(consumer.source_classes[0].key == std::vector<Stage>{1});
  CHECK(consumer.source_classes[1].key == std::vector<Stage>{2});

  // Two sources that differ only in the dropped fields collapse at RAW.
  const InstructionSet collapsing = fixtures::parse_ok(
      "instruction a depth=5\n"
      "  src s1 read=2 first_needed=1 last_needed=3\n"
      "  src s2 read=3 first_needed=2 last_needed=3\n"
      "end\n");
  const ReducedSet r = reduce(collapsing, ReductionLevel::Raw);
  REQUIRE(r.classes[0].source_classes.size() == 1);
  CHECK(r.classes[0].source_classes[0].members ==
        std::vector<OperandRef>{{"a", "s1"}, {"a", "s2"}});
  CHECK(reduce(collapsing, ReductionLevel::Full).classes[0].source_classes.size() ==
        2);
}

TEST_CASE("full keys refine raw and write keys") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const InstructionSet is = random_instruction_set(seed);
    std::vector<SourceOperand> sources;
    std::vector<DestOperand> dests;
    for (const auto& inst : is.instructions) {
      sources.insert(sources.end(), inst.sources.begin(), inst.sources.end());
      dests.insert(dests.end(), inst.dests.begin(), inst.dests.end());
    }
    for (const auto& x : sources)
      for (const auto& y : sources)
        if (operand_key(x, ReductionLevel::Full) ==
            operand_key(y, ReductionLevel::Full)) {
          CHECK(operand_key(x, ReductionLevel::Raw) ==
                operand_key(y, ReductionLevel::Raw));
          CHECK(operand_key(x, ReductionLevel::Write) ==
                operand_key(y, ReductionLevel::Write));
        }
    for (const auto& x : dests)
      for (const auto& y : dests)
        if (operand_key(x, ReductionLevel::Full) ==
            operand_key(y, ReductionLevel::Full)) {
          CHECK(operand_key(x, ReductionLevel::Raw) ==
                operand_key(y, ReductionLevel::Raw));
          CHECK(operand_key(x, ReductionLevel::Write) ==
                operand_key(y, ReductionLevel::Write));
        }
  }
}

TEST_CASE("reduction is idempotent on representatives") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const InstructionSet is = random_instruction_set(seed);
    for (ReductionLevel level :
         {ReductionLevel::Full, ReductionLevel::Raw, ReductionLevel::Write}) {
      const ReducedSet once = reduce(is, level);
      InstructionSet reps;
      for (const auto& cls : once.classes)
        reps.instructions.push_back(cls.representative);
      const ReducedSet twice = reduce(reps, level);
      REQUIRE(twice.classes.size() == once.classes.size());
      for (size_t i = 0; i < once.classes.size(); ++i) {
        CHECK(twice.classes[i].members.size() == 1);
        CHECK(twice.classes[i].representative == once.classes[i].representative);
      }
    }
  }
}

TEST_CASE("classes partition the origin set") {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    const InstructionSet is = random_instruction_set(seed);
    for (ReductionLevel level :
         {ReductionLevel::Full, ReductionLevel::Raw, ReductionLevel::Write}) {
      const ReducedSet reduced = reduce(is, level);
      std::vector<std::string> all_members;
      for (const auto& cls : reduced.classes) {
        for (const auto& opcode : cls.members) all_members.push_back(opcode);
        // Operand classes partition each member's operands.
        for (const auto& opcode : cls.members) {
          const InstructionSpec* inst = is.find(opcode);
          size_t src_count = 0, dst_count = 0;
          for (const auto& oc : cls.source_classes)
            src_count += static_cast<size_t>(
                std::count_if(oc.members.begin(), oc.members.end(),
                              [&](const OperandRef& r) { return r.opcode == opcode; }));
          for (const auto& oc : cls.dest_classes)
            dst_count += static_cast<size_t>(
                std::count_if(oc.members.begin(), oc.members.end(),
                              [&](const OperandRef& r) { return r.opcode == opcode; }));
          CHECK(src_count == inst->sources.size());
          CHECK(dst_count == inst->dests.size());
        }
      }
      std::vector<std::string> origin_opcodes;
      for (const auto& inst : is.instructions) origin_opcodes.push_back(inst.opcode);
      std::sort(all_members.begin(), all_members.end());
      std::sort(origin_opcodes.begin(), origin_opcodes.end());
      CHECK(all_members == origin_opcodes);
    }
  }
}

TEST_CASE("expand replicates class records over member combinations") {
  const InstructionSet is = fixtures::parse_ok(
      "instruction a depth=5\n"
      "  dst d write=4 first_avail=3 last_avail=4\n"
      "end\n"
      "instruction b depth=5\n"
      "  dst d write=4 first_avail=3 last_avail=4\n"
      "end\n"
      "instruction c depth=3\n"
      "  src s read=1 first_needed=1 last_needed=1\n"
      "end\n");
  const ReducedSet reduced = reduce(is, ReductionLevel::Raw);
  REQUIRE(reduced.classes.size() == 2);  // {a,b} and {c}

  HazardRecord rec;
  rec.type = HazardType::Raw;
  rec.older_opcode = "a";
  rec.older_operand = "d";
  rec.newer_opcode = "c";
  rec.newer_operand = "s";
  rec.hazard_pair = {1, 2};
  rec.gap = 1;
  rec.resolution = {ActionKind::Stall, 0, 0, 1};
  rec.apply_at = {1, 2};
  rec.stalled_opcode = "c";

  const auto expanded = expand({rec}, reduced);
  REQUIRE(expanded.size() == 2);
  CHECK(expanded[0].older_opcode == "a");
  CHECK(expanded[1].older_opcode == "b");
  for (const auto& r : expanded) {
    CHECK(r.newer_opcode == "c");
    CHECK(r.stalled_opcode == "c");
    CHECK(r.resolution == rec.resolution);
  }

  SUBCASE("unknown class names throw") {
    HazardRecord bogus = rec;
    bogus.older_opcode = "zz";
    CHECK_THROWS_AS(expand({bogus}, reduced), std::invalid_argument);
    bogus = rec;
    bogus.older_operand = "zz";
    CHECK_THROWS_AS(expand({bogus}, reduced), std::invalid_argument);
  }

  SUBCASE("records over singleton classes come back verbatim") {
    const InstructionSet pc = fixtures::producer_consumer();
    const ReducedSet r = reduce(pc, ReductionLevel::Raw);
    HazardRecord single = rec;
    single.older_opcode = "inst1";
    single.older_operand = "d1";
    single.newer_opcode = "inst2";
    single.newer_operand = "s1";
    single.stalled_opcode = "inst2";
    const auto out = expand({single}, r);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == single);
  }
}

TEST_CASE("self-pair class records expand to all ordered member pairs") {
  const InstructionSet is = fixtures::parse_ok(
      "instruction a depth=4\n"
      "  dst d write=2 first_avail=2 last_avail=2\n"
      "end\n"
      "instruction b depth=4\n"
      "  dst d write=2 first_avail=2 last_avail=2\n"
      "end\n");
  const ReducedSet reduced = reduce(is, ReductionLevel::Write);
  REQUIRE(reduced.classes.size() == 1);

  HazardRecord rec;
  rec.type = HazardType::Waw;
  rec.older_opcode = "a";
  rec.older_operand = "d";
  rec.newer_opcode = "a";
  rec.newer_operand = "d";
  rec.hazard_pair = {2, 3};
  rec.gap = 1;
  rec.resolution = {ActionKind::Stall, 0, 0, 1};
  rec.apply_at = {1, 2};
  rec.stalled_opcode = "a";

  const auto expanded = expand({rec}, reduced);
  REQUIRE(expanded.size() == 4);  // (a,a) (a,b) (b,a) (b,b)
  for (const auto& r : expanded) CHECK(r.stalled_opcode == r.newer_opcode);
}

TEST_CASE("enumeration over classes equals brute force") {
  for (std::uint64_t seed = 300; seed < 500; ++seed) {
    const InstructionSet is = random_instruction_set(seed);
    CHECK(enumerate_all(is, kTypeAll, true) == enumerate_all(is, kTypeAll, false));
  }
}

TEST_CASE("render_reduction lists classes, keys, and members") {
  const InstructionSet is = fixtures::parse_ok(
      "instruction a depth=3\n"
      "  src s1 read=2 first_needed=1 last_needed=2\n"
      "  src s2 read=2 first_needed=2 last_needed=3\n"
      "end\n"
      "instruction b depth=3\n"
      "  src t read=2 first_needed=1 last_needed=2\n"
      "end\n");
  CHECK(render_reduction(reduce(is, ReductionLevel::Write)) ==
        "level=write classes=1\n"
        "class a depth=3 members=a,b\n"
        "  src s1 key(read=2) members=a.s1,a.s2,b.t\n");
  CHECK(render_reduction(reduce(is, ReductionLevel::Full)) ==
        "level=full classes=2\n"
        "class a depth=3 members=a\n"
        "  src s1 key(read=2,last_needed=2) members=a.s1\n"
        "  src s2 key(read=2,last_needed=3) members=a.s2\n"
        "class b depth=3 members=b\n"
        "  src t key(read=2,last_needed=2) members=b.t\n");
}
