#include "pipehazard/verify.hpp"

#include <algorithm>
#include <tuple>

#include "pipehazard/hazards.hpp"
#include "pipehazard/oracle.hpp"
#include "pipehazard/report.hpp"

namespace pipehazard {

namespace {

std::string types_label(unsigned types) {
  std::string s;
  auto add = [&](unsigned mask, const char* name) {
    if (!(types & mask)) return;
    if (!s.empty()) s += ",";
    s += name;
  };
  add(kTypeRaw, "RAW");
  add(kTypeWar, "WAR");
  add(kTypeWaw, "WAW");
  return s;
}

// Total order over every field, so multiset difference is well defined even
// for records that tie under the canonical report order.
auto full_key(const HazardRecord& r) {
  return std::make_tuple(static_cast<int>(r.type), r.older_opcode, r.older_operand,
                         r.newer_opcode, r.newer_operand, r.hazard_pair.newer,
                         r.hazard_pair.older, r.gap,
                         static_cast<int>(r.resolution.kind),
                         r.resolution.forward_from, r.resolution.forward_to,
                         r.resolution.stall_cycles, r.apply_at.newer,
                         r.apply_at.older, r.stalled_opcode);
}

std::vector<HazardRecord> multiset_minus(std::vector<HazardRecord> a,
                                         std::vector<HazardRecord> b) {
  auto less = [](const HazardRecord& x, const HazardRecord& y) {
    return full_key(x) < full_key(y);
  };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  std::vector<HazardRecord> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out), less);
  return out;
}

}  // namespace

int diff_records(const std::vector<HazardRecord>& engine,
                 const std::vector<HazardRecord>& oracle,
                 const InstructionSet& origin, std::string& out_report) {
  auto engine_only = multiset_minus(engine, oracle);
  auto oracle_only = multiset_minus(oracle, engine);
  canonicalize(engine_only, origin);
  canonicalize(oracle_only, origin);
  for (const auto& r : engine_only) out_report += "engine only: " + describe(r) + "\n";
  for (const auto& r : oracle_only) out_report += "oracle only: " + describe(r) + "\n";
  return static_cast<int>(engine_only.size() + oracle_only.size());
}

VerifyResult verify_set(const InstructionSet& is, unsigned types) {
  const auto engine = enumerate_all(is, types);
  const auto oracle = oracle_enumerate(is, types);
  VerifyResult result;
  result.report = "types=" + types_label(types) +
                  " engine=" + std::to_string(engine.size()) +
                  " oracle=" + std::to_string(oracle.size()) + "\n";
  result.mismatches = diff_records(engine, oracle, is, result.report);
  result.report += "mismatches=" + std::to_string(result.mismatches) + "\n";
  return result;
}

VerifyResult verify_fuzz(int samples, std::uint64_t seed,
                         const FuzzConfig& config, unsigned types) {
  VerifyResult result;
  result.report = "fuzz samples=" + std::to_string(samples) +
                  " seed=" + std::to_string(seed) +
                  " max_depth=" + std::to_string(config.max_depth) +
                  " max_ops=" + std::to_string(config.max_ops) +
                  " types=" + types_label(types) + "\n";
  int failed_samples = 0;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t sseed = sample_seed(seed, static_cast<std::uint64_t>(i));
    const InstructionSet is = random_instruction_set(sseed, config);
    const auto engine = enumerate_all(is, types);
    const auto oracle = oracle_enumerate(is, types);
    std::string diff;
    const int mismatches = diff_records(engine, oracle, is, diff);
    if (mismatches == 0) continue;
    ++failed_samples;
    result.mismatches += mismatches;
    result.report += "sample " + std::to_string(i) + " seed=" +
                     std::to_string(sseed) +
                     " mismatches=" + std::to_string(mismatches) + "\n";
    result.report += render_isa(is);
    result.report += diff;
  }
  result.report += "samples_failed=" + std::to_string(failed_samples) +
                   " mismatches=" + std::to_string(result.mismatches) + "\n";
  return result;
}

}  // namespace pipehazard
