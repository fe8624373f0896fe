#ifndef PIPEHAZARD_VERIFY_HPP
#define PIPEHAZARD_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pipehazard/fuzz.hpp"
#include "pipehazard/isa.hpp"
#include "pipehazard/records.hpp"

namespace pipehazard {

struct VerifyResult {
  int mismatches = 0;
  std::string report;
};

// Multiset difference between two record lists; appends one line per
// unmatched record ("engine only: ..." / "oracle only: ...") to out_report
// and returns the total number of unmatched records.
int diff_records(const std::vector<HazardRecord>& engine,
                 const std::vector<HazardRecord>& oracle,
                 const InstructionSet& origin, std::string& out_report);

// Rule engine vs simulator on one instruction set.
VerifyResult verify_set(const InstructionSet& is, unsigned types = kTypeAll);

// Rule engine vs simulator on `samples` generated sets. Mismatching samples
// are reported with their seed and a normalized dump of the set, so any
// failure is reproducible from the report alone.
VerifyResult verify_fuzz(int samples, std::uint64_t seed,
                         const FuzzConfig& config = {},
                         unsigned types = kTypeAll);

}  // namespace pipehazard

#endif
