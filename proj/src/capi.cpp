#include "pipehazard.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>

#include "pipehazard/equivalence.hpp"
#include "pipehazard/hazards.hpp"
#include "pipehazard/isa.hpp"
#include "pipehazard/report.hpp"
#include "pipehazard/verify.hpp"

struct phz_isa {
  pipehazard::InstructionSet set;
};

struct phz_records {
  pipehazard::InstructionSet origin;
  std::vector<pipehazard::HazardRecord> records;
};

namespace {

using pipehazard::ReductionLevel;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Uniform exception mapping for every entry point.
template <typename Fn>
phz_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument&) {
    return PHZ_BAD_ARGUMENT;
  } catch (const std::exception&) {
    return PHZ_ERROR;
  }
}

bool parse_level(const char* level, ReductionLevel& out) {
  const std::string s = level;
  if (s == "full") out = ReductionLevel::Full;
  else if (s == "raw") out = ReductionLevel::Raw;
  else if (s == "write") out = ReductionLevel::Write;
  else return false;
  return true;
}

bool parse_type(const char* type, pipehazard::HazardType& out) {
  const std::string s = type;
  if (s == "raw") out = pipehazard::HazardType::Raw;
  else if (s == "war") out = pipehazard::HazardType::War;
  else if (s == "waw") out = pipehazard::HazardType::Waw;
  else return false;
  return true;
}

}  // namespace

extern "C" {

const char* phz_version(void) { return "0.1.0"; }

void phz_string_free(char* text) { std::free(text); }

phz_status phz_isa_parse(const char* text, phz_isa** out_isa,
                         char** out_diagnostics) {
  if (!text || !out_isa) return PHZ_BAD_ARGUMENT;
  *out_isa = nullptr;
  if (out_diagnostics) *out_diagnostics = nullptr;
  return guarded([&]() -> phz_status {
    const pipehazard::ParseResult result = pipehazard::parse_instruction_set(text);
    if (out_diagnostics)
      *out_diagnostics = dup_string(pipehazard::format_diagnostics(result.diagnostics));
    if (!result.set) return PHZ_ERROR;
    *out_isa = new phz_isa{*result.set};
    return PHZ_OK;
  });
}

void phz_isa_free(phz_isa* isa) { delete isa; }

int phz_isa_instruction_count(const phz_isa* isa) {
  return isa ? static_cast<int>(isa->set.instructions.size()) : 0;
}

phz_status phz_isa_render(const phz_isa* isa, char** out_text) {
  if (!isa || !out_text) return PHZ_BAD_ARGUMENT;
  *out_text = nullptr;
  return guarded([&]() -> phz_status {
    *out_text = dup_string(pipehazard::render_isa(isa->set));
    return PHZ_OK;
  });
}

phz_status phz_reduce_listing(const phz_isa* isa, const char* level,
                              char** out_text) {
  if (!isa || !level || !out_text) return PHZ_BAD_ARGUMENT;
  *out_text = nullptr;
  ReductionLevel parsed;
  if (!parse_level(level, parsed)) return PHZ_BAD_ARGUMENT;
  return guarded([&]() -> phz_status {
    *out_text = dup_string(
        pipehazard::render_reduction(pipehazard::reduce(isa->set, parsed)));
    return PHZ_OK;
  });
}

phz_status phz_enumerate(const phz_isa* isa, unsigned types, int use_reduction,
                         phz_records** out_records) {
  if (!isa || !out_records) return PHZ_BAD_ARGUMENT;
  *out_records = nullptr;
  return guarded([&]() -> phz_status {
    auto records = pipehazard::enumerate_all(isa->set, types, use_reduction != 0);
    *out_records = new phz_records{isa->set, std::move(records)};
    return PHZ_OK;
  });
}

void phz_records_free(phz_records* records) { delete records; }

int phz_records_count(const phz_records* records) {
  return records ? static_cast<int>(records->records.size()) : 0;
}

phz_status phz_records_csv(const phz_records* records, char** out_text) {
  if (!records || !out_text) return PHZ_BAD_ARGUMENT;
  *out_text = nullptr;
  return guarded([&]() -> phz_status {
    *out_text = dup_string(pipehazard::export_csv(records->records));
    return PHZ_OK;
  });
}

phz_status phz_hazards_report(const phz_isa* isa, unsigned types,
                              const char* older, const char* newer,
                              int no_reduce, const char* format,
                              char** out_text) {
  if (!isa || !format || !out_text) return PHZ_BAD_ARGUMENT;
  *out_text = nullptr;
  const std::string fmt = format;
  if (fmt != "table" && fmt != "csv") return PHZ_BAD_ARGUMENT;
  return guarded([&]() -> phz_status {
    if (older && !isa->set.find(older)) return PHZ_BAD_ARGUMENT;
    if (newer && !isa->set.find(newer)) return PHZ_BAD_ARGUMENT;
    pipehazard::PairFilter filter;
    if (older) filter.older = older;
    if (newer) filter.newer = newer;
    auto records = pipehazard::filter_pair(
        pipehazard::enumerate_all(isa->set, types, no_reduce == 0), filter);
    if (fmt == "csv") {
      *out_text = dup_string(pipehazard::export_csv(records));
    } else {
      const auto cases = pipehazard::case_matrix(isa->set, types, filter);
      *out_text = dup_string(pipehazard::render_hazard_table(records, cases));
    }
    return PHZ_OK;
  });
}

phz_status phz_diagram(const phz_isa* isa, const char* type, const char* older,
                       const char* newer, const char* older_operand,
                       const char* newer_operands_csv, char** out_text) {
  if (!isa || !type || !older || !newer || !older_operand ||
      !newer_operands_csv || !out_text)
    return PHZ_BAD_ARGUMENT;
  *out_text = nullptr;
  pipehazard::HazardType parsed;
  if (!parse_type(type, parsed)) return PHZ_BAD_ARGUMENT;
  return guarded([&]() -> phz_status {
    const pipehazard::InstructionSpec* older_inst = isa->set.find(older);
    const pipehazard::InstructionSpec* newer_inst = isa->set.find(newer);
    if (!older_inst || !newer_inst) return PHZ_BAD_ARGUMENT;
    pipehazard::DiagramBinding binding;
    binding.type = parsed;
    binding.older_operand = older_operand;
    const std::string list = newer_operands_csv;
    size_t start = 0;
    while (start <= list.size()) {
      size_t pos = list.find(',', start);
      if (pos == std::string::npos) pos = list.size();
      if (pos > start) binding.newer_operands.push_back(list.substr(start, pos - start));
      start = pos + 1;
    }
    if (binding.newer_operands.empty()) return PHZ_BAD_ARGUMENT;
    const auto records =
        pipehazard::enumerate_all(isa->set, pipehazard::type_mask(parsed));
    *out_text = dup_string(
        pipehazard::render_diagram(*older_inst, *newer_inst, binding, records));
    return PHZ_OK;
  });
}

phz_status phz_verify_isa(const phz_isa* isa, unsigned types, char** out_report) {
  if (!isa || !out_report) return PHZ_BAD_ARGUMENT;
  *out_report = nullptr;
  return guarded([&]() -> phz_status {
    const pipehazard::VerifyResult result = pipehazard::verify_set(isa->set, types);
    *out_report = dup_string(result.report);
    return result.mismatches == 0 ? PHZ_OK : PHZ_MISMATCH;
  });
}

phz_status phz_verify_fuzz(int samples, unsigned long long seed, int max_depth,
                           int max_ops, unsigned types, char** out_report) {
  if (!out_report) return PHZ_BAD_ARGUMENT;
  *out_report = nullptr;
  if (samples < 0 || max_depth < 2 || max_ops < 0) return PHZ_BAD_ARGUMENT;
  return guarded([&]() -> phz_status {
    pipehazard::FuzzConfig config;
    config.max_depth = max_depth;
    config.max_ops = max_ops;
    const pipehazard::VerifyResult result =
        pipehazard::verify_fuzz(samples, seed, config, types);
    *out_report = dup_string(result.report);
    return result.mismatches == 0 ? PHZ_OK : PHZ_MISMATCH;
  });
}

}  // extern "C"
