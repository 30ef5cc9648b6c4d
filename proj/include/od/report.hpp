#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "od/term.hpp"

namespace od {

struct ViolationRecord {
  std::string law;                     // which rule failed
  std::vector<std::string> witnesses;  // rendered terms exhibiting it
  std::string detail;
};

struct CheckReport {
  std::string label;          // what was checked
  Flavor flavor = Flavor::M;
  std::size_t fragment_size = 0;  // number of terms examined
  std::size_t pairs = 0;          // pair/triple evaluations performed
  std::vector<ViolationRecord> violations;
  std::int64_t elapsed_ms = 0;

  bool pass() const { return violations.empty(); }
};

enum class OutputMode { Text, Structured };

// Text mode is a human-readable multi-line summary.  Structured mode is a
// single machine-readable line:
//   verdict=<pass|fail> pairs=<n> violations=<n> elapsed_ms=<n>
std::string format_report(const CheckReport& report, OutputMode mode);

}  // namespace od
