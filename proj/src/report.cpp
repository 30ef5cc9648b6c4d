#include "od/report.hpp"

#include <sstream>

namespace od {

std::string format_report(const CheckReport& r, OutputMode mode) {
  std::ostringstream os;
  if (mode == OutputMode::Structured) {
    os << "verdict=" << (r.pass() ? "pass" : "fail") << " pairs=" << r.pairs
       << " violations=" << r.violations.size()
       << " elapsed_ms=" << r.elapsed_ms << "\n";
    return os.str();
  }
  os << r.label << " [system " << flavor_name(r.flavor) << "]\n"
     << "  terms examined: " << r.fragment_size << "\n"
     << "  checks performed: " << r.pairs << "\n"
     << "  elapsed: " << r.elapsed_ms << " ms\n";
  if (r.pass()) {
    os << "  result: PASS\n";
    return os.str();
  }
  os << "  result: FAIL (" << r.violations.size() << " violation(s))\n";
  const std::size_t shown = r.violations.size() < 20 ? r.violations.size() : 20;
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& v = r.violations[i];
    os << "    - " << v.law << ":";
    for (const auto& w : v.witnesses) os << "  " << w;
    if (!v.detail.empty()) os << "  (" << v.detail << ")";
    os << "\n";
  }
  if (shown < r.violations.size())
    os << "    ... and " << (r.violations.size() - shown) << " more\n";
  return os.str();
}

}  // namespace od
