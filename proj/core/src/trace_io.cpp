#include "resolvent/trace_io.hpp"

#include <cmath>
#include <cstdio>

namespace resolvent {

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  out << "iter,residual,error_vs_oracle\n";
  for (const auto& rec : trace.records) {
    out << rec.iter << ',' << format_number(rec.residual) << ',';
    if (rec.error) out << format_number(*rec.error);
    out << '\n';
  }
}

}  // namespace resolvent
