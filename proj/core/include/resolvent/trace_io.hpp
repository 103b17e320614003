#pragma once

#include <ostream>
#include <string>

#include "resolvent/iteration.hpp"

namespace resolvent {

inline constexpr int kOutputDigits = 15;

/// Shortest-safe text for a double with 15 significant digits; "inf", "-inf"
/// and "nan" for non-finite values.
std::string format_number(double value, int digits = kOutputDigits);

/// CSV with header `iter,residual,error_vs_oracle`. The last column is empty
/// when the record carries no oracle error.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

}  // namespace resolvent
