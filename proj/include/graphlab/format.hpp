#pragma once

#include <string>
#include <string_view>

namespace graphlab {

// Shortest decimal string that round-trips to the same 64-bit double.
std::string format_double(double v);

// Strict parse of a whole token; throws ParameterError on garbage.
double parse_double(std::string_view token);
long long parse_int(std::string_view token);

} // namespace graphlab
