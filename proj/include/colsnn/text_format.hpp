#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace colsnn {

// Shortest decimal text that parses back to the identical double.
std::string format_exact(double value);

// Strict full-field parse; throws ParseError tagged with `line`.
double parse_exact(std::string_view text, std::size_t line = 0);

}  // namespace colsnn
