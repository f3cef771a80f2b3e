#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace quadyn {

/// Shortest-roundtrip-safe decimal text: 17 significant digits, '.' separator,
/// independent of the global locale.
std::string format_real(double v);

/// Shortest text that reads back to the same double; for messages.
std::string format_compact(double v);

/// Inverse of format_real; nullopt if the whole string is not a number.
std::optional<double> parse_real(std::string_view text);

}  // namespace quadyn
