#pragma once

#include <string>

namespace ksharp {

/// Shortest decimal representation that round-trips to the same double.
std::string fmt_double(double v);

} // namespace ksharp
