#include "ksharp/format.hpp"

#include <charconv>
#include <stdexcept>

namespace ksharp {

std::string fmt_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return {buf, res.ptr};
}

} // namespace ksharp
