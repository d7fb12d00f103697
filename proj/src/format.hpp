#pragma once

#include <cstdio>
#include <string>

namespace twoside::detail {

/// Ten significant digits, locale independent.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace twoside::detail
