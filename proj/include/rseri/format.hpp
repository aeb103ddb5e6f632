#pragma once

#include <cstdio>
#include <string>

namespace rseri {

/// Fixed-decimal formatting for CSV/JSON artifacts so outputs are
/// byte-stable. Values that round to zero lose their sign ("-0.0000" is
/// never emitted).
inline std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    std::string out(buf);
    if (out.front() == '-' && out.find_first_not_of("0.", 1) == std::string::npos) {
        out.erase(out.begin());
    }
    return out;
}

} // namespace rseri
