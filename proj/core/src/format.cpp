#include "entloc/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace entloc {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";

    char buf[64];
    const double ax = std::abs(x);
    if (ax >= 1e-4 && ax < 1e6) {
        const int leading = static_cast<int>(std::floor(std::log10(ax)));
        const int decimals = 11 - leading;
        std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
        // Rounding can carry the value across a power of ten (0.99...9
        // becomes 1.00...0); one fewer decimal keeps 12 digits and makes
        // the output a fixed point of parse-then-format.
        if (decimals > 0 &&
            std::abs(std::strtod(buf, nullptr)) >= std::pow(10.0, leading + 1)) {
            std::snprintf(buf, sizeof buf, "%.*f", decimals - 1, x);
        }
    } else {
        std::snprintf(buf, sizeof buf, "%.11e", x);
    }
    return buf;
}

}  // namespace entloc
