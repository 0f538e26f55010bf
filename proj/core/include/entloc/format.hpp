#pragma once

#include <string>

namespace entloc {

/// Renders a double with 12 significant digits: plain decimal notation for
/// |x| in [1e-4, 1e6), lowercase scientific notation otherwise, bare "0"
/// for zero. The output is a fixed point of parse-then-format, which keeps
/// emitted tables byte-reproducible.
std::string format_number(double x);

}  // namespace entloc
