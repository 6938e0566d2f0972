// Deterministic text rendering of numbers for CSV output.
#pragma once

#include <string>

namespace lvc {

// 17 significant digits: enough to round-trip any double, independent of
// locale and stream state.
std::string g17(double v);

}  // namespace lvc
