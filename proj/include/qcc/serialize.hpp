#pragma once

#include <string>

namespace qcc {

/// Decimal with 12 significant digits, as used by every CSV writer here.
std::string format_sig12(double v);

}  // namespace qcc
