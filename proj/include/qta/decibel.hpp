#pragma once

#include <cmath>
#include <limits>

namespace qta {

inline constexpr double kNegInfDb = -std::numeric_limits<double>::infinity();

/// Power ratio from dB. -inf maps to 0.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// dB from power ratio. 0 maps to -inf.
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace qta
