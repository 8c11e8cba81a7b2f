#pragma once

#include <numbers>

// All rates and energies are angular frequencies in rad/us, all times in us.
// Ordinary frequencies quoted as f = omega / 2pi in MHz convert with mhz().

namespace stabsim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz(double f_mhz) { return kTwoPi * f_mhz; }
constexpr double to_mhz(double omega) { return omega / kTwoPi; }

constexpr double degrees(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace stabsim
