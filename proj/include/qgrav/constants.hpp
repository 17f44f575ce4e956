#pragma once

#include <numbers>

namespace qgrav::constants {

// SI 2019 defining constants; hbar is h/(2*pi) to full double precision.
inline constexpr double planck = 6.62607015e-34;           // J s
inline constexpr double hbar = 1.0545718176461565e-34;     // J s
inline constexpr double boltzmann = 1.380649e-23;          // J / K
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace qgrav::constants
