#pragma once

#include <numbers>

namespace superlattice::constants {

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kHbar = kPlanck / (2.0 * std::numbers::pi);
inline constexpr double kEpsilon0 = 8.8541878128e-12;         // F/m
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Vacuum wavelength [m] -> angular frequency [rad/s].
constexpr double omega_from_wavelength(double wavelength_m) { return kTwoPi * kSpeedOfLight / wavelength_m; }
constexpr double wavelength_from_omega(double omega) { return kTwoPi * kSpeedOfLight / omega; }

}  // namespace superlattice::constants
