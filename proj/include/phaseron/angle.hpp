// angle.hpp
// Canonical phase handling. All gate angles and phase-vector entries are kept
// in [0, 2*pi); arithmetic elsewhere normalizes through this helper.

#pragma once

#include <cmath>
#include <numbers>

namespace phaseron {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduce an angle to [0, 2*pi).
inline double normalize_angle(double radians) {
    double reduced = std::fmod(radians, kTwoPi);
    if (reduced < 0.0) {
        reduced += kTwoPi;
    }
    if (reduced >= kTwoPi) { // fmod of a value just below 0 can round up to 2*pi
        reduced -= kTwoPi;
    }
    return reduced;
}

// True when the angle is a multiple of 2*pi within the given tolerance.
inline bool is_zero_angle(double radians, double tolerance = 1e-12) {
    const double reduced = normalize_angle(radians);
    return reduced <= tolerance || kTwoPi - reduced <= tolerance;
}

} // namespace phaseron
