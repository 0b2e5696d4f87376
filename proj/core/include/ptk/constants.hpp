#pragma once

#include <numbers>

namespace ptk {

// CODATA 2018. eps0 is derived so that c0^2 eps0 mu0 = 1 holds to rounding.
struct PhysicalConstants {
    static constexpr double c0 = 299792458.0;
    static constexpr double mu0 = 1.25663706212e-6;
    static constexpr double eps0 = 1.0 / (mu0 * c0 * c0);
    static constexpr double h_planck = 6.62607015e-34;
    static constexpr double hbar = h_planck / (2.0 * std::numbers::pi);
    static constexpr double e_charge = 1.602176634e-19;
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// cyclic <-> angular helpers
constexpr double ghz(double f) { return two_pi * f * 1e9; }
constexpr double mhz(double f) { return two_pi * f * 1e6; }
constexpr double khz(double f) { return two_pi * f * 1e3; }

}  // namespace ptk
