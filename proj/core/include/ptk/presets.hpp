#pragma once

#include "ptk/extract.hpp"
#include "ptk/params.hpp"

namespace ptk::presets {

// Parameters quoted in the paper (cyclic values converted to rad/s).
SystemParams good_cavity();
SystemParams bad_cavity();

// Device description of the paper's box, ports, transmon and dipole.
CavityGeometry paper_cavity();
CoaxSpec paper_coax();
TransmonSpec paper_transmon();
DipoleSpec good_dipole();
DipoleSpec bad_dipole();

inline constexpr double paper_kappa_khz = 421.5;
inline constexpr double paper_g_good_mhz = 15.9;
inline constexpr double paper_g_bad_khz = 269.3;
inline constexpr double paper_freq_ghz = 7.55;

}  // namespace ptk::presets
