#include "ptk/presets.hpp"

#include "ptk/constants.hpp"

namespace ptk::presets {

SystemParams good_cavity() {
    SystemParams p;
    p.omega_c = ghz(paper_freq_ghz);
    p.omega_q = ghz(paper_freq_ghz);
    p.g = mhz(paper_g_good_mhz);
    p.kappa1 = khz(paper_kappa_khz);
    p.kappa2 = khz(paper_kappa_khz);
    return p;
}

SystemParams bad_cavity() {
    SystemParams p = good_cavity();
    p.g = khz(paper_g_bad_khz);
    return p;
}

CavityGeometry paper_cavity() { return {22.86e-3, 10.16e-3, 40e-3}; }

CoaxSpec paper_coax() {
    CoaxSpec c;
    c.r_in = 0.05e-3;
    c.r_out = 2.5e-3;
    c.eps_r = 22.04;
    c.z_offsets = {-10e-3, 10e-3};
    c.face = ApertureFace::alternating;
    return c;
}

TransmonSpec paper_transmon() {
    TransmonSpec t;
    t.capacitance = 50.34e-15;
    return t;
}

DipoleSpec good_dipole() {
    DipoleSpec d;
    d.length = 1e-3;
    return d;
}

DipoleSpec bad_dipole() {
    DipoleSpec d = good_dipole();
    d.position = {-6.43e-3, 0.0, -15e-3};
    d.tilt_deg = 86.0;
    return d;
}

}  // namespace ptk::presets
