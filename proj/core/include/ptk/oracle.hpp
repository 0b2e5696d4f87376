#pragma once

#include <string>
#include <vector>

#include "ptk/params.hpp"
#include "ptk/transport.hpp"

namespace ptk {

struct PulseSpec {
    double center_freq = 0.0;      // rad/s
    double bandwidth = 0.0;        // rad/s, Gaussian sigma of the spectrum
    double duration_window = 0.0;  // s
    long sample_count = 0;         // RK4 steps over the window
};

// Window and step count sized from the system decay and oscillation rates.
PulseSpec make_pulse(const SystemParams& p, double center_freq, double bandwidth);

struct TdResult {
    std::vector<double> freqs;
    std::vector<cplx> r;
    std::vector<cplx> t;
    double energy_in = 0.0;
    double energy_out = 0.0;
    double halving_change = 0.0;  // max |S_h - S_h/2| over the band
};

// Time-domain single-excitation scattering. Probe frequencies default to
// 201 points over center +- 2 sigma.
TdResult td_single(const SystemParams& p, const PulseSpec& pulse,
                   std::vector<double> probe = {});

struct LindbladConfig {
    int fock_cutoff = 5;
    double drive_amp = 0.0;  // rad/s; 0 selects the drive from target_photons
    double detuning = 0.0;   // u - omega_c
    double convergence_tol = 1e-12;
    double target_photons = 1e-10;
    bool check_cutoff = true;
};

struct LindbladResult {
    std::vector<double> g2;
    double photon_number = 0.0;
    double drive_amp = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    double residual = 0.0;
};

LindbladResult lindblad_g2(const SystemParams& p, const LindbladConfig& cfg,
                           OutputPorts ports, const std::vector<double>& tau_grid);

struct OracleReport {
    std::string check_name;
    double analytic_value = 0.0;
    double oracle_value = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool skipped = false;
    double runtime = 0.0;  // s
    std::string note;
};

std::vector<OracleReport> run_verification(const SystemParams& p, unsigned threads = 0);

}  // namespace ptk
