#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ptk/params.hpp"

namespace ptk {

// Box dimensions in meters; x across a, y across b, z along d.
struct CavityGeometry {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
};

// TE101 mode. E is y-polarized with profile sin(pi x'/a) sin(pi z'/d),
// x' = x + a/2 and z' = z + d/2 (wall-anchored).
struct CavityMode {
    double omega_c = 0.0;
    double norm_amp = 0.0;  // m^-3/2
    CavityGeometry geometry;
    bool degenerate_warning = false;

    // E_y at a point given in center-origin coordinates
    double e_field(double x, double y, double z) const;
    // H = curl E / k, components (x, y, z), center-origin coordinates
    std::array<double, 3> h_field(double x, double y, double z) const;
};

enum class ApertureFace { top, bottom, alternating };

struct CoaxSpec {
    double r_in = 0.0;
    double r_out = 0.0;
    double eps_r = 1.0;
    std::vector<double> z_offsets;  // relative to cavity center
    double x_offset = 0.0;          // relative to cavity center
    ApertureFace face = ApertureFace::alternating;
};

struct PortCoupling {
    std::vector<double> g_p;    // sqrt(rad/s)
    std::vector<double> kappa;  // rad/s
    int refinement_levels = 0;
};

struct TransmonSpec {
    std::optional<double> capacitance;  // F
    std::optional<double> ec;           // J
    double ej = 0.0;                    // J
    int charge_cutoff = 20;
    double offset_charge = 0.0;

    double charging_energy() const;
};

struct TransmonSolution {
    double omega_q = 0.0;
    double n_ge = 0.0;
    double n_gg = 0.0;
    std::vector<double> eigenvalues;  // J, lowest few
};

enum class EffectiveLength { half_length, sinusoidal };

struct DipoleSpec {
    double length = 0.0;
    std::array<double, 3> position{0.0, 0.0, 0.0};
    double tilt_deg = 0.0;
    EffectiveLength effective_length_model = EffectiveLength::half_length;
};

struct ProvenanceEntry {
    std::string name;
    double value = 0.0;
    std::string unit;
    std::string source;
    std::optional<double> reference;  // paper value in the same unit, if any
};

struct ExtractionReport {
    std::vector<ProvenanceEntry> entries;
    std::vector<std::string> warnings;

    void set_reference(const std::string& name, double value);
    const ProvenanceEntry* find(const std::string& name) const;
};

struct Extraction {
    SystemParams params;
    ExtractionReport report;
};

CavityMode cavity_mode(const CavityGeometry& geom);

PortCoupling coupling_kappa(const CavityGeometry& geom, const CoaxSpec& coax,
                            const CavityMode& mode);

TransmonSolution transmon_spectrum(const TransmonSpec& spec);

// E_J such that the transmon transition hits omega_q_target
double solve_ej(double ec, double omega_q_target, int charge_cutoff = 20);

double effective_length(const DipoleSpec& dipole, double omega_c);

double coupling_g(const CavityMode& mode, const DipoleSpec& dipole,
                  const TransmonSolution& transmon);

// Transmon target: if spec.ej == 0 the Josephson energy is solved so that
// omega_q equals the cavity frequency.
Extraction extract_params(const CavityGeometry& geom, const CoaxSpec& coax,
                          const TransmonSpec& transmon, const DipoleSpec& dipole);

// cos of an angle in degrees, exact zero at odd multiples of 90
double cos_degrees(double deg);

}  // namespace ptk
