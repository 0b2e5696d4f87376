#include "ptk/extract.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "ptk/constants.hpp"
#include "ptk/errors.hpp"

namespace ptk {

namespace {

using K = PhysicalConstants;
constexpr double pi = std::numbers::pi;

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw Error(Errc::InvalidArgument, std::string(what) + " must be positive");
}

struct RawSpectrum {
    double omega_q;
    double n_ge;
    double n_gg;
    std::vector<double> energies;  // units of E_C
};

// H/E_C = 4 (n - n_g)^2 - (E_J/E_C)/2 (|n><n+1| + h.c.)
RawSpectrum charge_basis(double ec, double ej, int cutoff, double ng) {
    const int dim = 2 * cutoff + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double n = i - cutoff - ng;
        h(i, i) = 4.0 * n * n;
        if (i + 1 < dim) h(i, i + 1) = h(i + 1, i) = -0.5 * ej / ec;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw Error(Errc::NotConverged, "charge-basis eigensolver failed");

    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    RawSpectrum out;
    out.omega_q = (vals(1) - vals(0)) * ec / K::hbar;
    double nge = 0.0, ngg = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double n = i - cutoff;
        nge += n * vecs(i, 0) * vecs(i, 1);
        ngg += n * vecs(i, 0) * vecs(i, 0);
    }
    out.n_ge = std::abs(nge);
    out.n_gg = ngg;
    const int keep = std::min(dim, 6);
    for (int i = 0; i < keep; ++i) out.energies.push_back(vals(i));
    return out;
}

}  // namespace

double cos_degrees(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0) r += 360.0;
    if (r == 90.0 || r == 270.0) return 0.0;
    return std::cos(r * pi / 180.0);
}

double CavityMode::e_field(double x, double, double z) const {
    const auto& gm = geometry;
    return norm_amp * std::sin(pi * (x + gm.a / 2) / gm.a) * std::sin(pi * (z + gm.d / 2) / gm.d);
}

std::array<double, 3> CavityMode::h_field(double x, double, double z) const {
    const auto& gm = geometry;
    const double k = omega_c / K::c0;
    const double px = pi * (x + gm.a / 2) / gm.a;
    const double pz = pi * (z + gm.d / 2) / gm.d;
    const double hx = -(norm_amp / k) * (pi / gm.d) * std::sin(px) * std::cos(pz);
    const double hz = (norm_amp / k) * (pi / gm.a) * std::cos(px) * std::sin(pz);
    return {hx, 0.0, hz};
}

void ExtractionReport::set_reference(const std::string& name, double value) {
    for (auto& e : entries)
        if (e.name == name) e.reference = value;
}

const ProvenanceEntry* ExtractionReport::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

CavityMode cavity_mode(const CavityGeometry& geom) {
    require_positive(geom.a, "cavity a");
    require_positive(geom.b, "cavity b");
    require_positive(geom.d, "cavity d");
    if (!(geom.a > geom.b && geom.d > geom.b))
        throw Error(Errc::NonFundamental, "TE101 is the lowest mode only when a > b and d > b");
    CavityMode m;
    m.geometry = geom;
    m.omega_c = K::c0 * pi * std::sqrt(1.0 / (geom.a * geom.a) + 1.0 / (geom.d * geom.d));
    m.norm_amp = 2.0 / std::sqrt(geom.a * geom.b * geom.d);
    m.degenerate_warning = std::abs(geom.a - geom.d) <= 1e-12 * std::max(geom.a, geom.d);
    return m;
}

PortCoupling coupling_kappa(const CavityGeometry& geom, const CoaxSpec& coax,
                            const CavityMode& mode) {
    require_positive(coax.r_in, "coax r_in");
    if (!(coax.r_out > coax.r_in)) throw Error(Errc::InvalidArgument, "coax r_out must exceed r_in");
    if (!(coax.eps_r >= 1.0)) throw Error(Errc::InvalidArgument, "coax eps_r must be >= 1");
    if (coax.z_offsets.empty()) throw Error(Errc::InvalidArgument, "no coax apertures given");
    if (std::abs(coax.x_offset) + coax.r_out >= geom.a / 2)
        throw Error(Errc::InvalidArgument, "aperture extends past the cavity face in x");
    for (double z : coax.z_offsets)
        if (std::abs(z) + coax.r_out >= geom.d / 2)
            throw Error(Errc::InvalidArgument, "aperture extends past the cavity face in z");

    const double log_ratio = std::log(coax.r_out / coax.r_in);
    const double tem = 1.0 / std::sqrt(2.0 * pi * log_ratio);
    // standing-wave continuum normalisation of the port mode
    const double amp = std::sqrt(2.0 / (pi * K::c0 * std::sqrt(coax.eps_r)));

    // integral over the annulus of H . (e_t x n) with n = -y (top wall)
    auto annulus = [&](double zc, int nr, int nphi) {
        const double hr = (coax.r_out - coax.r_in) / nr;
        const double hphi = 2.0 * pi / nphi;
        double sum = 0.0;
        for (int j = 0; j < nphi; ++j) {
            const double phi = (j + 0.5) * hphi;
            const double c = std::cos(phi), s = std::sin(phi);
            for (int i = 0; i < nr; ++i) {
                const double rho = coax.r_in + (i + 0.5) * hr;
                const auto h = mode.h_field(coax.x_offset + rho * c, 0.0, zc + rho * s);
                sum += h[0] * s - h[2] * c;
            }
        }
        return sum * tem * hr * hphi;
    };

    PortCoupling out;
    for (std::size_t port = 0; port < coax.z_offsets.size(); ++port) {
        const double zc = coax.z_offsets[port];
        int nr = 8, nphi = 16, level = 0;
        double prev = annulus(zc, nr, nphi);
        double cur = prev;
        double change = 1.0;
        while (level < 10) {
            nr *= 2;
            nphi *= 2;
            ++level;
            cur = annulus(zc, nr, nphi);
            change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
            prev = cur;
            if (change < 1e-4) break;
        }
        if (change > 1e-3)
            throw Error(Errc::QuadratureNotConverged, "aperture integral did not settle");
        out.refinement_levels = std::max(out.refinement_levels, level);

        double sign = 1.0;
        if (coax.face == ApertureFace::bottom) sign = -1.0;
        if (coax.face == ApertureFace::alternating && port % 2 == 1) sign = -1.0;
        const double gp = sign * 0.5 * K::c0 * amp * cur;
        out.g_p.push_back(gp);
        out.kappa.push_back(2.0 * pi * gp * gp);
    }
    return out;
}

double TransmonSpec::charging_energy() const {
    if (capacitance.has_value() == ec.has_value())
        throw Error(Errc::InvalidArgument, "give exactly one of transmon capacitance or ec");
    if (capacitance) {
        require_positive(*capacitance, "transmon capacitance");
        return K::e_charge * K::e_charge / (2.0 * *capacitance);
    }
    require_positive(*ec, "transmon ec");
    return *ec;
}

TransmonSolution transmon_spectrum(const TransmonSpec& spec) {
    const double ec = spec.charging_energy();
    require_positive(spec.ej, "transmon ej");
    if (spec.charge_cutoff < 10) throw Error(Errc::InvalidArgument, "charge_cutoff must be >= 10");

    const auto base = charge_basis(ec, spec.ej, spec.charge_cutoff, spec.offset_charge);
    const auto twice = charge_basis(ec, spec.ej, 2 * spec.charge_cutoff, spec.offset_charge);
    const double dw = std::abs(twice.omega_q - base.omega_q) / twice.omega_q;
    const double dn = std::abs(twice.n_ge - base.n_ge) / std::max(twice.n_ge, 1e-300);
    if (dw > 1e-10 || dn > 1e-10)
        throw Error(Errc::NotConverged, "charge_cutoff too small for E_J/E_C");

    TransmonSolution out;
    out.omega_q = base.omega_q;
    out.n_ge = base.n_ge;
    out.n_gg = base.n_gg;
    for (double e : base.energies) out.eigenvalues.push_back(e * ec);
    return out;
}

double solve_ej(double ec, double omega_q_target, int charge_cutoff) {
    require_positive(ec, "ec");
    require_positive(omega_q_target, "omega_q target");
    auto f = [&](double ratio) {
        return charge_basis(ec, ratio * ec, charge_cutoff, 0.0).omega_q - omega_q_target;
    };
    const double lo = 1.0, hi = 1e4;
    const double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0.0)
        throw Error(Errc::NoBracket, "target frequency not reachable for E_J in [E_C, 1e4 E_C]");

    boost::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                    boost::math::tools::eps_tolerance<double>(52), iters);
    const double ratio = 0.5 * (a + b);
    const double ej = ratio * ec;
    const double got = charge_basis(ec, ej, charge_cutoff, 0.0).omega_q;
    if (std::abs(got - omega_q_target) / omega_q_target > 1e-9)
        throw Error(Errc::NotConverged, "E_J root solve missed the target");
    return ej;
}

double effective_length(const DipoleSpec& dipole, double omega_c) {
    switch (dipole.effective_length_model) {
        case EffectiveLength::half_length:
            return 0.5 * dipole.length;
        case EffectiveLength::sinusoidal: {
            const double lambda = 2.0 * pi * K::c0 / omega_c;
            return (lambda / pi) * std::tan(pi * dipole.length / (2.0 * lambda));
        }
    }
    return 0.5 * dipole.length;
}

double coupling_g(const CavityMode& mode, const DipoleSpec& dipole,
                  const TransmonSolution& transmon) {
    const auto& gm = mode.geometry;
    const auto& r = dipole.position;
    if (!(std::abs(r[0]) < gm.a / 2 && std::abs(r[1]) < gm.b / 2 && std::abs(r[2]) < gm.d / 2))
        throw Error(Errc::OutsideCavity, "dipole position outside the cavity volume");
    if (!(dipole.length > 0.0)) throw Error(Errc::InvalidArgument, "dipole length must be positive");
    if (transmon.n_ge < 1e-12) throw Error(Errc::ZeroMatrixElement, "n_ge vanishes");

    const double field = mode.e_field(r[0], r[1], r[2]);
    const double zpf = std::sqrt(mode.omega_c / (2.0 * K::eps0 * K::hbar));
    return 2.0 * K::e_charge * transmon.n_ge * zpf * field *
           effective_length(dipole, mode.omega_c) * cos_degrees(dipole.tilt_deg);
}

Extraction extract_params(const CavityGeometry& geom, const CoaxSpec& coax,
                          const TransmonSpec& transmon, const DipoleSpec& dipole) {
    Extraction out;
    auto& rep = out.report;
    auto add = [&](std::string name, double value, std::string unit, std::string source) {
        rep.entries.push_back({std::move(name), value, std::move(unit), std::move(source), std::nullopt});
    };

    const auto mode = cavity_mode(geom);
    if (mode.degenerate_warning)
        rep.warnings.push_back("a = d: TE101 and TE10-1 style degeneracy weakens the single-mode model");
    add("omega_c", mode.omega_c / two_pi / 1e9, "GHz", "TE101 closed form");

    if (coax.z_offsets.size() != 2) throw Error(Errc::InvalidArgument, "exactly two coax apertures required");
    const auto ports = coupling_kappa(geom, coax, mode);
    add("g_p1", ports.g_p[0], "sqrt(rad/s)", "annular aperture quadrature");
    add("g_p2", ports.g_p[1], "sqrt(rad/s)", "annular aperture quadrature");
    add("kappa1", ports.kappa[0] / two_pi / 1e3, "kHz", "2 pi g_p1^2");
    add("kappa2", ports.kappa[1] / two_pi / 1e3, "kHz", "2 pi g_p2^2");

    TransmonSpec ts = transmon;
    const double ec = ts.charging_energy();
    add("E_C", ec / K::h_planck / 1e9, "GHz", ts.capacitance ? "e^2/(2C)" : "given");
    if (!(ts.ej > 0.0)) {
        ts.ej = solve_ej(ec, mode.omega_c, ts.charge_cutoff);
        add("E_J", ts.ej / K::h_planck / 1e9, "GHz", "root solve for omega_q = omega_c");
    } else {
        add("E_J", ts.ej / K::h_planck / 1e9, "GHz", "given");
    }
    const auto sol = transmon_spectrum(ts);
    add("omega_q", sol.omega_q / two_pi / 1e9, "GHz", "charge-basis diagonalisation");
    add("n_ge", sol.n_ge, "1", "charge-basis diagonalisation");

    const double lambda_c = two_pi * PhysicalConstants::c0 / mode.omega_c;
    if (dipole.length > lambda_c / 10)
        rep.warnings.push_back("dipole length exceeds lambda_c/10; small-dipole model is stretched");
    const double g = coupling_g(mode, dipole, sol);
    add("g", g / two_pi / 1e6, "MHz", "dipole coupling with effective length");

    out.params.omega_c = mode.omega_c;
    out.params.omega_q = sol.omega_q;
    out.params.g = g;
    out.params.kappa1 = ports.kappa[0];
    out.params.kappa2 = ports.kappa[1];
    return out;
}

}  // namespace ptk
