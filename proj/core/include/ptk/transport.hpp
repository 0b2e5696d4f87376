#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "ptk/params.hpp"

namespace ptk {

using cplx = std::complex<double>;

// Coefficients of delta(u - v) for a photon entering at Port 1 (s_q[0], s_c[0])
// and Port 2 (s_q[1], s_c[1]).
struct SinglePhotonResponse {
    double v = 0.0;
    cplx s_q[2];
    cplx s_c[2];
    cplx r1;
    cplx t21;
};

struct PoleSet {
    cplx lambda1_plus, lambda1_minus;
    cplx lambda2_plus, lambda2_minus;
};

struct OutputPorts {
    int b1 = 2;
    int b2 = 2;
};

cplx denominator(const SystemParams& p, double v);

SinglePhotonResponse single_response(const SystemParams& p, double v);

PoleSet poles(const SystemParams& p);

// Correlated amplitude for both photons entering at Port 1.
cplx gamma(const SystemParams& p, double u1, double u2, double xi);

struct TwoPhotonElement {
    SystemParams params;
    double u1 = 0.0, u2 = 0.0;
    OutputPorts ports;
    cplx direct;    // multiplies delta(u1 - v1) delta(u2 - v2)
    cplx exchange;  // multiplies delta(u2 - v1) delta(u1 - v2)
    cplx gamma_value;

    // coefficient of delta(v1 + v2 - u1 - u2) at v2 = u1 + u2 - v1
    cplx correlated(double v1) const;
};

TwoPhotonElement two_photon_element(const SystemParams& p, double u1, double u2,
                                    OutputPorts ports);

// Appendix-D style intermediate: alpha(v) with 1 - i alpha kappa = r1(v).
cplx alpha_coefficient(const SystemParams& p, double v);

struct HValue {
    cplx value;
    bool degenerate = false;
};

// Correlated real-space term with common phase removed; tau = |x_m| / v_g.
HValue h_closed(const SystemParams& p, double u1, double u2, double tau);

enum class HTerm { both, forward, backward };

struct QuadratureOptions {
    double agree_tol = 1e-8;  // allowed change between refinement levels
    HTerm term = HTerm::both;
};

// Numerical evaluation of the pre-contour integral over Delta.
cplx h_quadrature(const SystemParams& p, double u1, double u2, double tau,
                  const QuadratureOptions& opt = {});

struct CorrelationQuery {
    double u1 = 0.0, u2 = 0.0;
    std::vector<double> tau_grid;
    OutputPorts ports;
};

struct CorrelationResult {
    std::vector<double> g2;
    std::vector<double> G2;
    double background = 0.0;
    bool diverged = false;
    bool degenerate = false;
};

inline constexpr double background_floor = 1e-30;

CorrelationResult correlation(const SystemParams& p, const CorrelationQuery& q);

// convenience: g2_{b1 b2}(0) for identical photons at u
CorrelationResult g2_zero(const SystemParams& p, double u, OutputPorts ports);

std::vector<SinglePhotonResponse> sweep_single(const SystemParams& p,
                                               const std::vector<double>& v_grid,
                                               unsigned threads = 0);

std::vector<CorrelationResult> sweep_g2(const SystemParams& p,
                                        const std::vector<double>& u_grid,
                                        OutputPorts ports, double tau,
                                        unsigned threads = 0);

// linear grid, n points over [lo, hi]
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

// default plotting grid: omega_c +- 3g (good) or +- 10 kappa (bad)
std::vector<double> default_grid(const SystemParams& p, std::size_t n = 2001);

bool good_cavity(const SystemParams& p);

}  // namespace ptk
