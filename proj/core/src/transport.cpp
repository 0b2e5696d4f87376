#include "ptk/transport.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "ptk/errors.hpp"
#include "ptk/parallel.hpp"

namespace ptk {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// Pole offsets measured from omega_c (one photon) and 2 omega_c (two photons).
// Working in offsets keeps the differences E - 2 lambda at full precision.
struct Offsets {
    cplx l1p, l1m, l2p, l2m;
};

Offsets pole_offsets(const SystemParams& p) {
    const double dq = p.omega_q - p.omega_c;
    const double K = p.kappa_total();
    const double g2 = p.g * p.g;
    const cplx h1 = cplx(-dq, -K / 2) / 2.0;
    const cplx r1 = std::sqrt(h1 * h1 + g2);
    const cplx c1 = cplx(dq, -K / 2) / 2.0;
    const cplx h2 = cplx(dq, K / 2) / 2.0;
    const cplx r2 = std::sqrt(h2 * h2 + 2.0 * g2);
    const cplx c2 = cplx(dq, -1.5 * K) / 2.0;
    return {c1 + r1, c1 - r1, c2 + r2, c2 - r2};
}

void require_symmetric(const SystemParams& p) {
    if (!p.symmetric()) throw Error(Errc::AsymmetricPorts, "two-photon closed forms need kappa1 = kappa2");
}

cplx coefficient(const SinglePhotonResponse& a, const SinglePhotonResponse& b, OutputPorts ports) {
    auto x = [](const SinglePhotonResponse& s, int port) { return port == 1 ? s.r1 : s.t21; };
    if (ports.b1 == ports.b2) return x(a, ports.b1) * x(b, ports.b2);
    return 0.5 * (a.r1 * b.t21 + a.t21 * b.r1);
}

void check_ports(OutputPorts ports) {
    if ((ports.b1 != 1 && ports.b1 != 2) || (ports.b2 != 1 && ports.b2 != 2))
        throw Error(Errc::InvalidArgument, "output ports must be 1 or 2");
}

}  // namespace

cplx denominator(const SystemParams& p, double v) {
    const double K = p.kappa_total();
    return cplx(v - p.omega_c, K / 2) * (v - p.omega_q) - p.g * p.g;
}

SinglePhotonResponse single_response(const SystemParams& p, double v) {
    const double sk1 = std::sqrt(p.kappa1), sk2 = std::sqrt(p.kappa2);
    SinglePhotonResponse s;
    s.v = v;
    if (p.g == 0.0) {
        // bare cavity; the (v - omega_q) factor cancels
        const cplx Dc(v - p.omega_c, p.kappa_total() / 2);
        if (std::abs(Dc) < 1e-300) throw Error(Errc::PoleHit, "probe frequency sits on a lossless pole");
        s.s_c[0] = sk1 / Dc;
        s.s_c[1] = sk2 / Dc;
        s.r1 = cplx(v - p.omega_c, (p.kappa2 - p.kappa1) / 2) / Dc;
        s.t21 = -I * (sk1 * sk2) / Dc;
        return s;
    }
    const cplx D = denominator(p, v);
    if (std::abs(D) < 1e-300) throw Error(Errc::PoleHit, "probe frequency sits on a lossless pole");
    const double dv = v - p.omega_q;
    s.s_q[0] = p.g * sk1 / D;
    s.s_q[1] = p.g * sk2 / D;
    s.s_c[0] = sk1 * dv / D;
    s.s_c[1] = sk2 * dv / D;
    s.r1 = (cplx(v - p.omega_c, (p.kappa2 - p.kappa1) / 2) * dv - p.g * p.g) / D;
    s.t21 = -I * (sk1 * sk2 * dv) / D;
    return s;
}

PoleSet poles(const SystemParams& p) {
    const auto o = pole_offsets(p);
    const double w1 = p.omega_c, w2 = 2.0 * p.omega_c;
    return {w1 + o.l1p, w1 + o.l1m, w2 + o.l2p, w2 + o.l2m};
}

cplx gamma(const SystemParams& p, double u1, double u2, double xi) {
    const auto o = pole_offsets(p);
    const double K = p.kappa_total();
    const double sk1 = std::sqrt(p.kappa1);
    const auto a = single_response(p, u1);
    const auto b = single_response(p, u2);
    const double x = xi - 2.0 * p.omega_c;
    const cplx den = (x - o.l2p) * (x - o.l2m);
    if (std::abs(den) < 1e-300) throw Error(Errc::PoleHit, "xi sits on a two-photon pole");
    const cplx num = cplx(x, K) * sk1 * (b.s_q[0] + a.s_q[0]) + 2.0 * p.g * sk1 * (b.s_c[0] + a.s_c[0]);
    return num / den;
}

cplx alpha_coefficient(const SystemParams& p, double v) {
    return (v - p.omega_q) / denominator(p, v);
}

cplx TwoPhotonElement::correlated(double v1) const {
    const double v2 = u1 + u2 - v1;
    const auto a = single_response(params, v1);
    const auto b = single_response(params, v2);
    return (I * params.g / pi) * a.s_q[ports.b1 - 1] * b.s_q[ports.b2 - 1] * gamma_value;
}

TwoPhotonElement two_photon_element(const SystemParams& p, double u1, double u2, OutputPorts ports) {
    require_symmetric(p);
    check_ports(ports);
    const auto a = single_response(p, u1);
    const auto b = single_response(p, u2);
    auto x = [](const SinglePhotonResponse& s, int port) { return port == 1 ? s.r1 : s.t21; };

    // symmetric-port identities: 1 - i alpha kappa = r1, -i alpha kappa = t21
    for (const auto* s : {&a, &b}) {
        const cplx ak = I * alpha_coefficient(p, s->v) * p.kappa1;
        assert(std::abs(1.0 - ak - s->r1) < 1e-9);
        assert(std::abs(-ak - s->t21) < 1e-9);
        (void)ak;
    }

    TwoPhotonElement e;
    e.params = p;
    e.u1 = u1;
    e.u2 = u2;
    e.ports = ports;
    e.direct = x(a, ports.b1) * x(b, ports.b2);
    e.exchange = x(b, ports.b1) * x(a, ports.b2);
    e.gamma_value = gamma(p, u1, u2, u1 + u2);
    return e;
}

HValue h_closed(const SystemParams& p, double u1, double u2, double tau) {
    require_symmetric(p);
    const auto o = pole_offsets(p);
    const double e = (u1 - p.omega_c) + (u2 - p.omega_c);
    const double kappa = p.kappa1;
    const cplx split = o.l1p - o.l1m;
    const cplx mid = e - o.l1p - o.l1m;
    const cplx pre = (I * p.g / pi) * gamma(p, u1, u2, u1 + u2) * (I * p.g * p.g * kappa / std::sqrt(2.0));

    auto F = [&](cplx l) {
        const cplx w = e - 2.0 * l;
        return std::exp(I * w * tau / 2.0) / w;
    };

    HValue out;
    const double scale = std::max(p.kappa_total(), 1e-300);
    cplx quotient;
    if (std::abs(split) < 1e-6 * scale) {
        out.degenerate = true;
        const cplx w = e - (o.l1p + o.l1m);
        quotient = std::exp(I * w * tau / 2.0) * (I * tau / w - 2.0 / (w * w));
    } else {
        quotient = (F(o.l1m) - F(o.l1p)) / split;
    }
    out.value = pre * quotient / mid;
    return out;
}

CorrelationResult correlation(const SystemParams& p, const CorrelationQuery& q) {
    require_symmetric(p);
    check_ports(q.ports);
    for (std::size_t i = 0; i < q.tau_grid.size(); ++i) {
        if (!std::isfinite(q.tau_grid[i])) throw Error(Errc::InvalidArgument, "tau grid must be finite");
        if (i > 0 && q.tau_grid[i] < q.tau_grid[i - 1])
            throw Error(Errc::InvalidArgument, "tau grid must be sorted");
    }
    const auto a = single_response(p, q.u1);
    const auto b = single_response(p, q.u2);
    const cplx c = coefficient(a, b, q.ports);
    const double delta = (q.u1 - q.u2) / 2;
    const double envelope = 1.0 / (std::sqrt(2.0) * pi);

    CorrelationResult out;
    out.background = 2.0 * std::norm(c) * envelope * envelope;
    out.diverged = out.background < background_floor;
    out.g2.reserve(q.tau_grid.size());
    out.G2.reserve(q.tau_grid.size());
    for (double tau : q.tau_grid) {
        const double pt = envelope * std::cos(delta * tau);
        const auto h = h_closed(p, q.u1, q.u2, std::abs(tau));
        out.degenerate = out.degenerate || h.degenerate;
        const double G = 2.0 * std::norm(c * pt + h.value);
        out.G2.push_back(G);
        out.g2.push_back(out.diverged ? std::nan("") : G / out.background);
    }
    return out;
}

CorrelationResult g2_zero(const SystemParams& p, double u, OutputPorts ports) {
    return correlation(p, {u, u, {0.0}, ports});
}

std::vector<SinglePhotonResponse> sweep_single(const SystemParams& p, const std::vector<double>& v_grid,
                                               unsigned threads) {
    return parallel_map(v_grid, [&](double v) { return single_response(p, v); }, threads);
}

std::vector<CorrelationResult> sweep_g2(const SystemParams& p, const std::vector<double>& u_grid,
                                        OutputPorts ports, double tau, unsigned threads) {
    require_symmetric(p);
    return parallel_map(
        u_grid, [&](double u) { return correlation(p, {u, u, {tau}, ports}); }, threads);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

bool good_cavity(const SystemParams& p) {
    return std::abs(p.g) > std::max(p.kappa1, p.kappa2);
}

std::vector<double> default_grid(const SystemParams& p, std::size_t n) {
    const double half = good_cavity(p) ? 3.0 * std::abs(p.g) : 10.0 * std::max(p.kappa1, p.kappa2);
    // offsets first so an odd-sized grid hits omega_c exactly
    auto out = linear_grid(-half, half, n);
    for (auto& v : out) v += p.omega_c;
    return out;
}

}  // namespace ptk
