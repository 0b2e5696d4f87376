#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <cmath>
#include <numbers>

#include "ptk/errors.hpp"
#include "ptk/transport.hpp"

namespace ptk {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

using Rule = boost::math::quadrature::gauss<double, 30>;

struct Integrand {
    double e_half;  // (u1 + u2)/2 - omega_c
    double dq;      // omega_q - omega_c
    double K;
    double g2;
    double tau;
    double s;  // Delta = s x
    HTerm term;

    // D(omega_c + delta) in detuned form
    cplx D(double delta) const { return cplx(delta, K / 2) * (delta - dq) - g2; }

    cplx rational(double x) const {
        const double delta = s * x;
        return s / (D(e_half + delta) * D(e_half - delta));
    }

    cplx operator()(double x) const {
        const double delta = s * x;
        const cplx f = 1.0 / (D(e_half + delta) * D(e_half - delta));
        cplx kernel;
        switch (term) {
            case HTerm::both: kernel = 2.0 * std::cos(delta * tau); break;
            case HTerm::forward: kernel = std::exp(I * (delta * tau)); break;
            case HTerm::backward: kernel = std::exp(-I * (delta * tau)); break;
        }
        return s * f * kernel;
    }
};

// Pieces are sized to the pole widths and oscillation period, so a fixed
// Gauss-Legendre rule per piece converges geometrically.
cplx integrate_pieces(const Integrand& f, const std::vector<double>& edges) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) sum += Rule::integrate(f, edges[i], edges[i + 1]);
    return sum;
}

// Piece edges over [-R, R]: uniform pieces of length h across the pole region,
// geometrically growing pieces (capped at `cap`) in the tails.
std::vector<double> build_edges(std::vector<double> breaks, double inner, double h, double R, double cap) {
    std::vector<double> edges;
    for (double x = -inner; x < inner; x += h) edges.push_back(x);
    edges.push_back(inner);
    for (double b : breaks)
        if (std::abs(b) < inner) edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<double> right;
    double x = inner, step = h;
    while (x < R) {
        step = std::min(2.0 * step, cap);
        x = std::min(R, x + step);
        right.push_back(x);
    }
    std::vector<double> out;
    for (auto it = right.rbegin(); it != right.rend(); ++it) out.push_back(-*it);
    out.insert(out.end(), edges.begin(), edges.end());
    out.insert(out.end(), right.begin(), right.end());
    return out;
}

// Oscillatory tails beyond |x| = R with a Fourier-type double-exponential rule.
cplx oscillatory_tails(const Integrand& f, double R) {
    using Cos = boost::math::quadrature::ooura_fourier_cos<double>;
    using Sin = boost::math::quadrature::ooura_fourier_sin<double>;
    thread_local Cos cos_rule(1e-12);
    thread_local Sin sin_rule(1e-12);
    const double a = f.tau * f.s;

    // C = int_0^inf F(side (R + t)) cos(a t) dt, S likewise with sin
    auto transform = [&](double side, cplx& C, cplx& S) {
        auto re = [&](double t) { return f.rational(side * (R + t)).real(); };
        auto im = [&](double t) { return f.rational(side * (R + t)).imag(); };
        C = {cos_rule.integrate(re, a).first, cos_rule.integrate(im, a).first};
        S = {sin_rule.integrate(re, a).first, sin_rule.integrate(im, a).first};
    };
    cplx Cr, Sr, Cl, Sl;
    transform(1.0, Cr, Sr);
    transform(-1.0, Cl, Sl);
    const cplx phase = std::exp(I * (a * R));
    // right tail carries e^{+-i a (R + t)}, left tail e^{-+i a (R + t)}
    const cplx fwd_r = phase * (Cr + I * Sr), bwd_r = std::conj(phase) * (Cr - I * Sr);
    const cplx fwd_l = std::conj(phase) * (Cl - I * Sl), bwd_l = phase * (Cl + I * Sl);
    switch (f.term) {
        case HTerm::forward: return fwd_r + fwd_l;
        case HTerm::backward: return bwd_r + bwd_l;
        case HTerm::both: break;
    }
    return fwd_r + fwd_l + bwd_r + bwd_l;
}

}  // namespace

cplx h_quadrature(const SystemParams& p, double u1, double u2, double tau, const QuadratureOptions& opt) {
    if (!p.symmetric()) throw Error(Errc::AsymmetricPorts, "two-photon closed forms need kappa1 = kappa2");
    if (!std::isfinite(tau)) throw Error(Errc::InvalidArgument, "tau must be finite");
    const double K = p.kappa_total();
    if (!(K > 0.0)) throw Error(Errc::InvalidArgument, "Delta integral needs kappa > 0");
    const double s = std::max({K, std::abs(p.g), std::abs(p.omega_q - p.omega_c), 1.0});
    Integrand f{((u1 - p.omega_c) + (u2 - p.omega_c)) / 2, p.omega_q - p.omega_c, K, p.g * p.g,
                std::abs(tau), s, opt.term};

    // pole positions of the integrand in x, from the quadratic D
    const PoleSet ps = poles(p);
    std::vector<double> breaks{0.0};
    double width = 1.0, reach = 0.0;
    for (cplx l : {ps.lambda1_plus, ps.lambda1_minus}) {
        const cplx off = (f.e_half + p.omega_c - l) / s;
        breaks.push_back(off.real());
        breaks.push_back(-off.real());
        width = std::min(width, std::max(std::abs(off.imag()), 1e-9));
        reach = std::max(reach, std::abs(off));
    }
    const double inner = reach + 20.0 * width;
    const double period = f.tau > 0 ? 2.0 * pi / (f.tau * s) : 1e300;

    auto evaluate = [&](double h) {
        const double cap = std::min(period / 2.0, 1e300);
        double R = 2.0 * inner;
        cplx total = integrate_pieces(f, build_edges(breaks, inner, h, R, cap));
        // past a few periods the rational factor is smooth; hand the rest to the Fourier rule
        if (f.tau > 0 && R > 4.0 * period) return total + oscillatory_tails(f, R);
        // |integrand| <= 2 s / (s (x - reach))^4 outside the poles
        for (int iter = 0; iter < 60; ++iter) {
            const double bound = 4.0 / (3.0 * std::pow(R - reach, 3) * s * s * s);
            if (bound < 1e-11 * std::abs(total)) break;
            const double R2 = 2.0 * R;
            std::vector<double> left, right;
            double x = R;
            right.push_back(x);
            while (x < R2) {
                x = std::min(R2, x + std::min(cap, 0.25 * R));
                right.push_back(x);
            }
            for (auto it = right.rbegin(); it != right.rend(); ++it) left.push_back(-*it);
            total += integrate_pieces(f, left) + integrate_pieces(f, right);
            R = R2;
        }
        return total;
    };

    const double h = std::min(2.0 * width, period / 4.0);
    if (2.0 * inner / h > 1e7) throw Error(Errc::QuadratureNotConverged, "too many pieces for the requested tau");
    const cplx coarse = evaluate(h);
    const cplx fine = evaluate(h / 2.0);
    if (std::abs(fine - coarse) > opt.agree_tol * std::abs(fine))
        throw Error(Errc::QuadratureNotConverged, "Delta integral changed between refinement levels");

    const cplx pre = p.kappa1 * p.g * p.g / (std::sqrt(2.0) * 4.0 * pi) * (I * p.g / pi) * gamma(p, u1, u2, u1 + u2);
    return pre * fine;
}

}  // namespace ptk
