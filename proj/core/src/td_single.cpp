#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ptk/errors.hpp"
#include "ptk/oracle.hpp"

namespace ptk {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double pulse_offset_sigmas = 8.0;  // pulse centre at 8/sigma after t = 0
// Fourier sums use every 8th step. The sample spacing stays far below pi over
// the fastest rate, and the Gaussian spectrum makes aliasing negligible.
constexpr long dft_stride = 8;

struct Rates {
    double slowest;  // smallest decay rate of a driven mode
    double fastest;  // largest rate in the rotating frame
};

Rates system_rates(const SystemParams& p, double w0, double sigma) {
    const double K = p.kappa_total();
    Eigen::Matrix2cd m;
    m << cplx(0, -(p.omega_q - w0)), cplx(0, -p.g),
         cplx(0, -p.g), cplx(-K / 2, -(p.omega_c - w0));
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m);
    Rates r{1e300, std::max({std::abs(p.omega_q - w0), std::abs(p.omega_c - w0), std::abs(p.g), K, 3.0 * sigma})};
    for (int i = 0; i < 2; ++i) {
        const cplx l = es.eigenvalues()(i);
        r.fastest = std::max(r.fastest, std::abs(l));
        // the qubit mode is never excited when g = 0
        if (p.g == 0.0 && std::abs(l.real()) < 1e-12 * K) continue;
        r.slowest = std::min(r.slowest, -l.real());
    }
    return r;
}

struct Run {
    std::vector<cplx> in, out1, out2;
    double energy_in = 0.0, energy_out = 0.0;
};

Run integrate(const SystemParams& p, const PulseSpec& pulse, long steps, const std::vector<double>& probe) {
    const double w0 = pulse.center_freq;
    const double sigma = pulse.bandwidth;
    const double t0 = pulse_offset_sigmas / sigma;
    const double h = pulse.duration_window / static_cast<double>(steps);
    const double K = p.kappa_total();
    const double sk1 = std::sqrt(p.kappa1), sk2 = std::sqrt(p.kappa2);
    const cplx aq = cplx(0, -(p.omega_q - w0));
    const cplx ac = cplx(-K / 2, -(p.omega_c - w0));
    const cplx ig = cplx(0, -p.g);

    auto drive = [&](double t) {
        const double x = sigma * (t - t0);
        return std::exp(-0.5 * x * x);
    };

    const std::size_t nf = probe.size();
    Run run;
    run.in.assign(nf, 0.0);
    run.out1.assign(nf, 0.0);
    run.out2.assign(nf, 0.0);
    std::vector<cplx> phasor(nf), step_phase(nf);
    for (std::size_t k = 0; k < nf; ++k) step_phase[k] = std::exp(I * ((probe[k] - w0) * h * double(dft_stride)));

    cplx q = 0.0, c = 0.0;
    double cumulative_in = 0.0;
    auto rhs = [&](cplx q_, cplx c_, double s, cplx& dq_, cplx& dc_) {
        dq_ = aq * q_ + ig * c_;
        dc_ = ac * c_ + ig * q_ - I * sk1 * s;
    };

    for (long n = 0; n <= steps; ++n) {
        const double t = n * h;
        const double s = drive(t);
        const cplx o1 = s - I * sk1 * c;
        const cplx o2 = -I * sk2 * c;
        const double w = (n == 0 || n == steps) ? 0.5 * h : h;
        if (n % dft_stride == 0) {
            if (n % (128 * dft_stride) == 0)
                for (std::size_t k = 0; k < nf; ++k) phasor[k] = std::exp(I * ((probe[k] - w0) * t));
            const double wd = h * double(dft_stride);
            for (std::size_t k = 0; k < nf; ++k) {
                run.in[k] += wd * s * phasor[k];
                run.out1[k] += wd * o1 * phasor[k];
                run.out2[k] += wd * o2 * phasor[k];
                phasor[k] *= step_phase[k];
            }
        }
        run.energy_in += w * s * s;
        run.energy_out += w * (std::norm(o1) + std::norm(o2));
        cumulative_in += h * s * s;
        if (n == steps) break;

        cplx k1q, k1c, k2q, k2c, k3q, k3c, k4q, k4c;
        const double sm = drive(t + 0.5 * h), se = drive(t + h);
        rhs(q, c, s, k1q, k1c);
        rhs(q + 0.5 * h * k1q, c + 0.5 * h * k1c, sm, k2q, k2c);
        rhs(q + 0.5 * h * k2q, c + 0.5 * h * k2c, sm, k3q, k3c);
        rhs(q + h * k3q, c + h * k3c, se, k4q, k4c);
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        c += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);

        const double stored = std::norm(q) + std::norm(c);
        if (!std::isfinite(stored) || stored > 1.01 * cumulative_in + 1e-30)
            throw Error(Errc::StepUnstable, "stored energy exceeds injected energy");
    }
    return run;
}

}  // namespace

PulseSpec make_pulse(const SystemParams& p, double center_freq, double bandwidth) {
    if (!(bandwidth > 0.0)) throw Error(Errc::InvalidArgument, "pulse bandwidth must be positive");
    const Rates r = system_rates(p, center_freq, bandwidth);
    if (!(r.slowest > 0.0) || r.slowest > 1e299)
        throw Error(Errc::InvalidArgument, "a driven mode does not decay; time-domain oracle needs kappa > 0");
    PulseSpec s;
    s.center_freq = center_freq;
    s.bandwidth = bandwidth;
    // pulse occupies [0, 16/sigma]; ring-down to amplitude e^-21 afterwards
    s.duration_window = 2.0 * pulse_offset_sigmas / bandwidth + 21.0 / r.slowest;
    const double h_max = 1.0 / (50.0 * r.fastest);
    s.sample_count = static_cast<long>(std::ceil(s.duration_window / h_max));
    return s;
}

TdResult td_single(const SystemParams& p, const PulseSpec& pulse, std::vector<double> probe) {
    if (!(pulse.bandwidth > 0.0)) throw Error(Errc::InvalidArgument, "pulse bandwidth must be positive");
    if (pulse.duration_window < 2.0 * pulse_offset_sigmas / pulse.bandwidth)
        throw Error(Errc::InvalidArgument, "window shorter than the pulse");
    if (pulse.sample_count < 16) throw Error(Errc::InvalidArgument, "too few samples");
    if (probe.empty()) {
        const std::size_t n = 201;
        for (std::size_t k = 0; k < n; ++k)
            probe.push_back(pulse.center_freq + pulse.bandwidth * (-2.0 + 4.0 * k / double(n - 1)));
    }

    const Run coarse = integrate(p, pulse, pulse.sample_count, probe);
    const Run fine = integrate(p, pulse, 2 * pulse.sample_count, probe);

    TdResult out;
    out.freqs = probe;
    out.energy_in = fine.energy_in;
    out.energy_out = fine.energy_out;
    for (std::size_t k = 0; k < probe.size(); ++k) {
        const cplx rc = coarse.out1[k] / coarse.in[k], rf = fine.out1[k] / fine.in[k];
        const cplx tc = coarse.out2[k] / coarse.in[k], tf = fine.out2[k] / fine.in[k];
        out.halving_change = std::max({out.halving_change, std::abs(rf - rc), std::abs(tf - tc)});
        out.r.push_back(rf + (rf - rc) / 15.0);
        out.t.push_back(tf + (tf - tc) / 15.0);
    }
    return out;
}

}  // namespace ptk
