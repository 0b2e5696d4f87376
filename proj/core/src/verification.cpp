#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "ptk/constants.hpp"
#include "ptk/errors.hpp"
#include "ptk/oracle.hpp"
#include "ptk/parallel.hpp"

namespace ptk {

namespace {

using Clock = std::chrono::steady_clock;
using Reports = std::vector<OracleReport>;

OracleReport make(std::string name, double analytic, double oracle, double err, double tol, double secs,
                  std::string note = {}) {
    OracleReport r;
    r.check_name = std::move(name);
    r.analytic_value = analytic;
    r.oracle_value = oracle;
    r.rel_error = err;
    r.tolerance = tol;
    r.pass = err <= tol;
    r.runtime = secs;
    r.note = std::move(note);
    return r;
}

OracleReport skip(std::string name, std::string why) {
    OracleReport r;
    r.check_name = std::move(name);
    r.skipped = true;
    r.pass = true;
    r.note = std::move(why);
    return r;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_ports(OutputPorts b) { return std::to_string(b.b1) + std::to_string(b.b2); }

Reports pole_checks(const SystemParams& p) {
    const auto t0 = Clock::now();
    const PoleSet ps = poles(p);
    const double K = p.kappa_total();
    Reports out;
    const cplx s1 = ps.lambda1_plus + ps.lambda1_minus;
    const cplx e1(p.omega_q + p.omega_c, -K / 2);
    const cplx s2 = ps.lambda2_plus + ps.lambda2_minus;
    const cplx e2(p.omega_q + 3 * p.omega_c, -1.5 * K);
    const double secs = seconds_since(t0);
    out.push_back(make("pole_vieta_1", std::abs(e1), std::abs(s1), std::abs(s1 - e1) / std::abs(e1), 1e-12, secs));
    out.push_back(make("pole_vieta_2", std::abs(e2), std::abs(s2), std::abs(s2 - e2) / std::abs(e2), 1e-12, secs));
    for (auto [name, l] : {std::pair{"pole_root_1_plus", ps.lambda1_plus}, std::pair{"pole_root_1_minus", ps.lambda1_minus}}) {
        const cplx d = cplx(l - p.omega_c + cplx(0, K / 2)) * (l - p.omega_q) - p.g * p.g;
        out.push_back(make(name, 0.0, std::abs(d), std::abs(d) / std::norm(l), 1e-9, secs));
    }
    for (auto [name, l] : {std::pair{"pole_root_2_plus", ps.lambda2_plus}, std::pair{"pole_root_2_minus", ps.lambda2_minus}}) {
        // (xi - lambda2+)(xi - lambda2-) expanded from the sum and product of the roots
        const cplx c2(p.omega_q + 3 * p.omega_c, -1.5 * K);
        const cplx h = cplx(p.omega_q - p.omega_c, K / 2) / 2.0;
        const cplx prod = (c2 / 2.0) * (c2 / 2.0) - h * h - 2.0 * p.g * p.g;
        const cplx q = l * l - c2 * l + prod;
        out.push_back(make(name, 0.0, std::abs(q), std::abs(q) / std::norm(l), 1e-9, secs));
    }
    return out;
}

Reports unitarity_check(const SystemParams& p) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double v : default_grid(p, 2001)) {
        const auto s = single_response(p, v);
        worst = std::max(worst, std::abs(std::norm(s.r1) + std::norm(s.t21) - 1.0));
    }
    return {make("unitarity_scan", 1.0, 1.0 + worst, worst, 1e-12, seconds_since(t0))};
}

Reports td_checks(const SystemParams& p) {
    const auto t0 = Clock::now();
    const auto grid = default_grid(p, 2);
    const double half = (grid[1] - grid[0]) / 2;
    const auto pulse = make_pulse(p, p.omega_c, half / 2);
    const auto td = td_single(p, pulse);
    double er = 0.0, et = 0.0, ar = 0.0, at = 0.0, orr = 0.0, ot = 0.0;
    for (std::size_t k = 0; k < td.freqs.size(); ++k) {
        const auto s = single_response(p, td.freqs[k]);
        const double dr = std::abs(td.r[k] - s.r1) / std::max(std::abs(s.r1), 1.0);
        const double dt = std::abs(td.t[k] - s.t21) / std::max(std::abs(s.t21), 1.0);
        if (dr > er) { er = dr; ar = std::abs(s.r1); orr = std::abs(td.r[k]); }
        if (dt > et) { et = dt; at = std::abs(s.t21); ot = std::abs(td.t[k]); }
    }
    const double secs = seconds_since(t0);
    const double de = std::abs(td.energy_out - td.energy_in) / td.energy_in;
    return {make("td_single_r1", ar, orr, er, 1e-6, secs),
            make("td_single_t21", at, ot, et, 1e-6, secs),
            make("td_energy_balance", td.energy_in, td.energy_out, de, 1e-8, secs),
            make("td_step_halving", 0.0, td.halving_change, td.halving_change, 1e-5, secs,
                 "max change between step h and h/2 before extrapolation")};
}

std::vector<double> probe_detunings(const SystemParams& p) {
    if (good_cavity(p)) {
        const double g = std::abs(p.g);
        return {-1.2 * g, -g, -g / std::numbers::sqrt2, -0.5 * g, 0.35 * g, 0.6 * g, g, 1.5 * g};
    }
    const double k = std::max(p.kappa1, p.kappa2);
    return {-3 * k, -k, -0.5 * k, 0.25 * k, 0.5 * k, k, 2 * k};
}

Reports h_checks(const SystemParams& p) {
    if (!p.symmetric()) return {skip("h_closed_vs_quadrature", "AsymmetricPorts: expected skip")};
    if (!(p.kappa_total() > 0.0)) return {skip("h_closed_vs_quadrature", "no port loss")};
    Reports out;
    const double K = p.kappa_total();
    const auto det = probe_detunings(p);
    for (std::size_t i = 0; i < det.size(); ++i) {
        const double tau = (i % 3) * 1.0 / K;
        const double u = p.omega_c + det[i];
        const auto t0 = Clock::now();
        const cplx a = h_closed(p, u, u, tau).value;
        cplx q;
        try {
            q = h_quadrature(p, u, u, tau);
        } catch (const Error& e) {
            out.push_back(make("h_closed_vs_quadrature_" + std::to_string(i), std::abs(a), 0.0, 1.0, 1e-8,
                               seconds_since(t0), e.what()));
            continue;
        }
        out.push_back(make("h_closed_vs_quadrature_" + std::to_string(i), std::abs(a), std::abs(q),
                           std::abs(a - q) / std::abs(q), 1e-8, seconds_since(t0)));
    }
    return out;
}

Reports lindblad_checks(const SystemParams& p) {
    if (!p.symmetric()) return {skip("lindblad_g2", "AsymmetricPorts: expected skip")};
    if (!(p.kappa_total() > 0.0)) return {skip("lindblad_g2", "no port loss")};
    Reports out;
    int compared = 0;
    for (double d : probe_detunings(p)) {
        const double u = p.omega_c + d;
        const auto s = single_response(p, u);
        for (OutputPorts b : {OutputPorts{2, 2}, OutputPorts{1, 1}, OutputPorts{2, 1}}) {
            const std::string name = "lindblad_g2_" + fmt_ports(b) + "_det" + std::to_string(d / two_pi / 1e6) + "MHz";
            const cplx c = b.b1 != b.b2 ? 0.5 * (s.r1 * s.t21 + s.t21 * s.r1)
                                        : (b.b1 == 1 ? s.r1 * s.r1 : s.t21 * s.t21);
            if (std::abs(c) < 1e-3) {
                out.push_back(skip(name, "near-divergent background"));
                continue;
            }
            const auto t0 = Clock::now();
            const double analytic = g2_zero(p, u, b).g2[0];
            LindbladConfig cfg;
            cfg.detuning = d;
            const auto lr = lindblad_g2(p, cfg, b, {0.0});
            out.push_back(make(name, analytic, lr.g2[0], std::abs(lr.g2[0] - analytic) / analytic, 0.05,
                               seconds_since(t0)));
            if (b.b1 == 2 && b.b2 == 2) {
                ++compared;
                LindbladConfig half = cfg;
                half.drive_amp = lr.drive_amp / 2;
                half.check_cutoff = false;
                const auto lh = lindblad_g2(p, half, b, {0.0});
                out.push_back(make(name + "_drive_halving", lr.g2[0], lh.g2[0],
                                   std::abs(lh.g2[0] - lr.g2[0]) / std::abs(lr.g2[0]), 0.005, seconds_since(t0)));
            }
        }
    }
    out.push_back(make("lindblad_detunings_compared", 5.0, compared, compared >= 5 ? 0.0 : 1.0, 0.0, 0.0,
                       "at least five (2,2) detunings"));
    return out;
}

}  // namespace

std::vector<OracleReport> run_verification(const SystemParams& p, unsigned threads) {
    p.validate();
    const std::vector<std::function<Reports(const SystemParams&)>> suite{pole_checks, unitarity_check, td_checks,
                                                                          h_checks, lindblad_checks};
    auto run = [&](const std::function<Reports(const SystemParams&)>& check) -> Reports {
        try {
            return check(p);
        } catch (const std::exception& e) {
            OracleReport r;
            r.check_name = "suite_error";
            r.note = e.what();
            r.rel_error = 1.0;
            return {r};
        }
    };
    const auto parts = parallel_map(suite, run, threads);
    std::vector<OracleReport> out;
    for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

}  // namespace ptk
