// Acceptance checks. One line per criterion; `--criterion N` runs a single one.
#include <fmt/format.h>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ptk/app/commands.hpp"
#include "ptk/constants.hpp"
#include "ptk/extract.hpp"
#include "ptk/oracle.hpp"
#include "ptk/presets.hpp"
#include "ptk/transport.hpp"

using namespace ptk;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double t_sq(const SystemParams& p, double v) { return std::norm(single_response(p, v).t21); }

// local maxima of a sampled curve, interior points only
std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(i);
    return out;
}

Outcome cavity_frequency() {
    const auto t0 = Clock::now();
    const auto m = cavity_mode(presets::paper_cavity());
    const double ms = ms_since(t0);
    const double f = m.omega_c / two_pi / 1e9;
    const double dev = std::abs(f / 7.55 - 1.0);
    return {dev <= 5e-3 && ms < 1.0, fmt::format("omega_c/2pi = {:.6f} GHz, {:.3f}% from 7.55 GHz, {:.3f} ms", f, 100 * dev, ms)};
}

Outcome good_cavity_transmission() {
    const auto t0 = Clock::now();
    const auto p = presets::good_cavity();
    const auto grid = default_grid(p, 2001);
    const auto res = sweep_single(p, grid, 1);
    std::vector<double> t(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) t[i] = std::norm(res[i].t21);
    const auto peaks = local_maxima(t);
    const double step = grid[1] - grid[0];
    const double kappa = p.kappa1;

    bool ok = peaks.size() == 2;
    std::string detail = fmt::format("{} maxima", peaks.size());
    for (std::size_t k = 0; ok && k < 2; ++k) {
        const double expect = p.omega_c + (k == 0 ? -1 : 1) * p.g;
        const double off = std::abs(grid[peaks[k]] - expect) / step;
        // refine the peak and its half-maximum crossings on the closed form
        auto neg = [&](double v) { return -t_sq(p, v); };
        const auto [vpk, fneg] =
            boost::math::tools::brent_find_minima(neg, grid[peaks[k] - 1], grid[peaks[k] + 1], 52);
        const double half = -fneg / 2;
        auto f = [&](double v) { return t_sq(p, v) - half; };
        auto tol = boost::math::tools::eps_tolerance<double>(50);
        auto cross = [&](double lo, double hi) {
            boost::uintmax_t it = 200;
            auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
            return 0.5 * (a + b);
        };
        const double w = cross(vpk, vpk + 5 * kappa) - cross(vpk - 5 * kappa, vpk);
        const double wdev = std::abs(w / kappa - 1.0);
        ok = ok && off <= 1.0 && wdev <= 0.05;
        detail += fmt::format("; peak {:+.4f} MHz ({:.2f} steps from {:+.2f}), FWHM {:.2f} kHz ({:.2f}% from kappa)",
                              (grid[peaks[k]] - p.omega_c) / two_pi / 1e6, off, (expect - p.omega_c) / two_pi / 1e6,
                              w / two_pi / 1e3, 100 * wdev);
    }
    const double ms = ms_since(t0);
    detail += fmt::format(", {:.1f} ms", ms);
    return {ok && ms < 50.0, detail};
}

Outcome transparency_pin() {
    const auto t0 = Clock::now();
    const auto p = presets::bad_cavity();
    const auto s = single_response(p, p.omega_q);
    const double t = std::norm(s.t21), r = std::norm(s.r1);
    const double ms = ms_since(t0);
    return {t <= 1e-12 && std::abs(r - 1.0) <= 1e-12 && ms < 50.0,
            fmt::format("|t21|^2 = {:.3e}, |r1|^2 - 1 = {:.3e}, {:.3f} ms", t, r - 1.0, ms)};
}

Outcome unitarity() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        SystemParams p;
        p.omega_c = ghz(4.0 + 6.0 * u(rng));
        p.omega_q = p.omega_c + mhz(200.0 * (u(rng) - 0.5));
        p.g = mhz(60.0 * (u(rng) - 0.5));
        p.kappa1 = p.kappa2 = khz(std::pow(10.0, 4.0 * u(rng)));
        const double scale = std::max({std::abs(p.g), p.kappa_total(), std::abs(p.omega_q - p.omega_c)});
        const double v = p.omega_c + 8.0 * scale * (u(rng) - 0.5);
        const auto s = single_response(p, v);
        worst = std::max(worst, std::abs(std::norm(s.r1) + std::norm(s.t21) - 1.0));
    }
    const double ms = ms_since(t0);
    return {worst <= 1e-12 && ms < 1000.0, fmt::format("max ||r|^2+|t|^2-1| = {:.3e} over 1e5 draws, {:.0f} ms", worst, ms)};
}

Outcome contour_integral() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int n = 0;
    for (const auto& p : {presets::good_cavity(), presets::bad_cavity()}) {
        const double K = p.kappa_total();
        const double w = good_cavity(p) ? 2.0 * p.g : 4.0 * K;
        for (int i = 0; i < 20; ++i, ++n) {
            const double u1 = p.omega_c + w * (u(rng) - 0.5);
            const double u2 = p.omega_c + w * (u(rng) - 0.5);
            const double tau = 4.0 * u(rng) / K;
            const auto hc = h_closed(p, u1, u2, tau);
            const auto hq = h_quadrature(p, u1, u2, tau);
            worst = std::max(worst, std::abs(hc.value - hq) / std::abs(hq));
        }
    }
    const double ms = ms_since(t0);
    return {worst <= 1e-8 && ms < 5000.0, fmt::format("max rel |H_closed - H_quad| = {:.3e} at {} points, {:.0f} ms", worst, n, ms)};
}

struct G2Scan {
    std::vector<double> grid;
    std::vector<double> g2;  // -1 where diverged
    double step = 0.0;
};

G2Scan g2_scan(const SystemParams& p, std::size_t n) {
    G2Scan s;
    s.grid = default_grid(p, n);
    const auto res = sweep_g2(p, s.grid, {2, 2}, 0.0, 1);
    for (const auto& r : res) s.g2.push_back(r.diverged ? -1.0 : r.g2[0]);
    s.step = s.grid[1] - s.grid[0];
    return s;
}

// grid position of the g2_22 local maximum nearest `target`
double nearest_maximum(const G2Scan& s, double target) {
    double best = 0.0, dist = 1e300;
    for (std::size_t i : local_maxima(s.g2))
        if (std::abs(s.grid[i] - target) < dist) {
            dist = std::abs(s.grid[i] - target);
            best = s.grid[i];
        }
    return best;
}

Outcome g2_sweeps() {
    bool ok = true;
    std::string detail;
    double worst_ms = 0.0;
    auto timed_scan = [&](const SystemParams& p, std::size_t n) {
        const auto t0 = Clock::now();
        auto s = g2_scan(p, n);
        worst_ms = std::max(worst_ms, ms_since(t0));
        return s;
    };

    const auto good = presets::good_cavity();
    for (double s : {-1.0, 1.0}) {
        const double g2 = g2_zero(good, good.omega_c + s * good.g, {2, 2}).g2[0];
        ok = ok && g2 < 0.1;
        detail += fmt::format("good g2_22(wc{}g) = {:.4g}; ", s < 0 ? "-" : "+", g2);
    }
    {
        const auto coarse = timed_scan(good, 2001), fine = timed_scan(good, 4001);
        const auto ps = poles(good);
        for (cplx l : {ps.lambda2_minus, ps.lambda2_plus}) {
            const double target = l.real() / 2;
            const double g2 = g2_zero(good, target, {2, 2}).g2[0];
            const double x1 = nearest_maximum(coarse, target), x2 = nearest_maximum(fine, target);
            const bool placed = std::abs(x1 - target) <= coarse.step;
            const bool stable = std::abs(x1 - x2) <= coarse.step;
            ok = ok && g2 > 1.0 && placed && stable;
            const double label = good.omega_c + (l.real() > 2 * good.omega_c ? 1 : -1) * std::sqrt(2.0) * good.g;
            detail += fmt::format(
                "good resonance Re(lambda2)/2 = {:+.4f} MHz: g2_22 = {:.4g}, sweep max {:+.4f} MHz, refined {:+.4f} MHz, "
                "label wc+-sqrt2 g = {:+.4f} MHz; ",
                (target - good.omega_c) / two_pi / 1e6, g2, (x1 - good.omega_c) / two_pi / 1e6,
                (x2 - good.omega_c) / two_pi / 1e6, (label - good.omega_c) / two_pi / 1e6);
        }
    }
    {
        // overdamped: no separate peak; g2 climbs into the divergence at omega_q
        const auto bad = presets::bad_cavity();
        const auto coarse = timed_scan(bad, 2001), fine = timed_scan(bad, 4001);
        auto divergence = [&](const G2Scan& s) {
            for (std::size_t i = 0; i < s.g2.size(); ++i)
                if (s.g2[i] < 0) return s.grid[i];
            return 0.0;
        };
        const double d1 = divergence(coarse), d2 = divergence(fine);
        const bool stable = std::abs(d1 - bad.omega_q) <= coarse.step && std::abs(d1 - d2) <= coarse.step;
        const auto ps = poles(bad);
        double g2min = 1e300;
        for (cplx l : {ps.lambda2_minus, ps.lambda2_plus}) g2min = std::min(g2min, g2_zero(bad, l.real() / 2, {2, 2}).g2[0]);
        ok = ok && g2min > 1.0 && stable;
        detail += fmt::format("bad: g2_22 at Re(lambda2)/2 = +-{:.2f} kHz is {:.4g}, divergence at {:+.3f} kHz (refined {:+.3f}), "
                              "label wc+-sqrt2 g = +-{:.2f} kHz; ",
                              (ps.lambda2_plus.real() / 2 - bad.omega_c) / two_pi / 1e3, g2min,
                              (d1 - bad.omega_c) / two_pi / 1e3, (d2 - bad.omega_c) / two_pi / 1e3,
                              std::sqrt(2.0) * bad.g / two_pi / 1e3);
    }
    detail += fmt::format("slowest sweep {:.0f} ms", worst_ms);
    return {ok && worst_ms < 1000.0, detail};
}

Outcome td_oracle() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& p : {presets::good_cavity(), presets::bad_cavity()}) {
        const double half = good_cavity(p) ? 1.5 * std::abs(p.g) : 3.0 * p.kappa_total();
        const auto td = td_single(p, make_pulse(p, p.omega_c, half / 2));
        for (std::size_t i = 0; i < td.freqs.size(); ++i) {
            const auto s = single_response(p, td.freqs[i]);
            worst = std::max(worst, std::abs(td.r[i] - s.r1) / std::max(std::abs(s.r1), 1.0));
            worst = std::max(worst, std::abs(td.t[i] - s.t21) / std::max(std::abs(s.t21), 1.0));
        }
    }
    const double ms = ms_since(t0);
    return {worst <= 1e-6 && ms < 10000.0, fmt::format("max rel error {:.3e} over both bands, {:.0f} ms", worst, ms)};
}

Outcome lindblad_oracle() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    struct Regime {
        SystemParams p;
        std::vector<double> x;
        double w;
    };
    const auto good = presets::good_cavity(), bad = presets::bad_cavity();
    for (const auto& r : {Regime{good, {-1.2, -1.0, -0.5, 0.35, 0.6, 1.0, 1.5}, good.g},
                          Regime{bad, {-3.0, -1.0, -0.5, 0.25, 0.5, 1.0, 2.0}, bad.kappa_total()}}) {
        int compared = 0;
        double worst = 0.0, worst_halving = 0.0;
        for (double x : r.x) {
            const double u = r.p.omega_c + x * r.w;
            const auto a = g2_zero(r.p, u, {2, 2});
            if (a.diverged) continue;
            LindbladConfig cfg;
            cfg.detuning = u - r.p.omega_c;
            const auto l = lindblad_g2(r.p, cfg, {2, 2}, {0.0});
            cfg.drive_amp = l.drive_amp / 2;
            const auto h = lindblad_g2(r.p, cfg, {2, 2}, {0.0});
            worst = std::max(worst, std::abs(l.g2[0] / a.g2[0] - 1.0));
            worst_halving = std::max(worst_halving, std::abs(h.g2[0] / l.g2[0] - 1.0));
            ++compared;
        }
        ok = ok && compared >= 5 && worst <= 0.05 && worst_halving < 5e-3;
        detail += fmt::format("{}: {} detunings, max rel {:.2e}, halving {:.2e}; ", good_cavity(r.p) ? "good" : "bad",
                              compared, worst, worst_halving);
    }
    const double ms = ms_since(t0);
    detail += fmt::format("{:.0f} ms", ms);
    return {ok && ms < 30000.0, detail};
}

Outcome limits() {
    bool ok = true;
    double h0 = 0.0, g2dev = 0.0, flip = 0.0, tail = 0.0;
    const std::vector<OutputPorts> ports{{1, 1}, {2, 2}, {2, 1}};
    for (const auto& base : {presets::good_cavity(), presets::bad_cavity()}) {
        const double K = base.kappa_total();
        const double w = good_cavity(base) ? base.g : K;
        const std::vector<double> xs{-1.3, -0.6, -0.2, 0.15, 0.45, 1.1};
        auto zero = base;
        zero.g = 0.0;
        auto neg = base;
        neg.g = -base.g;
        for (double x : xs) {
            const double u = base.omega_c + x * w;
            h0 = std::max(h0, std::abs(h_closed(zero, u, u + 0.1 * w, 1.0 / K).value));
            for (auto b : ports) {
                const auto z = correlation(zero, {u, u, {0.0, 0.5 / K, 5.0 / K}, b});
                if (!z.diverged)
                    for (double g : z.g2) g2dev = std::max(g2dev, std::abs(g - 1.0));
                const auto a = single_response(base, u), c = single_response(neg, u);
                flip = std::max({flip, std::abs(std::abs(a.r1) - std::abs(c.r1)), std::abs(std::abs(a.t21) - std::abs(c.t21))});
                const auto ga = g2_zero(base, u, b), gc = g2_zero(neg, u, b);
                if (!ga.diverged) flip = std::max(flip, std::abs(ga.g2[0] - gc.g2[0]) / std::max(1.0, ga.g2[0]));
                const auto far = correlation(base, {u, u, {50.0 / base.kappa1}, b});
                if (!far.diverged) tail = std::max(tail, std::abs(far.g2[0] - 1.0));
            }
        }
    }
    ok = h0 == 0.0 && g2dev <= 1e-9 && flip <= 1e-12 && tail <= 1e-6;
    return {ok, fmt::format("g=0: max|H| = {:.1e}, max|g2-1| = {:.1e}; g->-g: max change {:.1e}; tau=50/kappa: max|g2-1| = {:.1e}",
                            h0, g2dev, flip, tail)};
}

Outcome extraction_targets() {
    const auto t0 = Clock::now();
    const auto tr = presets::paper_transmon();
    const double ec = tr.charging_energy();
    const double ec_ref = PhysicalConstants::e_charge * PhysicalConstants::e_charge / (2 * 50.34e-15);
    const double ec_dev = std::abs(ec / ec_ref - 1.0);

    const double target = ghz(presets::paper_freq_ghz);
    TransmonSpec ts = tr;
    ts.ej = solve_ej(ec, target, ts.charge_cutoff);
    const double wq_dev = std::abs(transmon_spectrum(ts).omega_q / target - 1.0);

    const auto r = app::resolve(app::preset_config("good", true));
    const auto& rep = *r.report;
    const double kappa = rep.find("kappa1")->value, g = std::abs(rep.find("g")->value);
    const double k_ratio = kappa / presets::paper_kappa_khz, g_ratio = g / presets::paper_g_good_mhz;
    const bool k_ok = k_ratio >= 0.5 && k_ratio <= 2.0;
    const bool g_ok = g_ratio >= 0.2 && g_ratio <= 5.0;
    const double ms = ms_since(t0);
    const bool ok = ec_dev <= 1e-3 && wq_dev <= 1e-9 && k_ok && g_ok && ms < 5000.0;
    return {ok, fmt::format("E_C/h = {:.6f} GHz (dev {:.1e}); omega_q/2pi dev {:.1e}; kappa/2pi = {:.3f} kHz, ratio {:.4f} [{}]; "
                            "g/2pi = {:.3f} MHz, ratio {:.3f} [{}]; {:.0f} ms",
                            ec / PhysicalConstants::h_planck / 1e9, ec_dev, wq_dev, kappa, k_ratio, k_ok ? "ok" : "outside x2",
                            g, g_ratio, g_ok ? "ok" : "outside x5", ms)};
}

std::string cli_output(const std::vector<std::string>& args, const char* threads) {
    setenv("PTK_THREADS", threads, 1);
    std::vector<const char*> argv{"ptk"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = app::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> runs{
        {"sweep", "--regime", "good"},
        {"sweep", "--regime", "bad"},
        {"sweep", "--regime", "good", "--mode", "g2"},
        {"sweep", "--regime", "bad", "--mode", "g2", "--grid", "4001"},
    };
    bool ok = true;
    std::size_t bytes = 0;
    for (const auto& args : runs) {
        const auto a = cli_output(args, "1");
        const auto b = cli_output(args, "8");
        const auto c = cli_output(args, "8");
        const auto d = cli_output(args, "1");
        ok = ok && a.rfind("0\n", 0) == 0 && a == b && b == c && c == d;
        bytes += a.size();
    }
    unsetenv("PTK_THREADS");
    return {ok, fmt::format("{} sweeps x (1, 8, 8, 1 threads), {} bytes each pass, {}", runs.size(), bytes,
                            ok ? "identical" : "MISMATCH")};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
    {"cavity frequency", cavity_frequency},
    {"good-cavity transmission peaks", good_cavity_transmission},
    {"bad-cavity transparency pin", transparency_pin},
    {"unitarity property", unitarity},
    {"contour integral", contour_integral},
    {"g2(0) sweeps", g2_sweeps},
    {"time-domain oracle", td_oracle},
    {"weak-drive master-equation oracle", lindblad_oracle},
    {"limit suite", limits},
    {"parameter extraction targets", extraction_targets},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
        else {
            fmt::print(stderr, "usage: {} [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        fmt::print(stderr, "criterion must be in 1..{}\n", criteria.size());
        return 2;
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        fmt::print("criterion {:>2} {} {}: {}\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
