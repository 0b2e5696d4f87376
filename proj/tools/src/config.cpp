#include "ptk/app/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "ptk/constants.hpp"
#include "ptk/presets.hpp"

namespace ptk::app {

namespace {

enum class Dim { frequency, energy, length, capacitance, angle, time };

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double unit_scale(Dim dim, const std::string& unit) {
    using K = PhysicalConstants;
    const std::map<std::string, double> freq{{"GHz", 1e9}, {"MHz", 1e6}, {"kHz", 1e3}, {"Hz", 1.0}};
    switch (dim) {
        case Dim::frequency:
            if (auto it = freq.find(unit); it != freq.end()) return two_pi * it->second;
            break;
        case Dim::energy:
            if (auto it = freq.find(unit); it != freq.end()) return K::h_planck * it->second;
            if (unit == "J") return 1.0;
            break;
        case Dim::length:
            if (unit == "mm") return 1e-3;
            if (unit == "um") return 1e-6;
            if (unit == "m") return 1.0;
            break;
        case Dim::capacitance:
            if (unit == "fF") return 1e-15;
            if (unit == "pF") return 1e-12;
            if (unit == "F") return 1.0;
            break;
        case Dim::angle:
            if (unit == "deg") return 1.0;
            break;
        case Dim::time:
            if (unit == "ns") return 1e-9;
            if (unit == "us") return 1e-6;
            if (unit == "s") return 1.0;
            break;
    }
    return 0.0;
}

double to_number(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ValidationError(field, "expected a finite number, got '" + t + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

// Reads keys of the form base_<unit> from one section.
class Reader {
public:
    Reader(Section& sec, std::string name) : sec_(sec), name_(std::move(name)) {}

    std::optional<double> quantity(const std::string& base, Dim dim) {
        auto hit = find_dimensioned(base);
        if (!hit) return std::nullopt;
        auto& [key, unit, entry] = *hit;
        const double scale = unit_scale(dim, unit);
        if (scale == 0.0) throw ValidationError(field(key), "unsupported unit '" + unit + "'");
        entry->used = true;
        return to_number(field(key), entry->value) * scale;
    }

    std::optional<std::vector<double>> quantity_list(const std::string& base, Dim dim) {
        auto hit = find_dimensioned(base);
        if (!hit) return std::nullopt;
        auto& [key, unit, entry] = *hit;
        const double scale = unit_scale(dim, unit);
        if (scale == 0.0) throw ValidationError(field(key), "unsupported unit '" + unit + "'");
        entry->used = true;
        std::vector<double> out;
        for (const auto& item : split_list(entry->value)) out.push_back(to_number(field(key), item) * scale);
        return out;
    }

    std::optional<std::string> text(const std::string& key) {
        auto it = sec_.find(key);
        if (it == sec_.end()) return std::nullopt;
        it->second.used = true;
        return trim(it->second.value);
    }

    std::optional<double> number(const std::string& key) {
        auto t = text(key);
        if (!t) return std::nullopt;
        return to_number(field(key), *t);
    }

    double require(const std::string& base, Dim dim) {
        auto v = quantity(base, dim);
        if (!v) throw ValidationError(field(base), "required field missing (with unit suffix)");
        return *v;
    }

    void finish() {
        for (auto& [key, entry] : sec_)
            if (!entry.used) throw ValidationError(field(key), "unknown key");
    }

    std::string field(const std::string& key) const { return name_ + "." + key; }

private:
    std::optional<std::tuple<std::string, std::string, Entry*>> find_dimensioned(const std::string& base) {
        if (sec_.count(base)) throw ValidationError(field(base), "unit suffix required (e.g. " + base + "_GHz)");
        std::optional<std::tuple<std::string, std::string, Entry*>> hit;
        for (auto& [key, entry] : sec_) {
            if (key.size() <= base.size() + 1 || key.compare(0, base.size() + 1, base + "_") != 0) continue;
            const std::string unit = key.substr(base.size() + 1);
            if (unit.find('_') != std::string::npos) continue;
            if (hit) throw ValidationError(field(base), "given more than once with different units");
            hit.emplace(key, unit, &entry);
        }
        return hit;
    }

    Section& sec_;
    std::string name_;
};

bool parse_bool(const std::string& field, const std::string& v) {
    const auto l = lower(v);
    if (l == "true" || l == "yes" || l == "1") return true;
    if (l == "false" || l == "no" || l == "0") return false;
    throw ValidationError(field, "expected true or false");
}

SystemParams read_params(Section& sec) {
    Reader r(sec, "params");
    SystemParams p;
    p.omega_c = r.require("omega_c", Dim::frequency);
    p.omega_q = r.require("omega_q", Dim::frequency);
    p.g = r.require("g", Dim::frequency);
    const auto k = r.quantity("kappa", Dim::frequency);
    const auto k1 = r.quantity("kappa1", Dim::frequency);
    const auto k2 = r.quantity("kappa2", Dim::frequency);
    if (k && (k1 || k2)) throw ValidationError("params.kappa", "give kappa or kappa1/kappa2, not both");
    if (k) {
        p.kappa1 = p.kappa2 = *k;
    } else {
        if (!k1 || !k2) throw ValidationError("params.kappa", "required field missing (kappa or kappa1 + kappa2)");
        p.kappa1 = *k1;
        p.kappa2 = *k2;
    }
    r.finish();
    if (p.omega_c <= 0) throw ValidationError("params.omega_c", "must be positive");
    if (p.omega_q <= 0) throw ValidationError("params.omega_q", "must be positive");
    if (p.kappa1 < 0 || p.kappa2 < 0) throw ValidationError("params.kappa", "must be non-negative");
    return p;
}

DeviceSection read_device(Section& sec) {
    Reader r(sec, "device");
    DeviceSection d;
    d.cavity.a = r.require("cavity_a", Dim::length);
    d.cavity.b = r.require("cavity_b", Dim::length);
    d.cavity.d = r.require("cavity_d", Dim::length);

    d.coax.r_in = r.require("coax_r_in", Dim::length);
    d.coax.r_out = r.require("coax_r_out", Dim::length);
    d.coax.eps_r = r.number("coax_eps_r").value_or(1.0);
    auto z = r.quantity_list("coax_z_offsets", Dim::length);
    if (!z) throw ValidationError("device.coax_z_offsets", "required field missing (with unit suffix)");
    if (z->size() != 2) throw ValidationError("device.coax_z_offsets", "exactly two apertures expected");
    d.coax.z_offsets = *z;
    d.coax.x_offset = r.quantity("coax_x", Dim::length).value_or(0.0);
    if (auto face = r.text("coax_face")) {
        if (*face == "top") d.coax.face = ApertureFace::top;
        else if (*face == "bottom") d.coax.face = ApertureFace::bottom;
        else if (*face == "alternating") d.coax.face = ApertureFace::alternating;
        else throw ValidationError("device.coax_face", "expected top, bottom or alternating");
    }

    auto cap = r.quantity("transmon_capacitance", Dim::capacitance);
    auto ec = r.quantity("transmon_ec", Dim::energy);
    if (cap.has_value() == ec.has_value())
        throw ValidationError("device.transmon_capacitance", "give exactly one of transmon_capacitance or transmon_ec");
    d.transmon.capacitance = cap;
    d.transmon.ec = ec;
    d.transmon.ej = r.quantity("transmon_ej", Dim::energy).value_or(0.0);
    d.transmon_target = r.quantity("transmon_target", Dim::frequency);
    if (d.transmon.ej > 0 && d.transmon_target)
        throw ValidationError("device.transmon_target", "give transmon_ej or transmon_target, not both");
    if (auto n = r.number("transmon_charge_cutoff")) {
        if (*n != std::floor(*n) || *n < 10)
            throw ValidationError("device.transmon_charge_cutoff", "integer >= 10 expected");
        d.transmon.charge_cutoff = static_cast<int>(*n);
    }
    d.transmon.offset_charge = r.number("transmon_offset_charge").value_or(0.0);

    d.dipole.length = r.require("dipole_length", Dim::length);
    if (auto pos = r.quantity_list("dipole_position", Dim::length)) {
        if (pos->size() != 3) throw ValidationError("device.dipole_position", "three coordinates expected");
        d.dipole.position = {(*pos)[0], (*pos)[1], (*pos)[2]};
    }
    d.dipole.tilt_deg = r.quantity("dipole_tilt", Dim::angle).value_or(0.0);
    if (auto m = r.text("dipole_length_model")) {
        if (*m == "half_length") d.dipole.effective_length_model = EffectiveLength::half_length;
        else if (*m == "sinusoidal") d.dipole.effective_length_model = EffectiveLength::sinusoidal;
        else throw ValidationError("device.dipole_length_model", "expected half_length or sinusoidal");
    }
    d.reference_g = r.quantity("reference_g", Dim::frequency);
    d.reference_kappa = r.quantity("reference_kappa", Dim::frequency);
    d.reference_omega = r.quantity("reference_omega", Dim::frequency);
    r.finish();
    return d;
}

SweepSection read_sweep(Section& sec) {
    Reader r(sec, "sweep");
    SweepSection s;
    if (auto m = r.text("mode")) {
        if (*m == "single") s.mode = SweepMode::single;
        else if (*m == "g2") s.mode = SweepMode::g2;
        else throw ValidationError("sweep.mode", "expected single or g2");
    }
    if (auto n = r.number("points")) {
        if (*n != std::floor(*n) || *n < 2 || *n > 1e7) throw ValidationError("sweep.points", "integer in [2, 1e7] expected");
        s.points = static_cast<std::size_t>(*n);
    }
    s.detuning_min = r.quantity("detuning_min", Dim::frequency);
    s.detuning_max = r.quantity("detuning_max", Dim::frequency);
    if (s.detuning_min.has_value() != s.detuning_max.has_value())
        throw ValidationError("sweep.detuning_min", "give both detuning_min and detuning_max");
    if (s.detuning_min && !(*s.detuning_min < *s.detuning_max))
        throw ValidationError("sweep.detuning_max", "must exceed detuning_min");
    s.tau = r.quantity("tau", Dim::time).value_or(0.0);
    if (s.tau < 0) throw ValidationError("sweep.tau", "must be non-negative");
    r.finish();
    return s;
}

OutputSection read_output(Section& sec) {
    Reader r(sec, "output");
    OutputSection o;
    o.csv = r.text("csv").value_or("");
    o.svg = r.text("svg").value_or("");
    if (auto l = r.text("log_scale")) o.log_scale = parse_bool("output.log_scale", *l);
    r.finish();
    return o;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    const std::set<std::string> known{"device", "params", "sweep", "output"};
    std::map<std::string, Section> sections;
    std::string current;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError(line, "unterminated section header");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (!known.count(name)) throw ParseError(line, "unknown section [" + name + "]");
            if (sections.count(name)) throw ParseError(line, "duplicate section [" + name + "]");
            sections[name];
            current = name;
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected key = value");
        if (current.empty()) throw ParseError(line, "key outside of any section");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) throw ParseError(line, "empty key");
        if (key.find_first_of(" \t") != std::string::npos) throw ParseError(line, "whitespace in key");
        auto& sec = sections[current];
        if (sec.count(key)) throw ParseError(line, "duplicate key '" + key + "'");
        sec[key] = Entry{trim(s.substr(eq + 1)), line, false};
    }
    if (sections.empty()) throw ParseError(line, "no sections found");

    const bool has_device = sections.count("device") > 0, has_params = sections.count("params") > 0;
    if (has_device && has_params) throw ValidationError("device/params", "give exactly one of [device] or [params]");
    if (!has_device && !has_params) throw ValidationError("device/params", "one of [device] or [params] is required");

    RunConfig cfg;
    if (has_params) cfg.params = read_params(sections["params"]);
    if (has_device) cfg.device = read_device(sections["device"]);
    if (sections.count("sweep")) cfg.sweep = read_sweep(sections["sweep"]);
    if (sections.count("output")) cfg.output = read_output(sections["output"]);
    return cfg;
}

RunConfig preset_config(const std::string& regime, bool with_device) {
    RunConfig cfg;
    if (regime != "good" && regime != "bad") throw ValidationError("regime", "expected good or bad");
    cfg.label = regime;
    if (with_device) {
        DeviceSection d;
        d.cavity = presets::paper_cavity();
        d.coax = presets::paper_coax();
        d.transmon = presets::paper_transmon();
        d.dipole = regime == "good" ? presets::good_dipole() : presets::bad_dipole();
        d.reference_g = regime == "good" ? mhz(presets::paper_g_good_mhz) : khz(presets::paper_g_bad_khz);
        d.reference_kappa = khz(presets::paper_kappa_khz);
        d.reference_omega = ghz(presets::paper_freq_ghz);
        cfg.device = d;
    } else {
        cfg.params = regime == "good" ? presets::good_cavity() : presets::bad_cavity();
    }
    return cfg;
}

std::string canonical(const RunConfig& cfg) {
    std::string out;
    auto put = [&](const std::string& k, double v) { out += fmt::format("{}={:.17g}\n", k, v); };
    if (cfg.params) {
        const auto& p = *cfg.params;
        put("params.omega_c", p.omega_c);
        put("params.omega_q", p.omega_q);
        put("params.g", p.g);
        put("params.kappa1", p.kappa1);
        put("params.kappa2", p.kappa2);
    }
    if (cfg.device) {
        const auto& d = *cfg.device;
        put("device.cavity_a", d.cavity.a);
        put("device.cavity_b", d.cavity.b);
        put("device.cavity_d", d.cavity.d);
        put("device.coax_r_in", d.coax.r_in);
        put("device.coax_r_out", d.coax.r_out);
        put("device.coax_eps_r", d.coax.eps_r);
        for (double z : d.coax.z_offsets) put("device.coax_z_offset", z);
        put("device.coax_x", d.coax.x_offset);
        put("device.coax_face", static_cast<double>(d.coax.face));
        if (d.transmon.capacitance) put("device.transmon_capacitance", *d.transmon.capacitance);
        if (d.transmon.ec) put("device.transmon_ec", *d.transmon.ec);
        put("device.transmon_ej", d.transmon.ej);
        if (d.transmon_target) put("device.transmon_target", *d.transmon_target);
        put("device.transmon_charge_cutoff", d.transmon.charge_cutoff);
        put("device.transmon_offset_charge", d.transmon.offset_charge);
        put("device.dipole_length", d.dipole.length);
        for (double x : d.dipole.position) put("device.dipole_position", x);
        put("device.dipole_tilt", d.dipole.tilt_deg);
        put("device.dipole_length_model", static_cast<double>(d.dipole.effective_length_model));
    }
    put("sweep.mode", static_cast<double>(cfg.sweep.mode));
    put("sweep.points", static_cast<double>(cfg.sweep.points));
    if (cfg.sweep.detuning_min) put("sweep.detuning_min", *cfg.sweep.detuning_min);
    if (cfg.sweep.detuning_max) put("sweep.detuning_max", *cfg.sweep.detuning_max);
    put("sweep.tau", cfg.sweep.tau);
    return out;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return fmt::format("{:016x}", h);
}

}  // namespace ptk::app
