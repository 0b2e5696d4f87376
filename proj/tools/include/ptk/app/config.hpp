#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "ptk/extract.hpp"
#include "ptk/params.hpp"

namespace ptk::app {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public ConfigError {
public:
    ParseError(int line, const std::string& msg)
        : ConfigError("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class ValidationError : public ConfigError {
public:
    ValidationError(std::string field, const std::string& msg)
        : ConfigError(field + ": " + msg), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct DeviceSection {
    CavityGeometry cavity;
    CoaxSpec coax;
    TransmonSpec transmon;
    DipoleSpec dipole;
    std::optional<double> transmon_target;  // rad/s; default is omega_c
    std::optional<double> reference_g;      // rad/s
    std::optional<double> reference_kappa;  // rad/s
    std::optional<double> reference_omega;  // rad/s
};

enum class SweepMode { single, g2 };

struct SweepSection {
    SweepMode mode = SweepMode::single;
    std::size_t points = 2001;
    std::optional<double> detuning_min;  // rad/s relative to omega_c
    std::optional<double> detuning_max;
    double tau = 0.0;  // s
};

struct OutputSection {
    std::string csv;
    std::string svg;
    bool log_scale = true;
};

struct RunConfig {
    std::optional<DeviceSection> device;
    std::optional<SystemParams> params;
    SweepSection sweep;
    OutputSection output;
    std::string label = "config";
};

RunConfig parse_config(const std::string& text);

// Built-in presets for the paper's two regimes: "good" or "bad".
RunConfig preset_config(const std::string& regime, bool with_device);

// Canonical text of the effective configuration; hashed into CSV headers.
std::string canonical(const RunConfig& cfg);

std::string fnv1a_hex(const std::string& text);

}  // namespace ptk::app
