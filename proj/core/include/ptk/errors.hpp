#pragma once

#include <stdexcept>
#include <string>

namespace ptk {

enum class Errc {
    InvalidArgument,
    NonFundamental,
    QuadratureNotConverged,
    NotConverged,
    NoBracket,
    OutsideCavity,
    ZeroMatrixElement,
    PoleHit,
    AsymmetricPorts,
    StepUnstable,
    CutoffNotConverged,
    WeakDriveViolated,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace ptk
