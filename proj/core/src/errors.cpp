#include "ptk/errors.hpp"

#include <cmath>

#include "ptk/params.hpp"

namespace ptk {

const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NonFundamental: return "NonFundamental";
        case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
        case Errc::NotConverged: return "NotConverged";
        case Errc::NoBracket: return "NoBracket";
        case Errc::OutsideCavity: return "OutsideCavity";
        case Errc::ZeroMatrixElement: return "ZeroMatrixElement";
        case Errc::PoleHit: return "PoleHit";
        case Errc::AsymmetricPorts: return "AsymmetricPorts";
        case Errc::StepUnstable: return "StepUnstable";
        case Errc::CutoffNotConverged: return "CutoffNotConverged";
        case Errc::WeakDriveViolated: return "WeakDriveViolated";
    }
    return "Unknown";
}

void SystemParams::validate() const {
    for (double x : {omega_c, omega_q, g, kappa1, kappa2})
        if (!std::isfinite(x)) throw Error(Errc::InvalidArgument, "non-finite system parameter");
    if (kappa1 < 0 || kappa2 < 0) throw Error(Errc::InvalidArgument, "negative decay rate");
    if (omega_c <= 0 || omega_q <= 0)
        throw Error(Errc::InvalidArgument, "frequencies must be positive");
}

}  // namespace ptk
