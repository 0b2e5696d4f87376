#pragma once

#include <algorithm>
#include <cmath>

namespace ptk {

// The five-number transport model. All rates angular (rad/s).
struct SystemParams {
    double omega_c = 0.0;
    double omega_q = 0.0;
    double g = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;

    double kappa_total() const { return kappa1 + kappa2; }

    bool symmetric() const {
        return std::abs(kappa1 - kappa2) <= 1e-9 * std::max(kappa1, kappa2);
    }

    // throws Error(InvalidArgument) on negative or non-finite entries
    void validate() const;
};

}  // namespace ptk
