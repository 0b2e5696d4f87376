#include <Eigen/Dense>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "ptk/errors.hpp"
#include "ptk/oracle.hpp"

namespace ptk {

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
constexpr cplx I{0.0, 1.0};

// Weak-drive solver in excitation-scaled coordinates: rho_ij = s_i s_j rho'_ij
// with s_i = x^{n_i}, x = eps / Lambda. Every product L rho R becomes
// (S^-1 L S) rho' (S R S^-1), which keeps all matrix entries O(1) or smaller.
class ScaledModel {
public:
    ScaledModel(const SystemParams& p, int cutoff, double eps, double detuning) {
        lambda_ = p.kappa_total();
        qdim_ = p.g == 0.0 ? 1 : 2;
        ndim_ = cutoff + 1;
        dim_ = ndim_ * qdim_;
        x_ = eps / lambda_;

        const double u = p.omega_c + detuning;
        CMat a = CMat::Zero(dim_, dim_), sm = CMat::Zero(dim_, dim_);
        exc_.resize(dim_);
        for (int n = 0; n < ndim_; ++n)
            for (int q = 0; q < qdim_; ++q) {
                exc_[idx(n, q)] = n + q;
                if (n > 0) a(idx(n - 1, q), idx(n, q)) = std::sqrt(double(n));
                if (q == 1) sm(idx(n, 0), idx(n, 1)) = 1.0;
            }
        const CMat ad = a.adjoint();
        CMat H = ((p.omega_c - u) / lambda_) * ad * a + (p.g / lambda_) * (ad * sm + a * sm.adjoint());
        if (qdim_ == 2) H += ((p.omega_q - u) / lambda_) * sm.adjoint() * sm;
        const CMat drive = (eps / lambda_) * (a + ad);

        a_ = a;
        const double k1 = p.kappa1 / lambda_, k2 = p.kappa2 / lambda_;
        // Hamiltonian part: -i (H rho - rho H)
        const CMat Id = CMat::Identity(dim_, dim_);
        L_ = -I * (Eigen::kroneckerProduct(Id, left(H + drive)).eval() -
                   Eigen::kroneckerProduct(right(H + drive).transpose(), Id).eval());
        for (double k : {k1, k2}) {
            if (k == 0.0) continue;
            const CMat c = std::sqrt(k) * a;
            const CMat cdc = c.adjoint() * c;
            L_ += Eigen::kroneckerProduct(right(c.adjoint()).transpose(), left(c)).eval();
            L_ -= 0.5 * Eigen::kroneckerProduct(Id, left(cdc)).eval();
            L_ -= 0.5 * Eigen::kroneckerProduct(right(cdc).transpose(), Id).eval();
        }
        kappa1_ = k1;
        kappa2_ = k2;
        alpha_in_ = (eps / lambda_) / std::sqrt(k1);
    }

    int dim() const { return dim_; }
    double lambda() const { return lambda_; }

    CMat left(const CMat& op) const { return scaled(op, false); }
    CMat right(const CMat& op) const { return scaled(op, true); }

    // trace of the physical matrix represented by scaled Y'
    cplx trace(const CMat& y) const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += std::pow(x_, 2 * exc_[i]) * y(i, i);
        return t;
    }

    CMat physical(const CMat& y) const {
        CMat r = y;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) *= std::pow(x_, exc_[i] + exc_[j]);
        return r;
    }

    // output field operator b = alpha delta_{port,1} - i sqrt(kappa) a (units of sqrt(Lambda))
    CMat output(int port) const {
        CMat b = -I * std::sqrt(port == 1 ? kappa1_ : kappa2_) * a_;
        if (port == 1) b += alpha_in_ * CMat::Identity(dim_, dim_);
        return b;
    }

    // scaled representation of O rho O^dagger
    CMat sandwich(const CMat& op, const CMat& y) const { return left(op) * y * right(op.adjoint()); }

    CMat steady_state(double tol, double& residual) const {
        const int n2 = dim_ * dim_;
        CMat M = L_;
        CVec rhs = CVec::Zero(n2);
        // replace the (0,0) population equation by the trace condition
        M.row(0).setZero();
        for (int i = 0; i < dim_; ++i) M(0, i * dim_ + i) = std::pow(x_, 2 * exc_[i]);
        rhs(0) = 1.0;
        Eigen::PartialPivLU<CMat> lu(M);
        CVec v = lu.solve(rhs);
        for (int it = 0; it < 5; ++it) {
            const CVec r = rhs - M * v;
            residual = r.norm();
            if (residual < tol) break;
            v += lu.solve(r);
        }
        residual = (rhs - M * v).norm();
        CMat rho = Eigen::Map<CMat>(v.data(), dim_, dim_);
        return 0.5 * (rho + rho.adjoint());
    }

    CMat evolve(const CMat& y, double tau_scaled) const {
        if (tau_scaled == 0.0) return y;
        const CMat prop = (L_ * tau_scaled).exp();
        CVec v = Eigen::Map<const CVec>(y.data(), dim_ * dim_);
        CVec w = prop * v;
        return Eigen::Map<CMat>(w.data(), dim_, dim_);
    }

    double photon_number(const CMat& rho) const {
        return trace(left(a_.adjoint() * a_) * rho).real();
    }

private:
    int idx(int n, int q) const { return n * qdim_ + q; }

    CMat scaled(const CMat& op, bool on_right) const {
        CMat r = op;
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k) {
                if (r(i, k) == cplx(0.0)) continue;
                const int e = on_right ? exc_[i] - exc_[k] : exc_[k] - exc_[i];
                r(i, k) *= std::pow(x_, e);
            }
        return r;
    }

    int qdim_ = 2, ndim_ = 0, dim_ = 0;
    double lambda_ = 1.0, x_ = 0.0, kappa1_ = 0.0, kappa2_ = 0.0, alpha_in_ = 0.0;
    std::vector<int> exc_;
    CMat a_, L_;
};

LindbladResult solve(const SystemParams& p, const LindbladConfig& cfg, double eps, OutputPorts ports,
                     const std::vector<double>& tau_grid) {
    ScaledModel m(p, cfg.fock_cutoff, eps, cfg.detuning);
    LindbladResult out;
    out.drive_amp = eps;
    const CMat rho = m.steady_state(cfg.convergence_tol, out.residual);
    out.trace_error = std::abs(m.trace(rho) - 1.0);
    out.photon_number = m.photon_number(rho);

    const CMat full = m.physical(rho);
    Eigen::SelfAdjointEigenSolver<CMat> es(full);
    out.min_eigenvalue = es.eigenvalues().minCoeff();

    const CMat b1 = m.output(ports.b1), b2 = m.output(ports.b2);
    const double n1 = m.trace(m.sandwich(b1, rho)).real();
    const double n2 = m.trace(m.sandwich(b2, rho)).real();
    const CMat y0 = m.sandwich(b1, rho);
    for (double tau : tau_grid) {
        const CMat y = m.evolve(y0, std::abs(tau) * m.lambda());
        const double G = m.trace(m.sandwich(b2, y)).real();
        out.g2.push_back(G / (n1 * n2));
    }
    return out;
}

}  // namespace

LindbladResult lindblad_g2(const SystemParams& p, const LindbladConfig& cfg, OutputPorts ports,
                           const std::vector<double>& tau_grid) {
    p.validate();
    if (!p.symmetric()) throw Error(Errc::AsymmetricPorts, "weak-drive comparison assumes kappa1 = kappa2");
    if (!(p.kappa_total() > 0.0)) throw Error(Errc::InvalidArgument, "lindblad oracle needs kappa > 0");
    if (cfg.fock_cutoff < 3) throw Error(Errc::InvalidArgument, "fock_cutoff must be >= 3");
    if ((ports.b1 != 1 && ports.b1 != 2) || (ports.b2 != 1 && ports.b2 != 2))
        throw Error(Errc::InvalidArgument, "output ports must be 1 or 2");

    double eps = cfg.drive_amp;
    if (!(eps > 0.0)) {
        const double trial = 1e-3 * p.kappa_total();
        const auto probe = solve(p, cfg, trial, ports, {});
        eps = trial * std::sqrt(cfg.target_photons / probe.photon_number);
    }
    auto out = solve(p, cfg, eps, ports, tau_grid);
    if (!(out.photon_number < 1e-3))
        throw Error(Errc::WeakDriveViolated, "steady-state photon number above 1e-3");

    if (cfg.check_cutoff) {
        LindbladConfig bigger = cfg;
        bigger.fock_cutoff += 2;
        bigger.check_cutoff = false;
        const auto ref = solve(p, bigger, eps, ports, {0.0});
        const auto here = solve(p, cfg, eps, ports, {0.0});
        if (std::abs(ref.g2[0] - here.g2[0]) > 0.01 * std::abs(ref.g2[0]))
            throw Error(Errc::CutoffNotConverged, "g2(0) moved by more than 1% when raising the cutoff");
    }
    return out;
}

}  // namespace ptk
