#include "glv/local_stability.hpp"

#include <cmath>

#include "glv/equilibrium.hpp"
#include "glv/errors.hpp"

namespace glv {
namespace {

JacobianReport jacobian_impl(const ReducedSystem& red, double x, double y,
                             double prefactor) {
    const double res = equilibrium_residual(red, x, y);
    if (!(res <= 1e-8)) {
        throw PreconditionError("jacobian: point is not an equilibrium (relative residual " +
                                std::to_string(res) + " > 1e-8)");
    }
    if (red.det_c == 0.0) {
        throw ZipCaseError("jacobian: det C == 0, equilibrium is not isolated");
    }

    const double k2x = red.k2 / x;
    const double k3y = red.k3 / y;

    JacobianReport rep;
    rep.prefactor = prefactor;
    rep.x = x;
    rep.y = y;
    rep.j11 = prefactor * red.a1 * k2x;
    rep.j12 = prefactor * red.b1 * (red.k2 / y);
    rep.j21 = prefactor * (-red.a3) * (red.k3 / x);
    rep.j22 = prefactor * (-red.b3) * k3y;
    rep.trace = prefactor * (red.a1 * k2x - red.b3 * k3y);
    rep.det = prefactor * prefactor * (k2x * k3y) * (-red.det_c);
    rep.discriminant = rep.trace * rep.trace - 4.0 * rep.det;
    rep.trace_zero_threshold = 1e-12 * prefactor * (k2x + k3y);

    const bool trace_zero = std::abs(rep.trace) <= rep.trace_zero_threshold;
    if (rep.det < 0.0) {
        rep.eigen_class = EigenClass::Saddle;
    } else if (trace_zero) {
        rep.eigen_class = EigenClass::LinearCenter;
    } else if (rep.trace < 0.0) {
        rep.eigen_class = rep.discriminant < 0.0 ? EigenClass::StableFocus
                                                 : EigenClass::StableNode;
    } else {
        rep.eigen_class = rep.discriminant < 0.0 ? EigenClass::UnstableFocus
                                                 : EigenClass::UnstableNode;
    }
    return rep;
}

} // namespace

JacobianReport jacobian(const GlvSystem& sys, double x, double y) {
    const ReducedSystem red = reduce(sys);
    const double prefactor = pow_xy(x, y, sys.alpha2, sys.beta2);
    return jacobian_impl(red, x, y, prefactor);
}

JacobianReport jacobian(const ReducedSystem& sys, double x, double y) {
    return jacobian_impl(sys, x, y, 1.0);
}

LinearVerdict linear_verdict(const JacobianReport& report) {
    if (report.det < 0.0) return LinearVerdict::Unstable;
    if (std::abs(report.trace) <= report.trace_zero_threshold)
        return LinearVerdict::Inconclusive;
    return report.trace < 0.0 ? LinearVerdict::AsymptoticallyStable
                              : LinearVerdict::Unstable;
}

} // namespace glv
