#pragma once

#include "glv/model.hpp"

namespace glv {

enum class EigenClass {
    StableNode,
    StableFocus,
    LinearCenter, // trace within threshold of zero, det > 0: linearization alone decides nothing
    UnstableFocus,
    UnstableNode,
    Saddle,
};

enum class LinearVerdict { AsymptoticallyStable, Unstable, Inconclusive };

/// Jacobian at the interior equilibrium.  Differentiating and substituting
/// the equilibrium conditions collapses every entry to a rate-over-coordinate
/// product scaled by the shared-monomial prefactor (x*)^alpha2 (y*)^beta2:
///
///   J = prefactor * (  a1 k2/x*    b1 k2/y*  )
///                   ( -a3 k3/x*   -b3 k3/y*  )
///
/// trace and det are evaluated in factored form, so the sign identities
///   sign(det J) = -sign(det C),
///   sign(tr J)  =  sign(a1 k2/x* - b3 k3/y*)
/// hold exactly as computed, not merely up to rounding of a 2x2 determinant.
struct JacobianReport {
    double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;
    double trace = 0.0;
    double det = 0.0;
    double discriminant = 0.0; // trace^2 - 4 det
    double prefactor = 1.0;
    double x = 0.0, y = 0.0; // equilibrium the report refers to
    /// trace is treated as zero when |trace| <= trace_zero_threshold.
    double trace_zero_threshold = 0.0;
    EigenClass eigen_class = EigenClass::Saddle;
};

/// Requires (x, y) to be the isolated interior equilibrium: the relative
/// field residual must be <= 1e-8 (PreconditionError otherwise) and
/// det C != 0 (ZipCaseError otherwise).
JacobianReport jacobian(const GlvSystem& sys, double x, double y);
JacobianReport jacobian(const ReducedSystem& sys, double x, double y);

/// AsymptoticallyStable iff det J > 0 and tr J < 0; Unstable iff det J < 0 or
/// tr J > 0; Inconclusive when the trace sits inside the zero threshold with
/// det J > 0 (the focal analysis takes over there).
LinearVerdict linear_verdict(const JacobianReport& report);

} // namespace glv
