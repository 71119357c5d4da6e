#pragma once

#include "glv/model.hpp"

namespace glv {

/// Partial derivatives of one field component at the equilibrium, orders 2-3.
struct CubicDerivs {
    double xx = 0, xy = 0, yy = 0;
    double xxx = 0, xxy = 0, xyy = 0, yyy = 0;
};

/// First focal value for x' = f(x,y), y' = g(x,y) with f = g = 0 at the
/// origin and linear part in rotation normal form J = ((0, -omega), (omega, 0)):
///
///   16 D1 = fxxx + fxyy + gxxy + gyyy
///         + (1/omega) [ fxy (fxx + fyy) - gxy (gxx + gyy) - fxx gxx + fyy gyy ].
///
/// D1 < 0: the origin is a stable focus of the nonlinear system; D1 > 0:
/// unstable; D1 = 0: higher-order analysis needed.
double focal_value_normal_form(double omega, const CubicDerivs& f,
                               const CubicDerivs& g);

/// Same quantity for a general trace-free linear part J = ((a, b), (c, -a))
/// with det J = -a^2 - b c > 0, computed without normalizing coordinates:
///
///   16 b^2 w^2 D1 =
///     b { w^2 [ -2a (fxxy + gxyy) + b (fxxx + gxxy) - c (fxyy + gyyy) ]
///       + a b [ fxx^2 - fxx gxy - fxy gxx - gxx gyy - 2 gxy^2 ]
///       + a c [ -fxx fyy - 2 fxy^2 - fxy gyy - fyy gxy + gyy^2 ]
///       + (b c - 2 a^2) [ fxx fxy - gxy gyy ]
///       + b^2 gxx (fxx + gxy) - c^2 fyy (fxy + gyy) }
///
/// with w^2 = -a^2 - b c.  When j12 == 0 the roles of x and y are swapped
/// internally (j21 != 0 then, since det J > 0).  Requires |trace| small
/// relative to the entries and det J > 0 (PreconditionError otherwise).
double focal_value_general(double j11, double j12, double j21, double j22,
                           const CubicDerivs& f, const CubicDerivs& g);

/// Sign-equivalent focal expression in the exponents of the reduced system
/// on its Hopf locus:
///
///   d1 = a3 [ (1 + a3 - a1) b1 b3 - a1 a3 (1 + b1 - b3) ].
///
/// Negative: supercritical (stable focus, limit cycle born stable when the
/// trace crosses zero); positive: subcritical.
double d1_sign_expr(double a1, double b1, double a3, double b3);

/// The same invariant in the shifted exponent coordinates
/// (p^, q^, p, q) = (a1 - a3, b3 - b1, -a3, -b1):
///
///   g = p [ p (p^ - p)(q^ - 1) - q (q^ - q)(p^ - 1) ].
double dancso_g(double p_hat, double q_hat, double p, double q);

/// Two-term families with a trace-free linearization at their canonical
/// equilibrium; the returned expression has the sign of the first focal value.
///
///   PowerPower: x' = A (x^a1 - y^a2), y' = B (x^b1 - y^b2)   at (1, 1)
///   ExpPower:   x' = A (e^(a1 x) - y^a2), y' = B (e^(b1 x) - y^b2) at (0, 1)
///   ExpExp:     x' = A (e^(a1 x) - e^(a2 y)), y' = B (e^(b1 x) - e^(b2 y)) at (0, 0)
enum class SpecialFamily { PowerPower, ExpPower, ExpExp };

struct SpecialFamilyParams {
    double A = 1.0, B = 1.0;
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
};

/// Requires A a1 == B b2 (zero trace, relative tolerance 1e-9) and
/// A B (a2 b1 - a1 b2) > 0 (positive determinant).
double special_family_focal_sign(SpecialFamily family,
                                 const SpecialFamilyParams& p);

enum class Criticality { Supercritical, Subcritical, Degenerate };

struct FocalReport {
    double d1 = 0.0; // exponent-only focal expression
    double D1 = 0.0; // first focal value of the unit-scaled system
    double K = 0.0;  // (k3/k2) x*/y*, the scaled system's time-scale ratio
    double x_star = 1.0, y_star = 1.0;
    double degenerate_threshold = 0.0;
    Criticality criticality = Criticality::Degenerate;
};

/// Hopf criticality of the reduced system at its unique equilibrium.
/// Requires det_c < 0 (ZipCaseError when det_c == 0, PreconditionError when
/// det_c > 0) and a trace within the jacobian's trace-zero threshold
/// (PreconditionError otherwise).  Scaling x/x*, y/y* and rescaling time
/// turns the system into x' = x^a1 y^b1 - 1, y' = K (1 - x^a3 y^b3) with
/// equilibrium (1, 1), on which both d1 and D1 are evaluated; they agree in
/// sign.  |d1| <= 1e-12 (1 + |a1| + |b1| + |a3| + |b3|)^3 reports Degenerate.
FocalReport hopf_verdict(const ReducedSystem& sys);

} // namespace glv
