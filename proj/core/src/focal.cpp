#include "glv/focal.hpp"

#include <cmath>

#include "glv/equilibrium.hpp"
#include "glv/errors.hpp"
#include "glv/local_stability.hpp"

namespace glv {

double focal_value_normal_form(double omega, const CubicDerivs& f,
                               const CubicDerivs& g) {
    if (!(omega > 0.0))
        throw PreconditionError("focal_value_normal_form requires omega > 0");
    double cubic = f.xxx + f.xyy + g.xxy + g.yyy;
    double quad = f.xy * (f.xx + f.yy) - g.xy * (g.xx + g.yy) - f.xx * g.xx +
                  f.yy * g.yy;
    return (cubic + quad / omega) / 16.0;
}

namespace {

// Swap the roles of x and y: F(X, Y) = g(Y, X), G(X, Y) = f(Y, X).
CubicDerivs swap_xy(const CubicDerivs& d) {
    CubicDerivs s;
    s.xx = d.yy;
    s.xy = d.xy;
    s.yy = d.xx;
    s.xxx = d.yyy;
    s.xxy = d.xyy;
    s.xyy = d.xxy;
    s.yyy = d.xxx;
    return s;
}

} // namespace

double focal_value_general(double j11, double j12, double j21, double j22,
                           const CubicDerivs& f, const CubicDerivs& g) {
    double scale = std::fabs(j11) + std::fabs(j12) + std::fabs(j21) + std::fabs(j22);
    if (!(std::fabs(j11 + j22) <= 1e-9 * scale))
        throw PreconditionError("focal_value_general requires a trace-free Jacobian");
    if (j12 == 0.0) {
        // det J > 0 forces j21 != 0; in swapped coordinates the Jacobian is
        // ((j22, j21), (j12, j11)) and orientation is handled below.
        return focal_value_general(j22, j21, j12, j11, swap_xy(g), swap_xy(f));
    }
    double a = 0.5 * (j11 - j22), b = j12, c = j21;
    double w2 = -a * a - b * c;
    if (!(w2 > 0.0))
        throw PreconditionError("focal_value_general requires det J > 0");

    double lin = w2 * (-2.0 * a * (f.xxy + g.xyy) + b * (f.xxx + g.xxy) -
                       c * (f.xyy + g.yyy));
    double t_ab = a * b *
                  (f.xx * f.xx - f.xx * g.xy - f.xy * g.xx - g.xx * g.yy -
                   2.0 * g.xy * g.xy);
    double t_ac = a * c *
                  (-f.xx * f.yy - 2.0 * f.xy * f.xy - f.xy * g.yy - f.yy * g.xy +
                   g.yy * g.yy);
    double t_mix = (b * c - 2.0 * a * a) * (f.xx * f.xy - g.xy * g.yy);
    double t_b2 = b * b * g.xx * (f.xx + g.xy);
    double t_c2 = -c * c * f.yy * (f.xy + g.yy);
    return (lin + t_ab + t_ac + t_mix + t_b2 + t_c2) / (16.0 * b * w2);
}

double d1_sign_expr(double a1, double b1, double a3, double b3) {
    return a3 * ((1.0 + a3 - a1) * b1 * b3 - a1 * a3 * (1.0 + b1 - b3));
}

double dancso_g(double p_hat, double q_hat, double p, double q) {
    return p * (p * (p_hat - p) * (q_hat - 1.0) - q * (q_hat - q) * (p_hat - 1.0));
}

namespace {

// Falling factorial e (e-1) ... (e-n+1): the n-th derivative of s^e at s = 1.
double falling(double e, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= e - i;
    return r;
}

} // namespace

double special_family_focal_sign(SpecialFamily family,
                                 const SpecialFamilyParams& p) {
    double trace = p.A * p.a1 - p.B * p.b2;
    double det = p.A * p.B * (p.a2 * p.b1 - p.a1 * p.b2);
    if (!(std::fabs(trace) <= 1e-9 * (std::fabs(p.A * p.a1) + std::fabs(p.B * p.b2))))
        throw PreconditionError("special_family_focal_sign requires zero trace");
    if (!(det > 0.0))
        throw PreconditionError("special_family_focal_sign requires det J > 0");
    switch (family) {
    case SpecialFamily::PowerPower:
        return p.A * p.b1 *
               ((1.0 + p.b1 - p.a1) * p.a2 * p.b2 -
                p.a1 * p.b1 * (1.0 + p.a2 - p.b2));
    case SpecialFamily::ExpPower:
        return -p.A * p.a1 * (1.0 + p.a2 - p.b2);
    default: // ExpExp: linearizable center
        return 0.0;
    }
}

FocalReport hopf_verdict(const ReducedSystem& sys) {
    if (sys.det_c == 0.0)
        throw ZipCaseError("hopf_verdict: det C == 0");
    if (sys.det_c > 0.0)
        throw PreconditionError("hopf_verdict requires det C < 0 (saddle otherwise)");

    auto eq = solve_equilibrium(sys);
    auto jac = jacobian(sys, eq.x, eq.y);
    if (std::fabs(jac.trace) > jac.trace_zero_threshold)
        throw PreconditionError("hopf_verdict requires a trace-free Jacobian");

    FocalReport rep;
    rep.x_star = eq.x;
    rep.y_star = eq.y;
    // Scaling to x/x*, y/y* and dividing time by k2 x*^-1 ... gives the unit
    // system x' = x^a1 y^b1 - 1, y' = K (1 - x^a3 y^b3) with K the remaining
    // ratio of the two relaxation rates.
    rep.K = (sys.k3 / sys.k2) * (eq.x / eq.y);
    rep.d1 = d1_sign_expr(sys.a1, sys.b1, sys.a3, sys.b3);

    CubicDerivs f, g;
    double K = rep.K;
    f.xx = falling(sys.a1, 2);
    f.xy = sys.a1 * sys.b1;
    f.yy = falling(sys.b1, 2);
    f.xxx = falling(sys.a1, 3);
    f.xxy = falling(sys.a1, 2) * sys.b1;
    f.xyy = sys.a1 * falling(sys.b1, 2);
    f.yyy = falling(sys.b1, 3);
    g.xx = -K * falling(sys.a3, 2);
    g.xy = -K * sys.a3 * sys.b3;
    g.yy = -K * falling(sys.b3, 2);
    g.xxx = -K * falling(sys.a3, 3);
    g.xxy = -K * falling(sys.a3, 2) * sys.b3;
    g.xyy = -K * sys.a3 * falling(sys.b3, 2);
    g.yyy = -K * falling(sys.b3, 3);
    // Project onto the trace-free part: a1 - K b3 is zero up to rounding here.
    double a_sym = 0.5 * (sys.a1 + K * sys.b3);
    rep.D1 = focal_value_general(a_sym, sys.b1, -K * sys.a3, -a_sym, f, g);

    double sum = 1.0 + std::fabs(sys.a1) + std::fabs(sys.b1) + std::fabs(sys.a3) +
                 std::fabs(sys.b3);
    rep.degenerate_threshold = 1e-12 * sum * sum * sum;
    if (std::fabs(rep.d1) <= rep.degenerate_threshold)
        rep.criticality = Criticality::Degenerate;
    else
        rep.criticality = rep.d1 < 0.0 ? Criticality::Supercritical
                                       : Criticality::Subcritical;
    return rep;
}

} // namespace glv
