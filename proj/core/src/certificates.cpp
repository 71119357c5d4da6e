#include "glv/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "glv/equilibrium.hpp"
#include "glv/errors.hpp"

namespace glv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b) without overflow.
double lse2(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

// Signed magnitude-in-log representation: value = sign * e^lg.  Keeps the
// invariant-set margin computations exact in sign and overflow-free even for
// the huge x0 values a failed doubling search walks through.
struct SLog {
    double lg = -kInf;
    int sign = 0;
};

SLog term(double coeff, double exponent) { // coeff > 0
    return {std::log(coeff) + exponent, 1};
}

SLog add(SLog p, SLog q) {
    if (p.sign == 0) return q;
    if (q.sign == 0) return p;
    if (p.sign == q.sign) return {lse2(p.lg, q.lg), p.sign};
    if (p.lg == q.lg) return {};
    if (p.lg > q.lg) return {p.lg + std::log1p(-std::exp(q.lg - p.lg)), p.sign};
    return {q.lg + std::log1p(-std::exp(p.lg - q.lg)), q.sign};
}

SLog sub(SLog p, SLog q) { return add(p, {q.lg, -q.sign}); }

SLog mul(SLog p, SLog q) { return {p.lg + q.lg, p.sign * q.sign}; }

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return out;
}

} // namespace

// ───────────────────────── negative-divergence certificates ──────────────────

double dulac_divergence(const ReducedSystem& sys, double p, double q,
                        double u, double v) {
    double t1 = sys.k1 * (sys.a1 - p) * std::exp((sys.a1 - 1.0) * u + sys.b1 * v);
    double t2 = sys.k2 * p * std::exp(-u);
    double t3 = -sys.k3 * q * std::exp(-v);
    double t4 = sys.k4 * (q - sys.b3) * std::exp(sys.a3 * u + (sys.b3 - 1.0) * v);
    return t1 + t2 + t3 + t4;
}

DulacCertificate dulac_generic(const ReducedSystem& sys, double p, double q,
                               GridSpec grid) {
    if (!(sys.a1 <= 0.0 && 0.0 <= sys.b3))
        throw PreconditionError("dulac_generic requires a1 <= 0 <= b3");
    if (sys.a1 == 0.0 && sys.b3 == 0.0)
        throw PreconditionError("dulac_generic requires (a1, b3) != (0, 0)");
    if (!(sys.a1 <= p && p <= 0.0 && 0.0 <= q && q <= sys.b3))
        throw PreconditionError("density exponents must satisfy a1 <= p <= 0 <= q <= b3");

    DulacCertificate cert;
    cert.p = p;
    cert.q = q;
    cert.sign = DulacSign::NegativeEverywhere;
    cert.locus = DulacLocus::None;

    GridReport rep;
    rep.log_half_width = grid.log_half_width;
    rep.samples_per_axis = grid.samples_per_axis;
    rep.worst_value = -kInf;
    auto ticks = linspace(-grid.log_half_width, grid.log_half_width,
                          grid.samples_per_axis);
    for (double u : ticks)
        for (double v : ticks) {
            double d = dulac_divergence(sys, p, q, u, v);
            if (d > rep.worst_value) {
                rep.worst_value = d;
                rep.worst_u = u;
                rep.worst_v = v;
            }
        }
    rep.pass = rep.worst_value < 0.0;
    cert.verification = rep;
    return cert;
}

DulacCertificate dulac_generic(const ReducedSystem& sys, GridSpec grid) {
    return dulac_generic(sys, sys.a1 / 2.0, sys.b3 / 2.0, grid);
}

double dulac_triangle_divergence(double alpha, double beta, double u, double v) {
    double det_j = alpha * beta - alpha + 1.0;
    double p = alpha - (alpha - 1.0) * beta / det_j;
    double q = beta + (alpha - 1.0) * (alpha - 1.0) * beta / det_j;
    return (alpha - p) * std::exp((alpha - 1.0) * u) + (p - 1.0) * std::exp(beta * v) +
           (beta - q) * std::exp(u + (beta - 1.0) * v) + (q - 1.0);
}

DulacCertificate dulac_triangle(double alpha, double beta, GridSpec grid) {
    if (!(1.0 < alpha && alpha <= 1.5 && alpha - 1.0 <= beta && beta <= 2.0 - alpha))
        throw PreconditionError(
            "dulac_triangle requires 1 < alpha <= 3/2 and alpha-1 <= beta <= 2-alpha");

    double det_j = alpha * beta - alpha + 1.0;
    DulacCertificate cert;
    cert.triangle = true;
    cert.p = alpha - (alpha - 1.0) * beta / det_j;
    cert.q = beta + (alpha - 1.0) * (alpha - 1.0) * beta / det_j;
    cert.sup_value = alpha + beta - 2.0;
    // Decimal parameters land on the triangle edges only up to rounding
    // (1.4 - 1.0 != 0.4 as doubles), so edge detection gets the same
    // 1e-13-scale tolerance the region classifier uses.
    const double edge_tol = 1e-13 * (1.0 + std::fabs(alpha) + std::fabs(beta));
    cert.locus = (std::fabs(beta - (alpha - 1.0)) <= edge_tol)
                     ? DulacLocus::Diagonal
                     : DulacLocus::Point;
    cert.sign = (std::fabs(alpha + beta - 2.0) <= edge_tol)
                    ? DulacSign::NonPositiveOffDiagonal
                    : DulacSign::NegativeEverywhere;

    GridReport rep;
    rep.log_half_width = grid.log_half_width;
    rep.samples_per_axis = grid.samples_per_axis;
    rep.worst_value = -kInf;
    double sup_tol = 1e-12 * (1.0 + std::fabs(cert.sup_value));
    double worst_off = -kInf, worst_on_err = 0.0;
    auto ticks = linspace(-grid.log_half_width, grid.log_half_width,
                          grid.samples_per_axis);
    for (double u : ticks)
        for (double v : ticks) {
            double d = dulac_triangle_divergence(alpha, beta, u, v);
            if (d > rep.worst_value) {
                rep.worst_value = d;
                rep.worst_u = u;
                rep.worst_v = v;
            }
            bool on_locus = (cert.locus == DulacLocus::Diagonal) ? (u == v)
                                                                 : (u == 0.0 && v == 0.0);
            if (on_locus)
                worst_on_err = std::max(worst_on_err, std::fabs(d - cert.sup_value));
            else
                worst_off = std::max(worst_off, d);
        }
    rep.pass = worst_off < cert.sup_value && worst_on_err <= sup_tol;
    cert.verification = rep;
    return cert;
}

// ───────────────────── first integral / Lyapunov function ────────────────────

namespace {

// Antiderivative of 1 - (s/s*)^e normalized to vanish at s = s*.
double phi(double s, double s_star, double e) {
    if (e == -1.0) return (s - s_star) - s_star * std::log(s / s_star);
    double r = s / s_star;
    return (s - s_star) - s_star * (std::pow(r, e + 1.0) - 1.0) / (e + 1.0);
}

} // namespace

double FirstIntegralV::value(double x, double y) const {
    return k3 * phi(x, x_star, a3) + k2 * phi(y, y_star, b1);
}

double FirstIntegralV::ddx(double x, double) const {
    return k3 * (1.0 - std::pow(x / x_star, a3));
}

double FirstIntegralV::ddy(double, double y) const {
    return k2 * (1.0 - std::pow(y / y_star, b1));
}

FirstIntegralV first_integral(const ReducedSystem& sys, double x, double y) {
    if (equilibrium_residual(sys, x, y) > 1e-8)
        throw PreconditionError("first_integral requires an interior equilibrium");
    FirstIntegralV v;
    v.x_star = x;
    v.y_star = y;
    v.a3 = sys.a3;
    v.b1 = sys.b1;
    v.k2 = sys.k2;
    v.k3 = sys.k3;
    return v;
}

double LyapunovDerivativeReport::vdot(double x, double y) const {
    double pf = pow_xy(x, y, sys.a3, sys.b1);
    if (sys.b3 == 0.0) {
        double f1 = std::pow(x, -sys.a3) - std::pow(x_star, -sys.a3);
        double f2 = std::pow(x, sys.a1) - std::pow(x_star, sys.a1);
        return pf * sys.k1 * sys.k3 * f1 * f2;
    }
    double f1 = std::pow(y, -sys.b1) - std::pow(y_star, -sys.b1);
    double f2 = std::pow(y, sys.b3) - std::pow(y_star, sys.b3);
    return pf * (-sys.k2 * sys.k4) * f1 * f2;
}

LyapunovDerivativeReport lyapunov_derivative_sign(const ReducedSystem& sys,
                                                  GridSpec grid) {
    bool edge_b3 = sys.a1 < 0.0 && sys.b3 == 0.0;
    bool edge_a1 = sys.a1 == 0.0 && sys.b3 > 0.0;
    if (!edge_b3 && !edge_a1)
        throw PreconditionError(
            "lyapunov_derivative_sign requires a1 < 0 == b3 or a1 == 0 < b3");
    if (!(sys.det_c < 0.0))
        throw PreconditionError("lyapunov_derivative_sign requires det C < 0");

    auto eq = solve_equilibrium(sys);
    LyapunovDerivativeReport rep;
    rep.sys = sys;
    rep.x_star = eq.x;
    rep.y_star = eq.y;
    // det C < 0 forces a3 and b1 to share a sign on these edges.
    rep.sign = (sys.a3 < 0.0) ? DerivativeSign::NonPositive
                              : DerivativeSign::NonNegative;

    // The monomial differences below are monotone images of (u - u*), so each
    // factor's floating-point sign is exact and every sample must comply with
    // the claimed sign without tolerance.
    GridReport grep;
    grep.log_half_width = grid.log_half_width;
    grep.samples_per_axis = grid.samples_per_axis;
    grep.worst_value = -kInf;
    double su = eq.log_x, sv = eq.log_y;
    auto ticks = linspace(-grid.log_half_width, grid.log_half_width,
                          grid.samples_per_axis);
    for (double u : ticks)
        for (double v : ticks) {
            double pf = std::exp(sys.a3 * u + sys.b1 * v);
            double val;
            if (edge_b3) {
                double f1 = std::exp(-sys.a3 * u) - std::exp(-sys.a3 * su);
                double f2 = std::exp(sys.a1 * u) - std::exp(sys.a1 * su);
                val = pf * sys.k1 * sys.k3 * f1 * f2;
            } else {
                double f1 = std::exp(-sys.b1 * v) - std::exp(-sys.b1 * sv);
                double f2 = std::exp(sys.b3 * v) - std::exp(sys.b3 * sv);
                val = pf * (-sys.k2 * sys.k4) * f1 * f2;
            }
            double violation =
                (rep.sign == DerivativeSign::NonPositive) ? val : -val;
            if (violation > grep.worst_value) {
                grep.worst_value = violation;
                grep.worst_u = u;
                grep.worst_v = v;
            }
        }
    grep.pass = grep.worst_value <= 0.0;
    rep.verification = grep;
    return rep;
}

// ─────────────────────── forward-invariant trap regions ──────────────────────

bool match_invariant_pattern(const ReducedSystem& s, InvariantPattern& out) {
    double a1 = s.a1, b1 = s.b1, a3 = s.a3, b3 = s.b3;
    if (a1 < 0 && b1 < 0 && a3 < 0 && b3 < 0 &&
        (1.0 + b1 - b3 > 0.0 || s.det_c > a3 + b3)) {
        out = InvariantPattern::L1;
        return true;
    }
    if (a1 < 0 && b1 > 0 && a3 > 0 && b3 < 0 && s.det_c > a3 + b3) {
        out = InvariantPattern::L2;
        return true;
    }
    if (a1 > 0 && b1 > 0 && a3 > 0 && b3 > 0) {
        out = InvariantPattern::L3;
        return true;
    }
    if (a1 > 0 && b1 < 0 && a3 < 0 && b3 > 0 && (a1 > 1.0 || a1 + b1 > 0.0)) {
        out = InvariantPattern::L4;
        return true;
    }
    return false;
}

namespace {

// Curve-boundary margin at x = e^lu on y = x^gamma: the transversality
// expression gamma x^(gamma-1) x' - y' (sign flipped for L2, whose set lies
// above the curve), normalized by the summed magnitudes of its constituent
// monomials.  That ratio is the relative room the inequality has against
// evaluation noise; unlike a cosine against the field direction it does not
// decay when the flow merely turns tangent in angle while the inequality
// itself holds with ever more absolute room.
double curve_margin(const ReducedSystem& s, InvariantPattern pat, double gamma,
                    double lu) {
    double lv = gamma * lu;
    SLog t1 = term(s.k1, s.a1 * lu + s.b1 * lv), t2 = term(s.k2, 0.0);
    SLog t3 = term(s.k3, 0.0), t4 = term(s.k4, s.a3 * lu + s.b3 * lv);
    SLog f = sub(t1, t2), g = sub(t3, t4);
    SLog slope{std::log(std::fabs(gamma)) + (gamma - 1.0) * lu,
               gamma > 0 ? 1 : (gamma < 0 ? -1 : 0)};
    SLog num = (pat == InvariantPattern::L2) ? sub(g, mul(slope, f))
                                             : sub(mul(slope, f), g);
    double denom_lg = lse2(slope.lg + lse2(t1.lg, t2.lg), lse2(t3.lg, t4.lg));
    return num.sign * std::exp(num.lg - denom_lg);
}

// Straight-edge margin: x' across the vertical edge (L1/L2: the set lives at
// x >= x0) or y' across the horizontal bottom edge (L3/L4), normalized the
// same way by the two monomials whose difference it is.
double edge_margin(const ReducedSystem& s, InvariantPattern pat, double lu,
                   double lv) {
    bool vertical = pat == InvariantPattern::L1 || pat == InvariantPattern::L2;
    SLog t1, t2;
    if (vertical) {
        t1 = term(s.k1, s.a1 * lu + s.b1 * lv);
        t2 = term(s.k2, 0.0);
    } else {
        t1 = term(s.k3, 0.0);
        t2 = term(s.k4, s.a3 * lu + s.b3 * lv);
    }
    SLog n = sub(t1, t2);
    return n.sign * std::exp(n.lg - lse2(t1.lg, t2.lg));
}

// Admissible gamma interval for the pattern; lo may be -inf (L1 with a
// one-sided interval), in which case candidates walk away from hi.
std::vector<double> gamma_candidates(const ReducedSystem& s, InvariantPattern pat) {
    double a1 = s.a1, b1 = s.b1, a3 = s.a3, b3 = s.b3;
    double lo = -kInf, hi = kInf;
    switch (pat) {
    case InvariantPattern::L1: {
        hi = -a3 / b3;
        double w = 1.0 + b1 - b3, sgrow = 1.0 - a1 + a3;
        if (w > 0.0)
            hi = std::min(hi, sgrow / w);
        else if (w < 0.0)
            lo = sgrow / w;
        break;
    }
    case InvariantPattern::L2:
        lo = -a3 / b3;
        hi = (1.0 - a1) / (1.0 + b1);
        break;
    case InvariantPattern::L3:
        lo = -a1 / b1;
        hi = 0.0;
        break;
    case InvariantPattern::L4: {
        double u = 1.0 + b1;
        lo = 0.0;
        hi = -a1 / b1;
        if (u > 0.0)
            lo = std::max(lo, (1.0 - a1) / u);
        else if (u < 0.0)
            hi = std::min(hi, (1.0 - a1) / u);
        break;
    }
    }
    if (!(lo < hi))
        throw PreconditionError("invariant_set: empty exponent interval for gamma");
    if (lo == -kInf) return {hi - 1.0, hi - 2.0, hi - 4.0};
    return {0.5 * (lo + hi)};
}

} // namespace

InvariantSetCertificate invariant_set(const ReducedSystem& sys,
                                      InvariantPattern pattern) {
    InvariantPattern matched;
    if (!match_invariant_pattern(sys, matched) || matched != pattern)
        throw PreconditionError("invariant_set: exponent signs do not match pattern");
    if (!(sys.det_c < 0.0))
        throw PreconditionError("invariant_set requires det C < 0");

    auto eq = solve_equilibrium(sys);
    bool shrink = pattern == InvariantPattern::L3; // x0 halves instead of doubling
    constexpr int kCurveSamples = 64, kEdgeSamples = 16, kMaxDoublings = 60;
    constexpr double kMinMargin = 1e-6;
    double span = std::log(1e3); // sampled extent along either boundary piece

    for (double gamma : gamma_candidates(sys, pattern)) {
        double x0 = shrink ? 0.5 : 2.0;
        for (int step = 0; step <= kMaxDoublings; ++step, x0 = shrink ? x0 / 2 : x0 * 2) {
            double lx0 = std::log(x0);
            // The set must exclude the equilibrium: it lives past x0.
            if (shrink ? !(lx0 < eq.log_x) : !(lx0 > eq.log_x)) continue;

            InvariantSetCertificate cert;
            cert.pattern = pattern;
            cert.gamma = gamma;
            cert.x0 = x0;
            cert.doublings_used = step;
            bool ok = true;

            for (int i = 0; i < kCurveSamples && ok; ++i) {
                double t = static_cast<double>(i) / (kCurveSamples - 1);
                double lu = shrink ? lx0 - span * (1.0 - t) : lx0 + span * t;
                double m = curve_margin(sys, pattern, gamma, lu);
                ok = m >= kMinMargin;
                cert.curve_samples.push_back(
                    {std::exp(lu), std::exp(gamma * lu), m});
            }
            for (int i = 0; i < kEdgeSamples && ok; ++i) {
                double t = static_cast<double>(i) / (kEdgeSamples - 1);
                double lu, lv;
                switch (pattern) {
                case InvariantPattern::L1: // x = x0, 0 < y <= x0^gamma
                    lu = lx0;
                    lv = gamma * lx0 - span * (1.0 - t);
                    break;
                case InvariantPattern::L2: // x = x0, y >= x0^gamma
                    lu = lx0;
                    lv = gamma * lx0 + span * t;
                    break;
                case InvariantPattern::L3: // y = x0^gamma, 0 < x <= x0
                    lu = lx0 - span * (1.0 - t);
                    lv = gamma * lx0;
                    break;
                default: // L4: y = x0^gamma, x >= x0
                    lu = lx0 + span * t;
                    lv = gamma * lx0;
                    break;
                }
                double m = edge_margin(sys, pattern, lu, lv);
                ok = m >= kMinMargin;
                cert.edge_samples.push_back({std::exp(lu), std::exp(lv), m});
            }
            if (ok) return cert;
        }
    }
    throw NumericalError("invariant_set: no trap region found within 60 doublings");
}

// ───────────────────────────── boundary curves ───────────────────────────────

bool BoundaryCurve::parameterized_by_x() const {
    return kind == BoundaryCase::B3ZeroGeneric || kind == BoundaryCase::B3ZeroLog;
}

double BoundaryCurve::y_of_x(double x) const {
    if (!parameterized_by_x())
        throw PreconditionError("curve is parameterized by y; use x_of_y");
    if (!(x > 0.0 && x <= x_star * (1.0 + 1e-9)))
        throw PreconditionError("y_of_x: x outside (0, x*]");
    const auto& s = sys;
    double e1 = 1.0 - s.a1;
    double a = s.k3 * (std::pow(x, e1) - std::pow(x_star, e1)) / e1;
    double b;
    if (kind == BoundaryCase::B3ZeroLog)
        b = s.k4 * std::log(x / x_star);
    else {
        double e2 = 1.0 + s.a3 - s.a1;
        b = s.k4 * (std::pow(x, e2) - std::pow(x_star, e2)) / e2;
    }
    double w = std::max((s.b1 + 1.0) / s.k1 * (a - b), 0.0);
    return std::pow(w, 1.0 / (s.b1 + 1.0));
}

double BoundaryCurve::x_of_y(double y) const {
    if (parameterized_by_x())
        throw PreconditionError("curve is parameterized by x; use y_of_x");
    if (!(y >= y_star * (1.0 - 1e-9)))
        throw PreconditionError("x_of_y: y outside [y*, inf)");
    const auto& s = sys;
    double a;
    if (kind == BoundaryCase::A1ZeroLog1)
        a = s.k1 * std::log(y / y_star);
    else {
        double e1 = 1.0 + s.b1 - s.b3;
        a = s.k1 * (std::pow(y, e1) - std::pow(y_star, e1)) / e1;
    }
    double b;
    if (kind == BoundaryCase::A1ZeroLog2)
        b = s.k2 * std::log(y / y_star);
    else {
        double e2 = 1.0 - s.b3;
        b = s.k2 * (std::pow(y, e2) - std::pow(y_star, e2)) / e2;
    }
    double w = std::max(-(s.a3 + 1.0) / s.k4 * (a - b), 0.0);
    return std::pow(w, 1.0 / (s.a3 + 1.0));
}

BoundaryCurve boundary_curve(const ReducedSystem& sys) {
    constexpr double kZero = 1e-12;
    BoundaryCurve c;
    c.sys = sys;
    if (sys.b3 == 0.0 && sys.a1 < 0.0 && sys.a3 < 0.0 && -1.0 < sys.b1 &&
        sys.b1 < 0.0) {
        c.kind = (std::fabs(1.0 + sys.a3 - sys.a1) <= kZero)
                     ? BoundaryCase::B3ZeroLog
                     : BoundaryCase::B3ZeroGeneric;
    } else if (sys.a1 == 0.0 && sys.b3 > 0.0 && sys.b1 < 0.0 && -1.0 < sys.a3 &&
               sys.a3 < 0.0) {
        if (std::fabs(1.0 + sys.b1 - sys.b3) <= kZero)
            c.kind = BoundaryCase::A1ZeroLog1;
        else if (std::fabs(1.0 - sys.b3) <= kZero)
            c.kind = BoundaryCase::A1ZeroLog2;
        else
            c.kind = BoundaryCase::A1ZeroGeneric;
    } else {
        throw PreconditionError(
            "boundary_curve requires a semi-stable edge sign pattern");
    }
    auto eq = solve_equilibrium(sys);
    c.x_star = eq.x;
    c.y_star = eq.y;
    return c;
}

} // namespace glv
