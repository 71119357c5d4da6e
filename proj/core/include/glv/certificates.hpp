#pragma once

#include <cmath>
#include <vector>

#include "glv/model.hpp"

namespace glv {

/// Uniform log-space sampling box [-L, L]^2 in (u, v) = (ln x, ln y).
struct GridSpec {
    double log_half_width = std::log(1e3);
    int samples_per_axis = 201;
};

/// Outcome of sweeping a certificate's defining inequality over the grid.
struct GridReport {
    double log_half_width = 0.0;
    int samples_per_axis = 0;
    double worst_value = 0.0; // max of the quantity that must stay negative
    double worst_u = 0.0, worst_v = 0.0;
    bool pass = false;
};

// ───────────────────────── negative-divergence certificates ──────────────────

enum class DulacSign {
    NegativeEverywhere,      // div(hf, hg)/h < 0 on the whole open quadrant
    NonPositiveOffDiagonal,  // <= sup value, equality only on the stated locus
};

enum class DulacLocus { None, Point, Diagonal };

/// Density h = x^-p y^-q.  With f, g the reduced field,
///
///   div(hf, hg)/h = k1 (a1-p) x^(a1-1) y^b1 + k2 p/x - k3 q/y
///                 + k4 (q-b3) x^a3 y^(b3-1),
///
/// every term is <= 0 whenever a1 <= p <= 0 <= q <= b3, and at least one is
/// strictly negative when (a1, b3) != (0, 0): no periodic orbit can exist.
struct DulacCertificate {
    double p = 0.0, q = 0.0;
    DulacSign sign = DulacSign::NegativeEverywhere;
    bool triangle = false;      // built by dulac_triangle
    double sup_value = 0.0;     // triangle branch: v(1,1) = alpha + beta - 2
    DulacLocus locus = DulacLocus::None;
    GridReport verification;
};

/// div(hf, hg)/h at (x, y) = (e^u, e^v) for the density above.
double dulac_divergence(const ReducedSystem& sys, double p, double q,
                        double u, double v);

/// Requires a1 <= 0 <= b3 (exact comparisons), (a1, b3) != (0, 0), and
/// a1 <= p <= 0 <= q <= b3; PreconditionError otherwise.  The returned
/// certificate records the grid sweep (pass iff the worst sample is < 0).
DulacCertificate dulac_generic(const ReducedSystem& sys, double p, double q,
                               GridSpec grid = {});

/// Convenience overload with the midpoint density p = a1/2, q = b3/2.
DulacCertificate dulac_generic(const ReducedSystem& sys, GridSpec grid = {});

/// Dulac density for the two-exponent family x' = x^alpha - x y^beta,
/// y' = x y^beta - y on the closed parameter triangle 1 < alpha <= 3/2,
/// alpha - 1 <= beta <= 2 - alpha.  With det J = alpha*beta - alpha + 1,
///
///   p = alpha - (alpha-1) beta / det J,  q = beta + (alpha-1)^2 beta / det J,
///
/// the scaled divergence
///
///   v(x, y) = (alpha-p) x^(alpha-1) + (p-1) y^beta + (beta-q) x y^(beta-1) + q - 1
///
/// attains its supremum v(1,1) = alpha + beta - 2 at (1,1) only, except when
/// beta = alpha - 1 where v is constant along the diagonal x = y.
DulacCertificate dulac_triangle(double alpha, double beta, GridSpec grid = {});

/// The triangle branch's v(x, y) at (e^u, e^v).
double dulac_triangle_divergence(double alpha, double beta, double u, double v);

// ───────────────────── first integral / Lyapunov function ────────────────────

/// V(x, y) = k3 Phi(x; x*, a3) + k2 Phi(y; y*, b1) with the antiderivative
///
///   Phi(s; s*, e) = (s - s*) - s* (((s/s*)^(e+1) - 1) / (e+1))   (e != -1)
///   Phi(s; s*, e) = (s - s*) - s* ln(s/s*)                       (e == -1)
///
/// chosen so that grad V = (k3 (1 - (x/x*)^a3), k2 (1 - (y/y*)^b1)) and
/// V(x*, y*) = 0.  When (a1, b3) = (0, 0) and a3 b1 > 0, V is a first
/// integral; on the edges a1 < 0 = b3 / a1 = 0 < b3 it is a Lyapunov
/// function with semidefinite derivative.
struct FirstIntegralV {
    double x_star = 1.0, y_star = 1.0;
    double a3 = 0.0, b1 = 0.0;
    double k2 = 1.0, k3 = 1.0;

    double value(double x, double y) const;
    double ddx(double x, double y) const; // k3 (1 - (x/x*)^a3)
    double ddy(double x, double y) const; // k2 (1 - (y/y*)^b1)
};

/// Requires (x, y) to be an interior equilibrium (relative residual <= 1e-8).
FirstIntegralV first_integral(const ReducedSystem& sys, double x, double y);

enum class DerivativeSign { NonPositive, NonNegative };

/// Sign analysis of dV/dt along the flow, valid on the edges of the
/// stable-exponent region.  The derivative factors into a product of two
/// monomial differences vanishing together at the equilibrium:
///
///   b3 == 0:  dV/dt =  k1 k3 x^a3 y^b1 (x^-a3 - x*^-a3)(x^a1 - x*^a1)
///   a1 == 0:  dV/dt = -k2 k4 x^a3 y^b1 (y^-b1 - y*^-b1)(y^b3 - y*^b3)
///
/// so its sign is the common sign of a3 and b1 (negative pair: dV/dt <= 0).
struct LyapunovDerivativeReport {
    DerivativeSign sign = DerivativeSign::NonPositive;
    ReducedSystem sys;
    double x_star = 1.0, y_star = 1.0;
    GridReport verification; // worst signed violation over the grid (0 expected)

    double vdot(double x, double y) const;
};

/// Requires a1 < 0 == b3 or a1 == 0 < b3 (exact zero tests) and det_c < 0.
LyapunovDerivativeReport lyapunov_derivative_sign(const ReducedSystem& sys,
                                                  GridSpec grid = {});

// ─────────────────────── forward-invariant trap regions ──────────────────────

/// The four exponent sign patterns admitting a forward-invariant set that
/// excludes the equilibrium (precluding global attraction):
///
///   L1: a1,b1,a3,b3 < 0;  side condition 1+b1-b3 > 0 or det_c > a3+b3;
///       set {x >= x0, 0 < y <= x^gamma}, gamma < -a3/b3 < 0
///   L2: a1 < 0, b1 > 0, a3 > 0, b3 < 0;  det_c > a3+b3;
///       set {x >= x0, y >= x^gamma}, gamma > -a3/b3 > 0
///   L3: a1,b1,a3,b3 > 0;
///       set {0 < x <= x0, x0^gamma <= y <= x^gamma}, -a1/b1 < gamma < 0, x0 < 1
///   L4: a1 > 0, b1 < 0, a3 < 0, b3 > 0;  a1 > 1 or a1+b1 > 0;
///       set {x >= x0, x0^gamma <= y <= x^gamma}, 0 < gamma < -a1/b1, x0 > 1
enum class InvariantPattern { L1, L2, L3, L4 };

struct BoundarySample {
    double x = 0.0, y = 0.0;
    /// Inward-flux numerator divided by the summed magnitudes of its
    /// monomial terms: positive means the flow enters the set, and the size
    /// measures how much cancellation headroom the inequality has (a value
    /// near 1 is comfortable, near machine epsilon is numerically fragile).
    double margin = 0.0;
};

struct InvariantSetCertificate {
    InvariantPattern pattern = InvariantPattern::L1;
    double gamma = 0.0;
    double x0 = 0.0;
    int doublings_used = 0;
    std::vector<BoundarySample> curve_samples; // along y = x^gamma
    std::vector<BoundarySample> edge_samples;  // straight edge of the set
};

/// First pattern (L1..L4 order) whose sign conditions the exponents satisfy.
/// Returns false if none matches.
bool match_invariant_pattern(const ReducedSystem& sys, InvariantPattern& out);

/// Builds the trap region for the given pattern: gamma from the admissible
/// interval (midpoint when bounded, unit offset past the bound with doubling
/// escalation when one-sided), then a doubling (L3: halving) search on x0
/// until the inward-flow margin is >= 1e-6 at 64 log-spaced boundary samples
/// and the equilibrium lies outside the set.  Requires det_c < 0 and the
/// pattern's sign conditions (PreconditionError); throws NumericalError if
/// 60 doublings do not suffice.
InvariantSetCertificate invariant_set(const ReducedSystem& sys,
                                      InvariantPattern pattern);

// ───────────────────────────── boundary curves ───────────────────────────────

/// On the two semi-stable edges the equilibrium attracts only part of the
/// quadrant; the watershed is an explicit orbit of an auxiliary system.
///
/// b3 == 0 branch (a1 < 0, a3 < 0, -1 < b1 < 0): the curve through (x*, 0),
/// parameterized by x on (0, x*):
///
///   y^(b1+1) = (b1+1)/k1 * [ k3 (x^(1-a1) - x*^(1-a1))/(1-a1)
///                           - k4 (x^(1+a3-a1) - x*^(1+a3-a1))/(1+a3-a1) ]
///
/// with the second fraction replaced by k4 ln(x/x*) when 1+a3-a1 == 0.
///
/// a1 == 0 branch (b3 > 0, b1 < 0, -1 < a3 < 0): the curve through (0, y*),
/// parameterized by y on (y*, inf):
///
///   x^(a3+1) = -(a3+1)/k4 * [ k1 (y^(1+b1-b3) - y*^(1+b1-b3))/(1+b1-b3)
///                            - k2 (y^(1-b3) - y*^(1-b3))/(1-b3) ]
///
/// with k1 ln(y/y*) replacing the first fraction when 1+b1-b3 == 0, and the
/// second fraction becoming k2 ln(y/y*) (and the first (y^b1 - y*^b1)/b1)
/// when b3 == 1.  Degeneracy tests use an absolute threshold of 1e-12.
enum class BoundaryCase {
    B3ZeroGeneric,
    B3ZeroLog,
    A1ZeroGeneric,
    A1ZeroLog1, // 1 + b1 - b3 == 0
    A1ZeroLog2, // b3 == 1
};

struct BoundaryCurve {
    BoundaryCase kind = BoundaryCase::B3ZeroGeneric;
    ReducedSystem sys;
    double x_star = 1.0, y_star = 1.0;

    /// True for the b3 == 0 branch: the curve is y(x) on (0, x*).
    /// Otherwise it is x(y) on (y*, inf).
    bool parameterized_by_x() const;

    double y_of_x(double x) const; // b3 == 0 branch only
    double x_of_y(double y) const; // a1 == 0 branch only
};

/// Requires one of the two edge sign patterns above (PreconditionError
/// otherwise; exact-zero tests on a1 and b3).
BoundaryCurve boundary_curve(const ReducedSystem& sys);

} // namespace glv
