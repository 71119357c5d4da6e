#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "glv/certificates.hpp"
#include "glv/equilibrium.hpp"
#include "glv/errors.hpp"
#include "glv/model.hpp"
#include "oracles.hpp"

using namespace glv;

namespace {

// div(h f, h g) for the density h = x^-p y^-q, by central differences of the
// scaled field components.  Checks the closed-form divergence independently.
double fd_scaled_divergence(const ReducedSystem& s, double p, double q,
                            double x, double y) {
    auto hf = [&](double xx, double yy, int i) {
        return pow_xy(xx, yy, -p, -q) * eval_field(s, xx, yy)[i];
    };
    double hx = 1e-6 * x, hy = 1e-6 * y;
    return (hf(x + hx, y, 0) - hf(x - hx, y, 0)) / (2 * hx) +
           (hf(x, y + hy, 1) - hf(x, y + -hy, 1)) / (2 * hy);
}

} // namespace

// ───────────────────────── negative-divergence certificates ──────────────────

TEST_CASE("closed-form divergence matches finite differences of div(hf, hg)") {
    oracle::Rng rng(601);
    int done = 0;
    while (done < 500) {
        double a1 = rng.uniform(-2, 0), b1 = rng.uniform(-2, 2);
        double a3 = rng.uniform(-2, 2), b3 = rng.uniform(0, 2);
        ReducedSystem s = make_reduced(a1, b1, a3, b3, std::exp(rng.uniform(-1, 1)),
                                       std::exp(rng.uniform(-1, 1)),
                                       std::exp(rng.uniform(-1, 1)),
                                       std::exp(rng.uniform(-1, 1)));
        double p = rng.uniform(a1, 0.0), q = rng.uniform(0.0, b3);
        double u = rng.uniform(-1.5, 1.5), v = rng.uniform(-1.5, 1.5);
        double x = std::exp(u), y = std::exp(v);

        double want = fd_scaled_divergence(s, p, q, x, y);
        double got = pow_xy(x, y, -p, -q) * dulac_divergence(s, p, q, u, v);
        double scale = std::fabs(want) + 1e-3;
        if (std::fabs(got - want) > 1e-4 * scale) {
            CAPTURE(a1); CAPTURE(b1); CAPTURE(a3); CAPTURE(b3);
            CHECK(std::fabs(got - want) <= 1e-4 * scale);
        }
        ++done;
    }
}

TEST_CASE("generic density certifies sign-compatible exponent boxes") {
    // a1 <= p <= 0 <= q <= b3 makes every divergence term non-positive; with
    // (a1, b3) != (0, 0) at least one term is strictly negative everywhere.
    ReducedSystem s = make_reduced(-1, -1, -1, 1);
    DulacCertificate cert = dulac_generic(s);
    CHECK(cert.p == -0.5); // midpoint defaults p = a1/2, q = b3/2
    CHECK(cert.q == 0.5);
    CHECK_FALSE(cert.triangle);
    CHECK(cert.sign == DulacSign::NegativeEverywhere);
    CHECK(cert.verification.pass);
    CHECK(cert.verification.worst_value < 0.0);
    CHECK(cert.verification.samples_per_axis == 201);

    // One-sided box: b3 == 0 forces q = 0 and the x-terms carry the sign.
    DulacCertificate edge = dulac_generic(make_reduced(-1, -0.5, -0.5, 0));
    CHECK(edge.q == 0.0);
    CHECK(edge.verification.pass);

    // Explicit admissible (p, q) and a smaller grid.
    GridSpec grid;
    grid.log_half_width = std::log(100.0);
    grid.samples_per_axis = 41;
    DulacCertificate manual = dulac_generic(s, -1.0, 1.0, grid);
    CHECK(manual.verification.samples_per_axis == 41);
    CHECK(manual.verification.log_half_width == grid.log_half_width);
    CHECK(manual.verification.pass);
}

TEST_CASE("generic density rejects sign-incompatible systems and densities") {
    CHECK_THROWS_AS(dulac_generic(make_reduced(1, -1, -1, 1)),
                    PreconditionError); // a1 > 0
    CHECK_THROWS_AS(dulac_generic(make_reduced(-1, -1, -1, -1)),
                    PreconditionError); // b3 < 0
    CHECK_THROWS_AS(dulac_generic(make_reduced(0, -1, -1, 0)),
                    PreconditionError); // (a1, b3) == (0, 0): divergence-free
    ReducedSystem s = make_reduced(-1, -1, -1, 1);
    CHECK_THROWS_AS(dulac_generic(s, -2.0, 0.5), PreconditionError); // p < a1
    CHECK_THROWS_AS(dulac_generic(s, -0.5, 2.0), PreconditionError); // q > b3
}

TEST_CASE("triangle density: closed-form coefficients and supremum") {
    DulacCertificate cert = dulac_triangle(1.25, 0.5);
    CHECK(cert.triangle);
    CHECK(cert.p == doctest::Approx(11.0 / 12.0).epsilon(1e-12));
    CHECK(cert.q == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
    CHECK(cert.sup_value == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(cert.sign == DulacSign::NegativeEverywhere);
    CHECK(cert.locus == DulacLocus::Point);
    CHECK(cert.verification.pass);

    // On the upper edge beta = 2 - alpha the supremum is exactly zero, so
    // the certificate only claims nonpositivity off the locus.
    DulacCertificate edge = dulac_triangle(1.3, 0.7);
    CHECK(edge.sign == DulacSign::NonPositiveOffDiagonal);
    CHECK(std::fabs(edge.sup_value) <= 1e-12);
    CHECK(edge.verification.pass);

    // The maximum sits at (x, y) = (1, 1), i.e. (u, v) = (0, 0), within one
    // grid cell.
    double du = 2.0 * cert.verification.log_half_width /
                (cert.verification.samples_per_axis - 1);
    CHECK(std::fabs(cert.verification.worst_u) <= du + 1e-12);
    CHECK(std::fabs(cert.verification.worst_v) <= du + 1e-12);

    // v(1,1) equals the supremum and nearby off-locus points sit strictly
    // below it.
    CHECK(dulac_triangle_divergence(1.25, 0.5, 0.0, 0.0) ==
          doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(dulac_triangle_divergence(1.25, 0.5, 0.4, -0.3) < -0.25);
    CHECK(dulac_triangle_divergence(1.25, 0.5, -1.0, 2.0) < -0.25);
}

TEST_CASE("triangle density matches finite differences of div(hf, hg)") {
    // For the two-exponent family, div(h F)/h with h = x^-p y^-q is exactly
    // the closed-form v(x, y); cross-check through the full field.
    oracle::Rng rng(602);
    for (int trial = 0; trial < 200; ++trial) {
        double alpha = rng.uniform(1.01, 1.5);
        double beta = rng.uniform(alpha - 1.0, 2.0 - alpha);
        DulacCertificate cert = dulac_triangle(alpha, beta);

        ReducedSystem s = reduce(alpha_beta_system(alpha, beta));
        double u = rng.uniform(-1.0, 1.0), v = rng.uniform(-1.0, 1.0);
        double x = std::exp(u), y = std::exp(v);

        // Scaled field: the reduced system times the shared monomial x y^beta,
        // i.e. the original family field.
        auto hF = [&](double xx, double yy, int i) {
            return pow_xy(xx, yy, -cert.p, -cert.q) *
                   pow_xy(xx, yy, 1.0, beta) * eval_field(s, xx, yy)[i];
        };
        double hx = 1e-6 * x, hy = 1e-6 * y;
        double fd = (hF(x + hx, y, 0) - hF(x - hx, y, 0)) / (2 * hx) +
                    (hF(x, y + hy, 1) - hF(x, y - hy, 1)) / (2 * hy);
        double want = pow_xy(x, y, -cert.p, -cert.q) *
                      dulac_triangle_divergence(alpha, beta, u, v);
        CHECK(std::fabs(fd - want) <= 1e-4 * (std::fabs(want) + 1e-3));
    }
}

TEST_CASE("triangle density on the lower edge is constant along the diagonal") {
    // beta = alpha - 1: the supremum locus is the whole line x = y.
    DulacCertificate cert = dulac_triangle(1.4, 0.4);
    CHECK(cert.locus == DulacLocus::Diagonal);
    CHECK(cert.sup_value == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(cert.verification.pass);

    for (double t : {-2.0, -0.7, 0.0, 1.3, 2.9}) {
        CHECK(dulac_triangle_divergence(1.4, 0.4, t, t) ==
              doctest::Approx(cert.sup_value).epsilon(1e-12));
    }
    CHECK(dulac_triangle_divergence(1.4, 0.4, 0.5, -0.5) < cert.sup_value);

    // The recorded worst grid sample lies on the diagonal up to one cell.
    double du = 2.0 * cert.verification.log_half_width /
                (cert.verification.samples_per_axis - 1);
    CHECK(std::fabs(cert.verification.worst_u - cert.verification.worst_v) <=
          du + 1e-12);
}

TEST_CASE("triangle density rejects parameters outside the triangle") {
    CHECK_THROWS_AS(dulac_triangle(1.6, 0.4), PreconditionError);  // alpha > 3/2
    CHECK_THROWS_AS(dulac_triangle(1.0, 0.5), PreconditionError);  // alpha <= 1
    CHECK_THROWS_AS(dulac_triangle(1.2, 0.1), PreconditionError);  // beta < alpha-1
    CHECK_THROWS_AS(dulac_triangle(1.3, 0.75), PreconditionError); // beta > 2-alpha
}

// ───────────────────── first integral / Lyapunov function ────────────────────

TEST_CASE("first-integral gradient matches finite differences") {
    oracle::Rng rng(603);
    std::vector<ReducedSystem> instances = {
        make_reduced(0, -1, -1, 0),        // classical predator-prey pair
        make_reduced(0, -2, -0.5, 0),      // generic negative exponents
        make_reduced(0, -1.5, 2.0, 0, 1, 2, 3, 4), // positive a3 branch
    };
    for (const ReducedSystem& s : instances) {
        EquilibriumResult eq = solve_equilibrium(s);
        REQUIRE(eq.kind == EquilibriumResult::Kind::Unique);
        FirstIntegralV V = first_integral(s, eq.x, eq.y);

        CHECK(V.value(eq.x, eq.y) == 0.0);

        for (int i = 0; i < 300; ++i) {
            double x = eq.x * std::exp(rng.uniform(-2, 2));
            double y = eq.y * std::exp(rng.uniform(-2, 2));
            double hx = 1e-6 * x, hy = 1e-6 * y;
            double gx = (V.value(x + hx, y) - V.value(x - hx, y)) / (2 * hx);
            double gy = (V.value(x, y + hy) - V.value(x, y - hy)) / (2 * hy);
            double sx = std::fabs(V.ddx(x, y)) + std::fabs(V.k3);
            double sy = std::fabs(V.ddy(x, y)) + std::fabs(V.k2);
            CHECK(std::fabs(gx - V.ddx(x, y)) <= 1e-6 * sx);
            CHECK(std::fabs(gy - V.ddy(x, y)) <= 1e-6 * sy);
        }
    }
}

TEST_CASE("first integral is positive definite for negative exponent pairs") {
    // a3 < 0, b1 < 0: both antiderivative terms are strictly convex with
    // minimum 0 at the equilibrium, so V > 0 everywhere else.
    ReducedSystem s = make_reduced(0, -1, -1, 0, 2, 3, 5, 7);
    EquilibriumResult eq = solve_equilibrium(s);
    FirstIntegralV V = first_integral(s, eq.x, eq.y);
    oracle::Rng rng(604);
    for (int i = 0; i < 500; ++i) {
        double lx = rng.uniform(-3, 3), ly = rng.uniform(-3, 3);
        double x = eq.x * std::exp(lx), y = eq.y * std::exp(ly);
        if (std::fabs(lx) < 1e-3 && std::fabs(ly) < 1e-3) continue;
        CHECK(V.value(x, y) > 0.0);
    }
}

TEST_CASE("first integral requires an actual equilibrium point") {
    ReducedSystem s = make_reduced(0, -1, -1, 0);
    CHECK_THROWS_AS(first_integral(s, 2.0, 2.0), PreconditionError);
}

TEST_CASE("lyapunov derivative sign on the two semistable edges") {
    SUBCASE("b3 == 0 edge with negative pair: derivative non-positive") {
        ReducedSystem s = make_reduced(-1, -1, -1, 0);
        LyapunovDerivativeReport rep = lyapunov_derivative_sign(s);
        CHECK(rep.sign == DerivativeSign::NonPositive);
        CHECK(rep.verification.pass);
        CHECK(rep.verification.worst_value <= 0.0);

        // Independent chain rule: vdot must equal grad V . field.
        EquilibriumResult eq = solve_equilibrium(s);
        FirstIntegralV V = first_integral(s, eq.x, eq.y);
        oracle::Rng rng(605);
        for (int i = 0; i < 300; ++i) {
            double x = std::exp(rng.uniform(-2, 2)), y = std::exp(rng.uniform(-2, 2));
            auto f = eval_field(s, x, y);
            double want = V.ddx(x, y) * f[0] + V.ddy(x, y) * f[1];
            double scale = std::fabs(V.ddx(x, y) * f[0]) +
                           std::fabs(V.ddy(x, y) * f[1]) + 1e-12;
            CHECK(std::fabs(rep.vdot(x, y) - want) <= 1e-10 * scale);
            CHECK(rep.vdot(x, y) <= 0.0);
        }
    }

    SUBCASE("a1 == 0 edge with negative pair: derivative non-positive") {
        ReducedSystem s = make_reduced(0, -0.3, -0.5, 0.5);
        LyapunovDerivativeReport rep = lyapunov_derivative_sign(s);
        CHECK(rep.sign == DerivativeSign::NonPositive);
        CHECK(rep.verification.pass);
    }

    SUBCASE("positive pair flips the sign") {
        // a1 < 0 = b3 with a3, b1 > 0: det C = -b1 a3 < 0 still, but the
        // factored derivative is a product of two same-direction differences.
        ReducedSystem s = make_reduced(-1, 2, 3, 0);
        LyapunovDerivativeReport rep = lyapunov_derivative_sign(s);
        CHECK(rep.sign == DerivativeSign::NonNegative);
        EquilibriumResult eq = solve_equilibrium(s);
        oracle::Rng rng(606);
        for (int i = 0; i < 100; ++i) {
            double x = std::exp(rng.uniform(-1.5, 1.5));
            double y = std::exp(rng.uniform(-1.5, 1.5));
            CHECK(rep.vdot(x, y) >= 0.0);
        }
        (void)eq;
    }

    SUBCASE("preconditions") {
        // Interior stable pattern (a1 < 0 < b3) is not an edge case.
        CHECK_THROWS_AS(lyapunov_derivative_sign(make_reduced(-1, -1, -1, 1)),
                        PreconditionError);
        // Edge signs but det C > 0.
        CHECK_THROWS_AS(lyapunov_derivative_sign(make_reduced(-1, -1, 1, 0)),
                        PreconditionError);
    }
}

// ─────────────────────── forward-invariant trap regions ──────────────────────

namespace {

// Re-evaluates the inward-flow inequality at a reported boundary sample with
// plain double arithmetic (pow/eval_field), independent of the log-domain
// evaluation used by the builder.
void check_sample_inequalities(const ReducedSystem& s,
                               const InvariantSetCertificate& cert) {
    for (const BoundarySample& b : cert.curve_samples) {
        CHECK(b.margin >= 1e-6);
        auto f = eval_field(s, b.x, b.y);
        double slope = cert.gamma * pow_xy(b.x, 1.0, cert.gamma - 1.0, 0.0);
        double num = slope * f[0] - f[1];
        if (cert.pattern == InvariantPattern::L2) num = f[1] - slope * f[0];
        CHECK(num > 0.0);
    }
    for (const BoundarySample& b : cert.edge_samples) {
        CHECK(b.margin >= 1e-6);
        auto f = eval_field(s, b.x, b.y);
        bool vertical = cert.pattern == InvariantPattern::L1 ||
                        cert.pattern == InvariantPattern::L2;
        CHECK((vertical ? f[0] : f[1]) > 0.0);
    }
}

} // namespace

TEST_CASE("trap regions are built for all four exponent patterns") {
    struct Instance {
        ReducedSystem sys;
        InvariantPattern pattern;
    };
    std::vector<Instance> table = {
        {make_reduced(-1, -2, -1, -1), InvariantPattern::L1},
        {make_reduced(-1, 5, 1, -4), InvariantPattern::L2},
        {make_reduced(1, 2, 1, 1), InvariantPattern::L3},
        {make_reduced(1.5, -4, -2, 1), InvariantPattern::L4},
    };

    for (const Instance& inst : table) {
        CAPTURE(static_cast<int>(inst.pattern));
        InvariantPattern matched;
        REQUIRE(match_invariant_pattern(inst.sys, matched));
        CHECK(matched == inst.pattern);

        InvariantSetCertificate cert = invariant_set(inst.sys, inst.pattern);
        CHECK(cert.pattern == inst.pattern);
        CHECK(cert.curve_samples.size() == 64);
        CHECK(cert.edge_samples.size() == 16);
        check_sample_inequalities(inst.sys, cert);

        // The set excludes the equilibrium: it lies beyond x0.
        EquilibriumResult eq = solve_equilibrium(inst.sys);
        if (inst.pattern == InvariantPattern::L3)
            CHECK(cert.x0 < eq.x);
        else
            CHECK(cert.x0 > eq.x);

        // gamma sits inside the pattern's admissible slope interval.
        const ReducedSystem& s = inst.sys;
        switch (inst.pattern) {
        case InvariantPattern::L1:
            CHECK(cert.gamma < -s.a3 / s.b3);
            break;
        case InvariantPattern::L2:
            CHECK(cert.gamma > -s.a3 / s.b3);
            CHECK(cert.gamma < (1.0 - s.a1) / (1.0 + s.b1));
            break;
        case InvariantPattern::L3:
            CHECK(cert.gamma > -s.a1 / s.b1);
            CHECK(cert.gamma < 0.0);
            break;
        case InvariantPattern::L4:
            CHECK(cert.gamma > 0.0);
            CHECK(cert.gamma < -s.a1 / s.b1);
            break;
        }
    }
}

TEST_CASE("pattern matching enforces the side conditions") {
    InvariantPattern out;

    // Stable interior signs match nothing.
    CHECK_FALSE(match_invariant_pattern(make_reduced(-1, -1, -1, 1), out));

    // L2 signs but det C = -4 below a3 + b3 = -3: rejected.
    CHECK_FALSE(match_invariant_pattern(make_reduced(-1, 8, 1, -4), out));

    // L4 signs but a1 <= 1 and a1 + b1 <= 0: rejected.
    CHECK_FALSE(match_invariant_pattern(make_reduced(0.5, -2, -1, 1), out));

    // Asking for a pattern the signs don't satisfy throws.
    CHECK_THROWS_AS(invariant_set(make_reduced(-1, -2, -1, -1), InvariantPattern::L3),
                    PreconditionError);
}

// ───────────────────────────── boundary curves ───────────────────────────────

namespace {

// RK4 cross-check: the curve must solve its defining slope ODE.  Starting
// from one point of the claimed curve, integrate to 20 log-spaced abscissae
// and compare; uniqueness of ODE solutions makes agreement at every stop a
// genuine test of the whole expression.
void check_b3_zero_curve(const ReducedSystem& s, const BoundaryCurve& curve) {
    REQUIRE(curve.parameterized_by_x());
    double xs = 0.9 * curve.x_star;
    double w = curve.y_of_x(xs);
    REQUIRE(w > 0.0);

    auto slope = [&](double lx, double y) {
        // dy/d(ln x) = x (k3 - k4 x^a3) / (k1 x^a1 y^b1)
        double x = std::exp(lx);
        return x * (s.k3 - s.k4 * std::pow(x, s.a3)) /
               (s.k1 * std::pow(x, s.a1) * std::pow(y, s.b1));
    };

    double lo = std::log(0.05 * curve.x_star), hi = std::log(xs);
    double prev = hi;
    for (int i = 0; i < 20; ++i) {
        double target = hi - (hi - lo) * (i + 1) / 20.0;
        w = oracle::rk4(slope, prev, w, target, 4000);
        prev = target;
        double want = curve.y_of_x(std::exp(target));
        CHECK(std::fabs(w - want) <= 1e-4 * std::fabs(want));
    }
}

void check_a1_zero_curve(const ReducedSystem& s, const BoundaryCurve& curve) {
    REQUIRE_FALSE(curve.parameterized_by_x());
    double ys = 1.5 * curve.y_star;
    double w = curve.x_of_y(ys);
    REQUIRE(w > 0.0);

    auto slope = [&](double ly, double x) {
        // dx/d(ln y) = y (k1 y^b1 - k2) / (-k4 x^a3 y^b3)
        double y = std::exp(ly);
        return y * (s.k1 * std::pow(y, s.b1) - s.k2) /
               (-s.k4 * std::pow(x, s.a3) * std::pow(y, s.b3));
    };

    double lo = std::log(1.05 * curve.y_star), hi = std::log(6.0 * curve.y_star);
    double prev = std::log(ys);
    for (int i = 0; i < 20; ++i) {
        double target = lo + (hi - lo) * i / 19.0;
        w = oracle::rk4(slope, prev, w, target, 4000);
        prev = target;
        double want = curve.x_of_y(std::exp(target));
        CHECK(std::fabs(w - want) <= 1e-4 * std::fabs(want));
    }
}

} // namespace

TEST_CASE("boundary curve: b3 == 0 generic branch") {
    ReducedSystem s = make_reduced(-1, -0.5, -0.5, 0);
    BoundaryCurve curve = boundary_curve(s);
    CHECK(curve.kind == BoundaryCase::B3ZeroGeneric);
    CHECK(curve.x_star == doctest::Approx(1.0));
    // The curve lands on (x*, 0).
    CHECK(curve.y_of_x(curve.x_star * (1.0 - 1e-10)) < 1e-5);
    check_b3_zero_curve(s, curve);
}

TEST_CASE("boundary curve: b3 == 0 logarithmic branch") {
    // 1 + a3 - a1 == 0 switches the second antiderivative to k4 ln(x/x*).
    ReducedSystem s = make_reduced(-1, -0.5, -2, 0);
    BoundaryCurve curve = boundary_curve(s);
    CHECK(curve.kind == BoundaryCase::B3ZeroLog);
    check_b3_zero_curve(s, curve);
}

TEST_CASE("boundary curve: a1 == 0 generic branch") {
    ReducedSystem s = make_reduced(0, -0.3, -0.5, 0.5);
    BoundaryCurve curve = boundary_curve(s);
    CHECK(curve.kind == BoundaryCase::A1ZeroGeneric);
    CHECK(curve.y_star == doctest::Approx(1.0));
    // The curve emanates from (0, y*).
    CHECK(curve.x_of_y(curve.y_star * (1.0 + 1e-10)) < 1e-5);
    check_a1_zero_curve(s, curve);
}

TEST_CASE("boundary curve: a1 == 0 with 1 + b1 - b3 == 0") {
    ReducedSystem s = make_reduced(0, -0.5, -0.5, 0.5);
    BoundaryCurve curve = boundary_curve(s);
    CHECK(curve.kind == BoundaryCase::A1ZeroLog1);
    check_a1_zero_curve(s, curve);
}

TEST_CASE("boundary curve: a1 == 0 with b3 == 1") {
    ReducedSystem s = make_reduced(0, -0.5, -0.5, 1);
    BoundaryCurve curve = boundary_curve(s);
    CHECK(curve.kind == BoundaryCase::A1ZeroLog2);
    check_a1_zero_curve(s, curve);
}

TEST_CASE("boundary curves demand the semistable edge sign patterns") {
    // b1 outside (-1, 0) on the b3 == 0 edge.
    CHECK_THROWS_AS(boundary_curve(make_reduced(-1, -1.5, -0.5, 0)),
                    PreconditionError);
    // Interior system: neither a1 == 0 nor b3 == 0.
    CHECK_THROWS_AS(boundary_curve(make_reduced(-1, -0.5, -0.5, 1)),
                    PreconditionError);
    // a1 == 0 edge with a3 outside (-1, 0).
    CHECK_THROWS_AS(boundary_curve(make_reduced(0, -0.5, -1.5, 0.5)),
                    PreconditionError);
}
