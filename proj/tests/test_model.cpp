#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "glv/json_io.hpp"
#include "glv/model.hpp"
#include "oracles.hpp"

using namespace glv;

namespace {

GlvSystem sample_full(oracle::Rng& rng) {
    GlvSystem s;
    s.alpha1 = rng.uniform(-3, 3);
    s.beta1 = rng.uniform(-3, 3);
    s.alpha2 = rng.uniform(-3, 3);
    s.beta2 = rng.uniform(-3, 3);
    s.alpha3 = rng.uniform(-3, 3);
    s.beta3 = rng.uniform(-3, 3);
    s.k1 = std::exp(rng.uniform(-2, 2));
    s.k2 = std::exp(rng.uniform(-2, 2));
    s.k3 = std::exp(rng.uniform(-2, 2));
    s.k4 = std::exp(rng.uniform(-2, 2));
    return s;
}

} // namespace

TEST_CASE("reduce subtracts the shared monomial's exponents") {
    GlvSystem s;
    s.alpha1 = 2.0;
    s.beta1 = -0.5;
    s.alpha2 = 1.0;
    s.beta2 = 0.25;
    s.alpha3 = -1.5;
    s.beta3 = 3.0;
    s.k1 = 2.0;
    s.k2 = 3.0;
    s.k3 = 5.0;
    s.k4 = 7.0;

    ReducedSystem r = reduce(s);
    CHECK(r.a1 == 1.0);
    CHECK(r.b1 == -0.75);
    CHECK(r.a3 == -2.5);
    CHECK(r.b3 == 2.75);
    CHECK(r.k1 == 2.0);
    CHECK(r.k2 == 3.0);
    CHECK(r.k3 == 5.0);
    CHECK(r.k4 == 7.0);
    CHECK(r.det_c == r.a1 * r.b3 - r.b1 * r.a3);
}

TEST_CASE("full field equals shared monomial times reduced field") {
    oracle::Rng rng(101);
    for (int trial = 0; trial < 2000; ++trial) {
        GlvSystem s = sample_full(rng);
        ReducedSystem r = reduce(s);
        double x = std::exp(rng.uniform(-2, 2));
        double y = std::exp(rng.uniform(-2, 2));

        auto full = eval_field(s, x, y);
        auto red = eval_field(r, x, y);
        double m = pow_xy(x, y, s.alpha2, s.beta2);

        for (int i = 0; i < 2; ++i) {
            double want = m * red[i];
            CHECK(std::fabs(full[i] - want) <=
                  1e-12 * (std::fabs(want) + std::fabs(m) * 1e-6));
        }
    }
}

TEST_CASE("reduced form is invariant under shifting the shared monomial") {
    // Adding (da, db) to every exponent pair multiplies the field by
    // x^da y^db; the reduced exponents are untouched.
    oracle::Rng rng(102);
    for (int trial = 0; trial < 500; ++trial) {
        GlvSystem s = sample_full(rng);
        double da = 0.25 * rng.pick(17) - 2.0; // exactly representable shifts
        double db = 0.25 * rng.pick(17) - 2.0;

        GlvSystem t = s;
        t.alpha1 += da;
        t.alpha2 += da;
        t.alpha3 += da;
        t.beta1 += db;
        t.beta2 += db;
        t.beta3 += db;

        ReducedSystem rs = reduce(s), rt = reduce(t);
        CHECK(std::fabs(rt.a1 - rs.a1) <= 1e-12);
        CHECK(std::fabs(rt.b1 - rs.b1) <= 1e-12);
        CHECK(std::fabs(rt.a3 - rs.a3) <= 1e-12);
        CHECK(std::fabs(rt.b3 - rs.b3) <= 1e-12);
    }
}

TEST_CASE("dancso form shifts by the third and first exponents") {
    oracle::Rng rng(103);
    for (int trial = 0; trial < 500; ++trial) {
        GlvSystem s = sample_full(rng);
        DancsoForm d = to_dancso(s);
        CHECK(d.p_hat == s.alpha1 - s.alpha3);
        CHECK(d.q_hat == s.beta3 - s.beta1);
        CHECK(d.p == s.alpha2 - s.alpha3);
        CHECK(d.q == s.beta2 - s.beta1);
        CHECK(d.k1 == s.k1);
        CHECK(d.k4 == s.k4);
    }
}

TEST_CASE("dancso reduction also preserves orbits up to a positive factor") {
    // Dividing by x^alpha3 y^beta1 instead: the Dancso field
    //   x' = k1 x^p_hat - k2 x^p y^q,  y' = k3 x^p y^q - k4 y^q_hat
    // must equal the full field divided by that monomial.
    oracle::Rng rng(104);
    for (int trial = 0; trial < 1000; ++trial) {
        GlvSystem s = sample_full(rng);
        DancsoForm d = to_dancso(s);
        double x = std::exp(rng.uniform(-2, 2));
        double y = std::exp(rng.uniform(-2, 2));

        double fx = d.k1 * pow_xy(x, y, d.p_hat, 0.0) -
                    d.k2 * pow_xy(x, y, d.p, d.q);
        double fy = d.k3 * pow_xy(x, y, d.p, d.q) -
                    d.k4 * pow_xy(x, y, 0.0, d.q_hat);

        double m = pow_xy(x, y, s.alpha3, s.beta1);
        auto full = eval_field(s, x, y);
        CHECK(std::fabs(m * fx - full[0]) <=
              1e-12 * (std::fabs(full[0]) + std::fabs(m)));
        CHECK(std::fabs(m * fy - full[1]) <=
              1e-12 * (std::fabs(full[1]) + std::fabs(m)));
    }
}

TEST_CASE("make_reduced caches det C") {
    ReducedSystem r = make_reduced(1.5, -2.0, 0.5, 3.0, 2, 3, 4, 5);
    CHECK(r.a1 == 1.5);
    CHECK(r.b1 == -2.0);
    CHECK(r.a3 == 0.5);
    CHECK(r.b3 == 3.0);
    CHECK(r.det_c == 1.5 * 3.0 - (-2.0) * 0.5);
    CHECK(r.k3 == 4.0);
}

TEST_CASE("two-exponent family wires (alpha, beta) into the full tuple") {
    GlvSystem s = alpha_beta_system(1.25, 0.5);
    CHECK(s.alpha1 == 1.25);
    CHECK(s.beta1 == 0.0);
    CHECK(s.alpha2 == 1.0);
    CHECK(s.beta2 == 0.5);
    CHECK(s.alpha3 == 0.0);
    CHECK(s.beta3 == 1.0);

    ReducedSystem r = reduce(s);
    CHECK(r.a1 == 0.25);  // alpha - 1
    CHECK(r.b1 == -0.5);  // -beta
    CHECK(r.a3 == -1.0);
    CHECK(r.b3 == 0.5);   // 1 - beta

    // x' = x^alpha - x y^beta, y' = x y^beta - y at (1, 1) vanishes.
    auto f = eval_field(s, 1.0, 1.0);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == 0.0);
}

TEST_CASE("monomial evaluation survives exponent-log products beyond 709") {
    // x^a y^b with a ln x = 1200 and b ln y = -1180: either factor alone
    // overflows/underflows a double, the combined affine form does not.
    double x = std::exp(300.0), y = std::exp(-295.0);
    double v = pow_xy(x, y, 4.0, 4.0);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(std::exp(20.0)).epsilon(1e-12));
}

TEST_CASE("system JSON round-trips bit-exactly") {
    oracle::Rng rng(105);
    for (int trial = 0; trial < 200; ++trial) {
        GlvSystem s = sample_full(rng);
        GlvSystem t = system_from_json(to_json(s));
        CHECK(t.alpha1 == s.alpha1);
        CHECK(t.beta1 == s.beta1);
        CHECK(t.alpha2 == s.alpha2);
        CHECK(t.beta2 == s.beta2);
        CHECK(t.alpha3 == s.alpha3);
        CHECK(t.beta3 == s.beta3);
        CHECK(t.k1 == s.k1);
        CHECK(t.k2 == s.k2);
        CHECK(t.k3 == s.k3);
        CHECK(t.k4 == s.k4);

        ReducedSystem r = reduce(s);
        ReducedSystem q = reduced_from_json(to_json(r));
        CHECK(q.a1 == r.a1);
        CHECK(q.b1 == r.b1);
        CHECK(q.a3 == r.a3);
        CHECK(q.b3 == r.b3);
        CHECK(q.det_c == r.det_c);
        CHECK(q.k2 == r.k2);
    }
}
