#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "glv/errors.hpp"
#include "glv/network.hpp"
#include "oracles.hpp"

using namespace glv;

namespace {

const char* kSample = R"(# three-node cycle with power-law kinetics
cycle {
    n = 2;          # stoichiometric multiplier on the first step
    k12 = 0.5;
    k23 = 1.25;
    k31 = 2;
    order1 = X^1.5 Y^-0.5;
    order2 = X^0.5 Y^1;
    order3 = Y^2;
}
)";

bool same_network(const ReactionNetwork& a, const ReactionNetwork& b) {
    return a.n == b.n && a.rate12 == b.rate12 && a.rate23 == b.rate23 &&
           a.rate31 == b.rate31 && a.order1_x == b.order1_x &&
           a.order1_y == b.order1_y && a.order2_x == b.order2_x &&
           a.order2_y == b.order2_y && a.order3_x == b.order3_x &&
           a.order3_y == b.order3_y;
}

} // namespace

TEST_CASE("parses the documented grammar with comments and whitespace") {
    ReactionNetwork net = parse_network(kSample);
    CHECK(net.n == 2.0);
    CHECK(net.rate12 == 0.5);
    CHECK(net.rate23 == 1.25);
    CHECK(net.rate31 == 2.0);
    CHECK(net.order1_x == 1.5);
    CHECK(net.order1_y == -0.5);
    CHECK(net.order2_x == 0.5);
    CHECK(net.order2_y == 1.0);
    CHECK(net.order3_x == 0.0);
    CHECK(net.order3_y == 2.0);
}

TEST_CASE("order terms may come in either species order") {
    ReactionNetwork net = parse_network(
        "cycle { n=1; k12=1; k23=1; k31=1; order1 = Y^2 X^3; order2 = X^1; }");
    CHECK(net.order1_x == 3.0);
    CHECK(net.order1_y == 2.0);
    CHECK(net.order2_y == 0.0);
}

TEST_CASE("order3 defaults to the plain-species complex (0, 1)") {
    ReactionNetwork net = parse_network(
        "cycle { n=1; k12=1; k23=1; k31=1; order1 = X^1; order2 = Y^1; }");
    CHECK(net.order3_x == 0.0);
    CHECK(net.order3_y == 1.0);
}

TEST_CASE("render and parse round-trip bit-exactly") {
    ReactionNetwork net = parse_network(kSample);
    std::string text = render(net);
    ReactionNetwork again = parse_network(text);
    CHECK(same_network(net, again));
    CHECK(render(again) == text);

    // Fuzzed networks: every double must survive the text round trip.
    oracle::Rng rng(201);
    for (int trial = 0; trial < 300; ++trial) {
        ReactionNetwork r;
        r.n = std::exp(rng.uniform(-3, 3));
        r.rate12 = std::exp(rng.uniform(-3, 3));
        r.rate23 = std::exp(rng.uniform(-3, 3));
        r.rate31 = std::exp(rng.uniform(-3, 3));
        r.order1_x = rng.uniform(-3, 3);
        r.order1_y = rng.uniform(-3, 3);
        r.order2_x = rng.uniform(-3, 3);
        r.order2_y = rng.uniform(-3, 3);
        r.order3_x = rng.uniform(-3, 3);
        r.order3_y = rng.uniform(-3, 3);
        ReactionNetwork back = parse_network(render(r));
        CHECK(same_network(r, back));
    }
}

TEST_CASE("lowering scales the first two rates by the multiplier") {
    ReactionNetwork net = parse_network(kSample);
    GlvSystem sys = lower(net);

    CHECK(sys.alpha1 == net.order1_x);
    CHECK(sys.beta1 == net.order1_y);
    CHECK(sys.alpha2 == net.order2_x);
    CHECK(sys.beta2 == net.order2_y);
    CHECK(sys.alpha3 == net.order3_x);
    CHECK(sys.beta3 == net.order3_y);

    CHECK(sys.k1 == net.n * net.rate12);
    CHECK(sys.k2 == net.n * net.rate23);
    CHECK(sys.k3 == net.rate23);
    CHECK(sys.k4 == net.rate31);

    // The induced rate tuple always satisfies k2 = n k3 exactly: both sides
    // are the same product of the same two doubles.
    CHECK(sys.k2 == net.n * sys.k3);
}

TEST_CASE("syntax errors carry line and column") {
    // Missing ';' after k12 on line 3, detected at the 'k' of k23 (column 5).
    const char* bad = "cycle {\n    n = 1;\n    k12 = 1\n    k23 = 1;\n}";
    CHECK_THROWS_WITH_AS(parse_network(bad),
                         doctest::Contains("4:5"), ValidationError);

    CHECK_THROWS_WITH_AS(parse_network("cycle { n = ; }"),
                         doctest::Contains("expected number"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_network("loop { n = 1; }"),
                         doctest::Contains("expected 'cycle'"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_network("cycle { n = 1;"),
                         doctest::Contains("unexpected end"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_network("cycle { n = 1e; }"),
                         doctest::Contains("malformed exponent"), ValidationError);
}

TEST_CASE("duplicate keys and repeated species are rejected") {
    CHECK_THROWS_WITH_AS(
        parse_network("cycle { n=1; n=2; k12=1; k23=1; k31=1; order1=X^1; order2=Y^1; }"),
        doctest::Contains("duplicate key 'n'"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_network("cycle { n=1; k12=1; k23=1; k31=1; order1=X^1 X^2; order2=Y^1; }"),
        doctest::Contains("species X appears twice"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_network("cycle { n=1; k12=1; k23=1; k31=1; order1=X^1; order2=Y^1; bogus=3; }"),
        doctest::Contains("unknown key 'bogus'"), ValidationError);
}

TEST_CASE("missing keys and non-positive rates are rejected") {
    CHECK_THROWS_WITH_AS(
        parse_network("cycle { n=1; k12=1; k23=1; order1=X^1; order2=Y^1; }"),
        doctest::Contains("missing required key 'k31'"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_network("cycle { n=0; k12=1; k23=1; k31=1; order1=X^1; order2=Y^1; }"),
        doctest::Contains("n must be positive"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_network("cycle { n=1; k12=-2; k23=1; k31=1; order1=X^1; order2=Y^1; }"),
        doctest::Contains("k12 must be positive"), ValidationError);
}

TEST_CASE("trailing input after the closing brace is rejected") {
    CHECK_THROWS_WITH_AS(
        parse_network("cycle { n=1; k12=1; k23=1; k31=1; order1=X^1; order2=Y^1; } cycle"),
        doctest::Contains("trailing input"), ValidationError);
}
