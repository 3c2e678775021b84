#include <doctest.h>

#include "eisglm/tableau.hpp"

using namespace eisglm;

TEST_SUITE_BEGIN("tableau_io");

TEST_CASE("save/load round-trips every registry method bit-exactly") {
    for (const auto& t : registry()) {
        CAPTURE(t.name);
        const MethodTableau back = load_tableau(save_tableau(t));
        CHECK(back.name == t.name);
        CHECK(back.s == t.s);
        CHECK(back.p == t.p);
        CHECK(back.P == t.P);
        CHECK(back.kind == t.kind);
        CHECK(back.family == t.family);
        CHECK(back.D == t.D);
        CHECK(back.A == t.A);
        CHECK(back.Ahat == t.Ahat);
        CHECK(back.R == t.R);
        CHECK(back.Rhat == t.Rhat);
        CHECK(back.ssp_coefficient == t.ssp_coefficient);
        if (t.stored_tau) {
            REQUIRE(back.stored_tau.has_value());
            CHECK(*back.stored_tau == *t.stored_tau);
        }
    }
}

TEST_CASE("a decimal coefficient file verifies like the built-in method") {
    const std::string text = R"(# explicit SSP method, rationals as decimals
name ssp23-from-file
s 2
p 2
P 3
kind EIS
family ssp
ssp_coeff 1.5
D:
0.4375 0.5625
0.4375 0.5625
A:
0.25 0.375
0.25 0.375
Ahat:
0 0.125
0 0.125
R:
0 0
0.66666666666666663 0
Rhat:
0 0
0.22222222222222221 0
)";
    const MethodTableau t = load_tableau(text);
    CHECK(t.c(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(verify_order(t).p_observed == 2);
    CHECK_NOTHROW(verify_eis(t));
}

TEST_CASE("parse failures carry line numbers") {
    CHECK_THROWS_AS(load_tableau(""), ParseError);
    CHECK_THROWS_AS(load_tableau("# only comments\n\n"), ParseError);

    try {
        load_tableau("name x\ns 2\nbogus-key 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    // matrix row with the wrong arity
    CHECK_THROWS_AS(
        load_tableau("name x\ns 2\np 1\nP 2\nkind EIS\nfamily explicit\n"
                     "D:\n1 0 0\n0 1\n"),
        ParseError);
}

TEST_CASE("invariant violations are caught at load time") {
    // D row sums are 0.9 here
    const std::string text = R"(name broken
s 2
p 2
P 3
kind EIS
family ssp
D:
0.39375 0.50625
0.39375 0.50625
A:
0.25 0.375
0.25 0.375
Ahat:
0 0.125
0 0.125
R:
0 0
0.66666666666666663 0
Rhat:
0 0
0.22222222222222221 0
)";
    try {
        load_tableau(text);
        FAIL("expected InvariantViolation");
    } catch (const InvariantViolation& e) {
        CHECK(std::string(e.what()).find("consistency") != std::string::npos);
    }
}

TEST_SUITE_END();
