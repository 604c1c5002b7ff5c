#include "noonsim/script.hpp"

#include <numbers>

#include "doctest.h"
#include "support/helpers.hpp"

using namespace noonsim;
using testutil::approx;

namespace {

CircuitResult run_text(std::string_view text) { return run_circuit(parse_circuit(text)); }

// doctest's CHECK_THROWS_WITH_AS needs the exact message; we want position
void expect_parse_error(std::string_view text, int line, int column) {
    try {
        parse_circuit(text);
        FAIL("expected a parse error for:\n" << std::string(text));
    } catch (const ParseError& err) {
        CHECK(err.line() == line);
        CHECK(err.column() == column);
    }
}

}  // namespace

TEST_CASE("number grammar") {
    CHECK(parse_number("0.5") == 0.5);
    CHECK(parse_number("-2") == -2.0);
    CHECK(parse_number("1e-3") == 1e-3);
    CHECK(*parse_number("pi") == doctest::Approx(std::numbers::pi));
    CHECK(*parse_number("pi/4") == doctest::Approx(std::numbers::pi / 4));
    CHECK(*parse_number("-pi/8") == doctest::Approx(-std::numbers::pi / 8));
    CHECK(*parse_number("3pi/4") == doctest::Approx(3 * std::numbers::pi / 4));
    CHECK(*parse_number("2pi") == doctest::Approx(2 * std::numbers::pi));
    CHECK(!parse_number("pie"));
    CHECK(!parse_number("pi/"));
    CHECK(!parse_number("pi/0"));
    CHECK(!parse_number("1.2.3"));
    CHECK(!parse_number(""));
}

TEST_CASE("a six-line script reproduces the DA Hong-Ou-Mandel circuit") {
    CircuitResult result = run_text(
        "# two photons meet a polarizing beam splitter\n"
        "paths a b\n"
        "photon a D\n"
        "photon b A\n"
        "pbs a b DA\n"
        "herald_none b\n");
    CHECK(approx(result.success_prob, 1.0));
    REQUIRE(result.output.branch_count() == 1);
    const PureState& out = result.output.branches().front().state;
    CHECK(approx(out.amplitude(OccupationVector({2, 0})), Complex{1 / std::sqrt(2.0)}));
    CHECK(approx(out.amplitude(OccupationVector({0, 2})), Complex{-1 / std::sqrt(2.0)}));
}

TEST_CASE("an empty script yields vacuum with probability one") {
    CircuitResult result = run_text("");
    CHECK(approx(result.success_prob, 1.0));
    CHECK(result.output.reg().empty());
    CHECK(approx(trace(result.output), 1.0));

    CircuitResult commented = run_text("# nothing here\n\n   # still nothing\n");
    CHECK(approx(commented.success_prob, 1.0));
}

TEST_CASE("parse errors carry line and column") {
    SUBCASE("unnormalized beam splitter") {
        expect_parse_error("paths a b\nbs a b 0.8 0.8\n", 2, 8);
    }
    SUBCASE("undeclared path") {
        expect_parse_error("paths a\nphoton z H\n", 2, 8);
    }
    SUBCASE("unknown command") {
        expect_parse_error("paths a\nteleport a\n", 2, 1);
    }
    SUBCASE("bad polarization") {
        expect_parse_error("paths a\nphoton a X\n", 2, 10);
    }
    SUBCASE("bad number") {
        expect_parse_error("paths a\nrot a fast\n", 2, 7);
    }
    SUBCASE("eta out of range") {
        expect_parse_error("paths a b\nherald_none b 1.2\n", 2, 15);
    }
    SUBCASE("negative pnr count") {
        expect_parse_error("paths a\npnr a.H -1\n", 2, 9);
    }
    SUBCASE("missing arguments") {
        expect_parse_error("paths a b\nbs a b 0.6\n", 2, 11);
    }
    SUBCASE("duplicate path declaration") {
        expect_parse_error("paths a a\n", 1, 9);
        expect_parse_error("paths a\npaths a\n", 2, 7);
    }
    SUBCASE("mode used after removal") {
        expect_parse_error("paths a b\nherald_none b\nphoton b H\n", 3, 8);
    }
    SUBCASE("mode cap exceeded") {
        expect_parse_error("paths a b c d e f g\n", 1, 7);
    }
    SUBCASE("photon cap exceeded") {
        std::string script = "paths a\n";
        for (int i = 0; i < 17; ++i) script += (i % 2 == 0) ? "photon a D\n" : "photon a A\n";
        try {
            parse_circuit(script);
            FAIL("expected a photon-cap error");
        } catch (const ParseError& err) {
            CHECK(err.line() == 18);
        }
    }
    SUBCASE("malformed mode reference") {
        expect_parse_error("paths a\nphase a.D 0.5\n", 2, 7);
        expect_parse_error("paths a\nphase a 0.5\n", 2, 7);
    }
}

TEST_CASE("pi fractions are accepted in element parameters") {
    CircuitResult result = run_text(
        "paths a\n"
        "photon a H\n"
        "rot a pi/2\n");
    REQUIRE(result.output.branch_count() == 1);
    const PureState& out = result.output.branches().front().state;
    CHECK(approx(out.amplitude(OccupationVector({0, 1})), Complex{1.0}));
}

TEST_CASE("herald and pnr steps condition and remove modes") {
    SUBCASE("pnr on a single mode") {
        CircuitResult result = run_text(
            "paths a\n"
            "photon a D\n"
            "pnr a.V 0\n");
        CHECK(approx(result.success_prob, 0.5));
        REQUIRE(result.steps.size() == 1);
        CHECK(approx(result.steps[0].probability, 0.5));
        CHECK(result.output.reg().size() == 1);
    }
    SUBCASE("herald_none with an efficiency keeps leak sectors") {
        CircuitResult result = run_text(
            "paths a b\n"
            "photon a H\n"
            "bs a b 0.70710678118654752 0.70710678118654752\n"
            "herald_none b 0.5\n");
        // photon crosses with probability 1/2; surviving trace 1/2 + 1/4
        CHECK(approx(result.success_prob, 0.75));
    }
    SUBCASE("herald_click on the tap mode") {
        CircuitResult result = run_text(
            "paths a b\n"
            "photon a H\n"
            "bs a b 0.70710678118654752 0.70710678118654752\n"
            "herald_click b.H 1\n");
        CHECK(approx(result.success_prob, 0.5));
    }
}

TEST_CASE("state-dependent failures report the line") {
    try {
        run_text("paths a\nphoton a H\nphoton a H\n");
        FAIL("expected a domain error");
    } catch (const std::domain_error& err) {
        CHECK(std::string(err.what()).find("line 3") != std::string::npos);
    }
    // orthogonal polarizations on one path are fine
    CHECK_NOTHROW(run_text("paths a\nphoton a D\nphoton a A\n"));
}

TEST_CASE("incremental path declarations stay within the mode cap") {
    CircuitResult result = run_text(
        "paths a b\n"
        "photon a H\n"
        "herald_none b\n"
        "paths c d e f g\n"   // register now a c d e f g: 12 modes
        "herald_none c\n"
        "herald_none d\n"
        "herald_none e\n"
        "herald_none f\n"
        "herald_none g\n");
    CHECK(approx(result.success_prob, 1.0));
    CHECK(result.output.reg() == Register::of_paths({"a"}));
}

TEST_CASE("run options allow a coarser pruning threshold") {
    CircuitSpec spec = parse_circuit(
        "paths a\n"
        "photon a H\n"
        "rot a 0.001\n");
    RunOptions coarse;
    coarse.prune_threshold = 0.1;
    CircuitResult pruned = run_circuit(spec, coarse);
    CircuitResult exact = run_circuit(spec);
    REQUIRE(exact.output.branch_count() == 1);
    CHECK(exact.output.branches().front().state.term_count() == 2);
    CHECK(pruned.output.branches().front().state.term_count() == 1);
}

TEST_CASE("herald_none works on a partially removed path") {
    CircuitResult result = run_text(
        "paths a\n"
        "photon a D\n"
        "pnr a.H 1\n"      // removes a.H, probability 1/2
        "herald_none a\n"  // conditions the remaining a.V mode
    );
    CHECK(approx(result.success_prob, 0.5));
    REQUIRE(result.steps.size() == 2);
    CHECK(approx(result.steps[0].probability, 0.5));
    CHECK(approx(result.steps[1].probability, 1.0));
    CHECK(result.output.reg().empty());
}
