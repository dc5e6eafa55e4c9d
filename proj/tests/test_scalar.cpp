#include <catch2/catch_amalgamated.hpp>

#include "fnet/scalar.hpp"

using fnet::Rational;
using fnet::frac;
using fnet::parse_amount;
using fnet::format_amount;

TEST_CASE("fraction and decimal literals parse exactly") {
    CHECK(parse_amount<Rational>("8/9") == Rational(8, 9));
    CHECK(parse_amount<Rational>("22/10") == Rational(11, 5));
    CHECK(parse_amount<Rational>("2.2") == Rational(11, 5));
    CHECK(parse_amount<Rational>("-3") == Rational(-3));
    CHECK(parse_amount<Rational>("0.125") == Rational(1, 8));
    CHECK(parse_amount<Rational>("-0.5") == Rational(-1, 2));
    CHECK(parse_amount<Rational>("007") == Rational(7));
}

TEST_CASE("bad literals are rejected") {
    CHECK_THROWS_AS(parse_amount<Rational>(""), fnet::input_error);
    CHECK_THROWS_AS(parse_amount<Rational>("1/0"), fnet::input_error);
    CHECK_THROWS_AS(parse_amount<Rational>("1e3"), fnet::input_error);
    CHECK_THROWS_AS(parse_amount<Rational>("two"), fnet::input_error);
    CHECK_THROWS_AS(parse_amount<Rational>("1/2/3"), fnet::input_error);
}

TEST_CASE("formatting is canonical") {
    CHECK(format_amount(Rational(22, 10)) == "11/5");
    CHECK(format_amount(Rational(6)) == "6");
    CHECK(format_amount(Rational(0)) == "0");
    CHECK(format_amount(Rational(-8, 9)) == "-8/9");
}

TEST_CASE("parse and format round-trip") {
    for (const char* text : {"0", "1", "8/9", "123/456", "-7/3"}) {
        const Rational v = parse_amount<Rational>(text);
        CHECK(parse_amount<Rational>(format_amount(v)) == v);
    }
}

TEST_CASE("float mode parses through the exact representation") {
    CHECK(parse_amount<double>("8/9") == Catch::Approx(8.0 / 9.0));
    CHECK(parse_amount<double>("2.2") == Catch::Approx(2.2));
}

TEST_CASE("double comparisons use the 1e-9 tolerance") {
    using T = fnet::scalar_traits<double>;
    CHECK(T::eq(1.0, 1.0 + 5e-10));
    CHECK_FALSE(T::eq(1.0, 1.0 + 5e-9));
    CHECK(T::lt(1.0, 1.0 + 5e-9));
    CHECK_FALSE(T::lt(1.0, 1.0 + 5e-10));
}

TEST_CASE("exact comparisons are strict") {
    using T = fnet::scalar_traits<Rational>;
    CHECK_FALSE(T::eq(Rational(1), Rational(1) + Rational(1, 1000000000000ll)));
    CHECK(T::lt(Rational(1), Rational(1) + Rational(1, 1000000000000ll)));
}
