#include <doctest.h>

#include "fixtures.hpp"
#include "qe/onevar.hpp"

using namespace qe;

TEST_CASE("circle grid rejects bad sizes and non-contractive b") {
    CHECK_THROWS_AS(CircleGrid::build(fixtures::b_half(), 100), std::invalid_argument);
    CHECK_THROWS_AS(CircleGrid::build(fixtures::b_half(), 2), std::invalid_argument);
    Poly big(1);
    big.set_coeff({0}, 0.9);
    big.set_coeff({1}, 0.9);
    CHECK_THROWS_AS(CircleGrid::build(big, 256), NotContractiveError);
}

TEST_CASE("Szego integral of b = (1+z)/2 is -log 4") {
    // 1 - |b|^2 = (1 - cos t)/2 on the circle; the integral of log is -2 log 2
    const SzegoResult s = szego_integral(fixtures::b_half(), 4096);
    CHECK_FALSE(s.minus_inf);
    CHECK(s.value == doctest::Approx(-std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("Szego integral of b = z/2 is log(3/4)") {
    const SzegoResult s = szego_integral(fixtures::b_halfz(), 1024);
    CHECK_FALSE(s.minus_inf);
    CHECK(s.value == doctest::Approx(std::log(0.75)).epsilon(1e-9));
}

TEST_CASE("Szego integral of an inner b diverges") {
    const SzegoResult s = szego_integral(fixtures::b_z(), 1024);
    CHECK(s.minus_inf);
}

TEST_CASE("outer companion of b = (1+z)/2 is (1-z)/2") {
    const OuterResult out = outer_a(fixtures::b_half(), 4096);
    CHECK(out.a0 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(out.a.coeff({1}) - Complex(-0.5, 0.0)) < 1e-6);
    for (int n = 2; n <= 10; ++n)
        CHECK(std::abs(out.a.coeff({n})) < 1e-6);
    CHECK(out.boundary_residual < 1e-6);
}

TEST_CASE("outer companion of b = z/2 is the constant sqrt(3)/2") {
    const OuterResult out = outer_a(fixtures::b_halfz(), 2048);
    CHECK(out.a0 == doctest::Approx(std::sqrt(0.75)).epsilon(1e-8));
    for (int n = 1; n <= 10; ++n)
        CHECK(std::abs(out.a.coeff({n})) < 1e-8);
    CHECK(out.boundary_residual < 1e-8);
}

TEST_CASE("Sarason coefficient cross-check") {
    {
        const HbContext ctx = fixtures::make_ctx(fixtures::b_half(), 100, 256);
        const OuterResult out = outer_a(fixtures::b_half(), 4096);
        const SarasonCheck chk = sarason_coeff_check(ctx, out, 8);
        REQUIRE(chk.residuals.size() == 8);
        for (double r : chk.residuals) CHECK(r < 1e-5);
        CHECK(chk.a0_residual < 1e-4);
    }
    {
        const HbContext ctx = fixtures::make_ctx(fixtures::b_halfz(), 100, 256);
        const OuterResult out = outer_a(fixtures::b_halfz(), 2048);
        const SarasonCheck chk = sarason_coeff_check(ctx, out, 8);
        for (double r : chk.residuals) CHECK(r < 1e-5);
        CHECK(chk.a0_residual < 1e-4);
    }
}
