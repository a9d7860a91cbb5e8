#include <doctest.h>

#include "fixtures.hpp"
#include "qe/realization.hpp"

using namespace qe;

namespace {

Colligation model_of(const HbContext& ctx) {
    const GleasonTuple t = solve_min_defect(ctx);
    const GleasonOperators ops = build_gleason_operators(ctx, t);
    return functional_model_colligation(ctx, ops);
}

}  // namespace

TEST_CASE("functional-model transfer function reproduces b") {
    for (int which = 0; which < 2; ++which) {
        const HbContext ctx = which == 0 ? fixtures::make_ctx(fixtures::b_half(), 30, 32)
                                         : fixtures::make_ctx(fixtures::b_twovar(), 12, 32);
        const Colligation M = model_of(ctx);
        const std::vector<Poly> s = transfer_taylor(M, 10);
        REQUIRE(s.size() == 1);
        CHECK((s[0] - ctx.b()).max_abs_coeff() < 1e-8);

        std::vector<Complex> z(ctx.b().dim(), Complex(0.3, 0.1));
        const Eigen::VectorXcd at_z = transfer_eval(M, z);
        CHECK(std::abs(at_z(0) - s[0].evaluate(z)) < 1e-8);
    }
}

TEST_CASE("colligations are contractive and U~ is isometric") {
    {
        const HbContext ctx = fixtures::make_ctx(fixtures::b_half(), 30, 64);
        const GleasonTuple t = solve_min_defect(ctx);
        const GleasonOperators ops = build_gleason_operators(ctx, t);
        const Colligation U = build_a_colligation(ctx, ops, std::sqrt(t.defect), true);
        CHECK(isometry_residual(U) < 1e-10);
        CHECK(colligation_contractivity(U) < 1.0 + 1e-8);
        const Colligation V = build_a_colligation(ctx, ops, std::sqrt(t.defect), false);
        CHECK(colligation_contractivity(V) < 1.0 + 1e-8);
    }
    {
        const HbContext ctx = fixtures::make_ctx(fixtures::b_twovar(), 12, 64);
        const GleasonTuple t = solve_min_defect(ctx);
        const GleasonOperators ops = build_gleason_operators(ctx, t);
        const Colligation U = build_a_colligation(ctx, ops, std::sqrt(t.defect), true);
        CHECK(isometry_residual(U) < 1e-10);
    }
}

TEST_CASE("a0 = 0 is rejected when building V") {
    const HbContext ctx = fixtures::make_ctx(fixtures::b_z(), 12, 16);
    const GleasonTuple t = solve_min_defect(ctx);
    const GleasonOperators ops = build_gleason_operators(ctx, t);
    CHECK_THROWS_AS(build_a_colligation(ctx, ops, 0.0, false), QuasiExtremeError);
}

TEST_CASE("construct_a recovers a = (1-z)/2 for b = (1+z)/2") {
    const HbContext ctx = fixtures::make_ctx(fixtures::b_half(), 60, 256);
    const ACertificate cert = construct_a(ctx, 16, 20);
    CHECK(cert.verdict == Verdict::NotQuasiExtreme);
    CHECK(cert.defect == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(cert.a0 == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(cert.iso_residual < 1e-8);
    CHECK(cert.defect_identity < 1e-8);
    CHECK(cert.positivity_min_eig > -1e-6);

    Poly expect(1);
    expect.set_coeff({0}, 0.5);
    expect.set_coeff({1}, -0.5);
    CHECK((cert.a - expect).max_abs_coeff() < 1e-6);
}

TEST_CASE("construct_a gives the constant sqrt(3)/2 for b = z/2") {
    const HbContext ctx = fixtures::make_ctx(fixtures::b_halfz(), 40, 256);
    const ACertificate cert = construct_a(ctx, 12, 16);
    CHECK(cert.verdict == Verdict::NotQuasiExtreme);
    CHECK(cert.a0 == doctest::Approx(std::sqrt(0.75)).epsilon(1e-4));
    Poly expect = Poly::constant(1, std::sqrt(0.75));
    CHECK((cert.a - expect).max_abs_coeff() < 1e-5);
}

TEST_CASE("construct_a on a quasi-extreme b refuses a nontrivial a") {
    const HbContext ctx = fixtures::make_ctx(fixtures::b_z(), 20, 256);
    const ACertificate cert = construct_a(ctx, 10, 12);
    CHECK(cert.verdict == Verdict::QuasiExtreme);
    CHECK(cert.defect <= 1e-8);
    CHECK(cert.a.max_abs_coeff() == 0.0);
    CHECK(cert.a0 == 0.0);
}

TEST_CASE("isometry_residual falls back to raw blocks without gram data") {
    const HbContext ctx = fixtures::make_ctx(fixtures::b_half(), 20, 32);
    Colligation M = model_of(ctx);
    M.gram.reset();
    CHECK(isometry_residual(M) >= 0.0);
}
