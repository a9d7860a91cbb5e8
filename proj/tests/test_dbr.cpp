#include <doctest.h>

#include "fixtures.hpp"

using namespace qe;

TEST_CASE("kernel evaluation") {
    const std::vector<Complex> z = {Complex(0.4, 0.1)};
    const std::vector<Complex> w = {Complex(-0.2, 0.3)};
    CHECK(std::abs(kb_eval(fixtures::b_z(), z, w) - 1.0) < 1e-14);
    const Complex szego = 1.0 / (1.0 - z[0] * std::conj(w[0]));
    CHECK(std::abs(kb_eval(Poly(1), z, w) - szego) < 1e-14);
    CHECK(std::abs(kb_eval(fixtures::b_half(), {Complex(0.0)}, {Complex(0.0)}) - 0.75) < 1e-14);
    // Hermitian symmetry
    const Poly b = fixtures::b_half();
    CHECK(std::abs(kb_eval(b, z, w) - std::conj(kb_eval(b, w, z))) < 1e-14);
}

TEST_CASE("herglotz kernel cross-checked formulas") {
    const std::vector<Complex> z = {Complex(0.3, -0.2)};
    const std::vector<Complex> w = {Complex(0.1, 0.25)};
    const Complex szego = 1.0 / (1.0 - z[0] * std::conj(w[0]));
    CHECK(std::abs(herglotz_kernel_eval(Poly(1), z, w) - szego) < 1e-12);
    CHECK_NOTHROW(herglotz_kernel_eval(fixtures::b_half(), z, w));
    // b = 1 at z = 1 is singular; nearby points still evaluate
    const Complex v = herglotz_kernel_eval(fixtures::b_half(), {Complex(0.9)}, {Complex(0.9)});
    CHECK(std::abs(v) > 10.0);
}

TEST_CASE("node sets: determinism, constraints, serialization") {
    const Poly b = fixtures::b_half();
    const NodeSet a = NodeSet::sample(1, 64, 42, 0.9, &b);
    const NodeSet c = NodeSet::sample(1, 64, 42, 0.9, &b);
    REQUIRE(a.size() == 64);
    for (int i = 0; i < 64; ++i) {
        CHECK(std::norm(a.points[i][0]) <= 0.81 + 1e-12);
        CHECK(a.points[i][0] == c.points[i][0]);  // bitwise deterministic
    }
    const NodeSet other = NodeSet::sample(1, 64, 7, 0.9, &b);
    CHECK(a.points[0][0] != other.points[0][0]);

    const NodeSet back = NodeSet::from_json(a.to_json(), 1);
    REQUIRE(back.size() == a.size());
    for (int i = 0; i < a.size(); ++i) CHECK(std::abs(back.points[i][0] - a.points[i][0]) < 1e-15);
}

TEST_CASE("contractivity screening") {
    Poly big(1);
    big.set_coeff({0}, 0.9);
    big.set_coeff({1}, 0.9);
    NodeSet nodes = NodeSet::sample(1, 16, 42, 0.9);
    CHECK_THROWS_AS(HbContext(big, 10, std::move(nodes)), NotContractiveError);
}

TEST_CASE("H(b) norms for (1+z)/2: ||1||^2 -> 2, ||b||^2 -> 3") {
    const HbContext ctx = fixtures::make_ctx(fixtures::b_half(), 60, 16);
    CHECK(ctx.hb_norm_sq(Poly::constant(1, 1.0)) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(ctx.hb_norm_sq(ctx.b()) == doctest::Approx(3.0).epsilon(1e-3));
    // truncated estimates increase toward the limit
    CHECK(ctx.hb_norm_trunc_at(ctx.b(), 30) < ctx.hb_norm_trunc_at(ctx.b(), 60));
    CHECK(ctx.hb_norm_trunc_at(ctx.b(), 60) < 3.0);
}

TEST_CASE("membership scores agree with the norm estimators") {
    const HbContext ctx = fixtures::make_ctx(fixtures::b_half(), 30);
    const MembershipResult mb = ctx.membership_score(ctx.b());
    CHECK(mb.range_ok);
    CHECK(mb.score == doctest::Approx(3.0).epsilon(0.05));
    const MembershipResult m1 = ctx.membership_score(Poly::constant(1, 1.0));
    CHECK(m1.score == doctest::Approx(2.0).epsilon(0.05));
    // scores are monotone along the nested stages
    const auto trace = ctx.membership_trace(ctx.b(), fit_schedule(ctx.nodes().size()));
    for (size_t i = 1; i < trace.size(); ++i)
        CHECK(trace[i].result.score >= trace[i - 1].result.score - 1e-9);
}

TEST_CASE("verdicts on the three fixtures") {
    {
        const HbContext ctx = fixtures::make_ctx(fixtures::b_half(), 30);
        CHECK(qe_verdict(ctx).verdict == Verdict::NotQuasiExtreme);
    }
    {
        const HbContext ctx = fixtures::make_ctx(fixtures::b_twovar(), 12);
        CHECK(qe_verdict(ctx).verdict == Verdict::NotQuasiExtreme);
    }
    {
        const HbContext ctx = fixtures::make_ctx(fixtures::b_z(), 20);
        const VerdictReport rep = qe_verdict(ctx);
        CHECK(rep.verdict == Verdict::QuasiExtreme);
        CHECK(rep.evidence.defect <= 1e-12);
        CHECK(rep.evidence.score_b_diverges);
    }
    CHECK_THROWS(qe_verdict(fixtures::make_ctx(Poly::constant(1, 0.5), 5, 16)));
}

TEST_CASE("verdicts are stable across seeds") {
    for (std::uint64_t seed : {42ULL, 7ULL, 2026ULL}) {
        CHECK(qe_verdict(fixtures::make_ctx(fixtures::b_half(), 30, 256, seed)).verdict ==
              Verdict::NotQuasiExtreme);
        CHECK(qe_verdict(fixtures::make_ctx(fixtures::b_z(), 20, 256, seed)).verdict ==
              Verdict::QuasiExtreme);
    }
}

TEST_CASE("extrapolation helper") {
    // v(x) = 5 - 2x + x^2 sampled at three points recovers v(0)
    const std::vector<double> x = {0.1, 0.05, 0.025};
    std::vector<double> v;
    for (double xi : x) v.push_back(5.0 - 2.0 * xi + xi * xi);
    CHECK(extrapolate_to_zero(x, v) == doctest::Approx(5.0).epsilon(1e-12));
}
