#include <doctest.h>

#include "qe/hardy.hpp"

using namespace qe;

namespace {

Poly onevar_b_half() {  // (1 + z)/2
    Poly b(1);
    b.set_coeff({0}, 0.5);
    b.set_coeff({1}, 0.5);
    return b;
}

}  // namespace

TEST_CASE("h2 inner products") {
    const Poly z1 = Poly::variable(2, 1);
    const Poly z2 = Poly::variable(2, 2);
    CHECK(h2_inner(z1, z1) == Complex(1.0));
    CHECK(h2_inner(z1 * z2, z1 * z2) == Complex(0.5));
    CHECK(h2_inner(Poly::constant(2, 1.0), z1) == Complex(0.0));
    CHECK(h2_norm_sq(z1 + z2) == doctest::Approx(2.0));
}

TEST_CASE("truncated space coordinates") {
    const TruncatedSpace sp(2, 4);
    CHECK(sp.size() == 15);
    for (int i = 0; i < sp.size(); ++i) CHECK(sp.weights[i] > 0.0);
    Poly p(2);
    p.set_coeff({1, 1}, {2.0, -1.0});
    p.set_coeff({0, 0}, 3.0);
    const Eigen::VectorXcd v = sp.to_vector(p);
    // orthonormal coordinates preserve the H^2 norm
    CHECK(v.squaredNorm() == doctest::Approx(h2_norm_sq(p)));
    CHECK((sp.from_vector(v) - p).max_abs_coeff() < 1e-14);
}

TEST_CASE("multiplication adjoint") {
    const Poly z1 = Poly::variable(2, 1);
    CHECK((mult_adjoint_apply(z1, z1) - Poly::constant(2, 1.0)).max_abs_coeff() < 1e-14);
    Poly b(2);
    b.set_coeff({0, 0}, {0.3, 0.2});
    b.set_coeff({1, 0}, 0.4);
    CHECK((mult_adjoint_apply(b, Poly::constant(2, 1.0)) -
           Poly::constant(2, std::conj(Complex(0.3, 0.2))))
              .max_abs_coeff() < 1e-14);
    CHECK(mult_adjoint_apply(Poly(2), b).is_zero());

    // adjoint identity <M_b^* f, g> = <f, b g> on a few monomials
    const Poly f = Poly::monomial(2, {2, 1}, 1.0);
    const Poly mf = mult_adjoint_apply(b, f);
    for (const MultiIndex& alpha : enumerate_basis(2, 3)) {
        const Poly g = Poly::monomial(2, alpha, 1.0);
        CHECK(std::abs(h2_inner(mf, g) - h2_inner(f, b * g)) < 1e-13);
    }
}

TEST_CASE("column positivity and multiplier norm bound") {
    const Poly b = onevar_b_half();
    Poly a(1);  // exact companion (1 - z)/2
    a.set_coeff({0}, 0.5);
    a.set_coeff({1}, -0.5);
    for (int N : {5, 10, 20}) CHECK(column_positivity(b, a, N) >= -1e-12);

    // b alone is contractive; doubling it is not
    CHECK(multiplier_norm_lower(b, 10) <= 1.0 + 1e-12);
    CHECK(multiplier_norm_lower(b * 2.0, 6) > 1.2);

    // d=1: multiplier norm equals sup norm; for z/2 the bound approaches 1/2
    Poly half_z(1);
    half_z.set_coeff({1}, 0.5);
    CHECK(multiplier_norm_lower(half_z, 8) == doctest::Approx(0.5).epsilon(1e-10));
}
