#include <doctest.h>

#include <random>

#include "qe/fock.hpp"

using namespace qe;

namespace {

Word W(std::initializer_list<int> letters) { return Word{std::vector<int>(letters)}; }

FockCoeffs random_coeffs(int d, int L, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FockCoeffs f;
    f.d = d;
    f.L = L;
    for (const Word& w : enumerate_words(d, L)) f.set_coeff(w, {u(rng), u(rng)});
    return f;
}

void scale(FockCoeffs& f, double s) {
    for (auto& [w, c] : f.coeffs) c *= s;
}

}  // namespace

TEST_CASE("left creation matrices are a row isometry family") {
    const int d = 2, L = 4;
    const FockBasis basis(d, L);
    std::vector<Eigen::MatrixXcd> Ls;
    for (int i = 1; i <= d; ++i) Ls.push_back(left_creation_matrix(d, i, L));

    // L_i^H L_i = I on words of length <= L-1 (truncation kills the top level)
    const FockBasis sub(d, L - 1);
    for (int i = 0; i < d; ++i) {
        const Eigen::MatrixXcd G = Ls[i].adjoint() * Ls[i];
        CHECK((G.topLeftCorner(sub.size(), sub.size()) -
               Eigen::MatrixXcd::Identity(sub.size(), sub.size()))
                  .norm() < 1e-14);
    }
    CHECK((Ls[0].adjoint() * Ls[1]).norm() < 1e-14);  // orthogonal ranges
}

TEST_CASE("operator matrix composes words on the left") {
    FockCoeffs f;
    f.d = 2;
    f.L = 3;
    f.set_coeff(W({}), 0.5);
    f.set_coeff(W({1, 2}), Complex(0.0, 1.0));

    const Eigen::MatrixXcd M = fock_operator_matrix(f);
    const Eigen::MatrixXcd byhand =
        0.5 * Eigen::MatrixXcd::Identity(M.rows(), M.cols()) +
        Complex(0.0, 1.0) * left_creation_matrix(2, 1, 3) * left_creation_matrix(2, 2, 3);
    CHECK((M - byhand).norm() < 1e-14);
}

TEST_CASE("symmetrize sums coefficients over monomial profiles") {
    FockCoeffs f;
    f.d = 2;
    f.L = 2;
    f.set_coeff(W({1, 2}), 0.25);
    f.set_coeff(W({2, 1}), 0.5);
    f.set_coeff(W({1}), 1.0);
    const Poly p = symmetrize(f);
    CHECK(std::abs(p.coeff({1, 1}) - Complex(0.75, 0.0)) < 1e-15);
    CHECK(std::abs(p.coeff({1, 0}) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(p.coeff({0, 2})) == 0.0);
}

TEST_CASE("shift_nonvanishing picks the minimal word and reindexes exactly") {
    FockCoeffs a;
    a.d = 2;
    a.L = 3;
    a.set_coeff(W({1, 2}), 0.3);
    a.set_coeff(W({1, 2, 1}), Complex(0.1, -0.2));
    a.set_coeff(W({2, 2, 2}), 0.7);

    const ShiftResult r = shift_nonvanishing(a);
    CHECK(r.v == W({1, 2}));
    CHECK(std::abs(r.shifted.coeff(W({})) - Complex(0.3, 0.0)) < 1e-15);
    CHECK(std::abs(r.shifted.coeff(W({1})) - Complex(0.1, -0.2)) < 1e-15);
    CHECK(std::abs(r.shifted.coeff(W({2, 2, 2}))) == 0.0);  // (2,2,2) has no prefix (1,2)
}

TEST_CASE("shift of a unit with nonzero constant term is the identity") {
    FockCoeffs a;
    a.d = 2;
    a.L = 2;
    a.set_coeff(W({}), 0.4);
    a.set_coeff(W({2}), 0.1);
    const ShiftResult r = shift_nonvanishing(a);
    CHECK(r.v == W({}));
    CHECK(r.shifted.coeffs == a.coeffs);
}

TEST_CASE("JSON round-trip") {
    FockCoeffs a;
    a.d = 3;
    a.L = 2;
    a.set_coeff(W({3, 1}), Complex(0.25, -1.5));
    const FockCoeffs back = FockCoeffs::from_json(a.to_json());
    CHECK(back.d == 3);
    CHECK(back.L == 2);
    CHECK(std::abs(back.coeff(W({3, 1})) - Complex(0.25, -1.5)) < 1e-15);
    CHECK_THROWS(FockCoeffs::from_json("{\"d\":2}"));
    CHECK_THROWS(FockCoeffs::from_json(
        "{\"d\":2,\"L\":1,\"coeffs\":[{\"word\":[5],\"re\":1,\"im\":0}]}"));
}

TEST_CASE("matrix-level shift preserves column contractivity") {
    const int d = 2, L = 5;
    for (std::uint64_t seed : {42u, 7u, 2026u}) {
        std::mt19937_64 rng(seed);
        FockCoeffs b = random_coeffs(d, L, rng);
        FockCoeffs a = random_coeffs(d, L, rng);
        a.coeffs.erase(Word{});  // force a nontrivial shift word
        a.coeffs.erase(W({1}));

        // scale the pair so [B; A] is a strict column contraction
        const Eigen::MatrixXcd Bm = fock_operator_matrix(b);
        Eigen::MatrixXcd Am = fock_operator_matrix(a);
        Eigen::MatrixXcd stacked(2 * Bm.rows(), Bm.cols());
        stacked << Bm, Am;
        const double smax = stacked.jacobiSvd().singularValues()(0);
        scale(b, 0.95 / smax);
        scale(a, 0.95 / smax);

        const double before = column_contractivity_fock(b, a);
        CHECK(before > 0.0);

        const ShiftResult r = shift_nonvanishing(a);
        CHECK(r.v.length() >= 1);
        CHECK(std::abs(symmetrize(r.shifted).at_zero()) > 0.0);

        // exact operator-level comparison: A~ = L_v^* A
        Eigen::MatrixXcd Lv = Eigen::MatrixXcd::Identity(Bm.rows(), Bm.cols());
        for (int letter : r.v.letters) Lv = Lv * left_creation_matrix(d, letter, L);
        Am = Lv.adjoint() * fock_operator_matrix(a);
        const Eigen::MatrixXcd Bs = fock_operator_matrix(b);
        const Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(Bs.rows(), Bs.cols()) -
                                   Bs.adjoint() * Bs - Am.adjoint() * Am;
        const double after =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Q).eigenvalues().minCoeff();
        CHECK(after >= before - 1e-10);
    }
}
