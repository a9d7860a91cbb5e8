#include <doctest.h>

#include "qe/poly.hpp"

using namespace qe;

TEST_CASE("graded-lex enumeration and counts") {
    const auto basis = enumerate_basis(2, 3);
    CHECK(basis.size() == 10);  // C(5,2)
    CHECK(basis.front() == MultiIndex{0, 0});
    CHECK(basis.back() == MultiIndex{3, 0});
    for (size_t i = 1; i < basis.size(); ++i) CHECK(graded_lex_less(basis[i - 1], basis[i]));

    CHECK(enumerate_basis(1, 7).size() == 8);
    CHECK(enumerate_basis(3, 0).size() == 1);
}

TEST_CASE("monomial weights alpha!/|alpha|!") {
    CHECK(monomial_weight({0, 0}) == doctest::Approx(1.0));
    CHECK(monomial_weight({3}) == doctest::Approx(1.0));          // d=1: always 1
    CHECK(monomial_weight({1, 1}) == doctest::Approx(0.5));       // 1!1!/2!
    CHECK(monomial_weight({2, 1}) == doctest::Approx(1.0 / 3.0)); // 2!1!/3!
    CHECK(monomial_weight({2, 2, 1}) == doctest::Approx(4.0 / 120.0));
    // large entries stay exact through integer arithmetic
    CHECK(monomial_weight({10, 10}) == doctest::Approx(1.0 / 184756.0));
}

TEST_CASE("poly arithmetic and evaluation") {
    const Poly z1 = Poly::variable(2, 1);
    const Poly z2 = Poly::variable(2, 2);
    const Poly p = z1 * z2 + Poly::constant(2, 2.0);
    CHECK(p.degree() == 2);
    CHECK(p.coeff({1, 1}) == Complex(1.0));
    CHECK(p.evaluate({Complex(0.5), Complex(-1.0)}) == Complex(1.5));
    CHECK((p - p).is_zero());
    CHECK(p.shift_up(1).coeff({2, 1}) == Complex(1.0));
    CHECK(p.truncate(1).degree() == 0);
}

TEST_CASE("poly json round trip is canonical") {
    Poly p(2);
    p.set_coeff({0, 2}, {0.25, 0.0});
    p.set_coeff({1, 0}, {0.5, -1.0});
    const std::string s = p.to_json();
    const Poly q = Poly::from_json(s);
    CHECK(q.to_json() == s);
    CHECK((p - q).is_zero());
    CHECK_THROWS(Poly::from_json("{\"bad\":1}"));
}

TEST_CASE("reciprocal series") {
    // 1/(1-z) = sum z^n
    Poly p(1);
    p.set_coeff({0}, 1.0);
    p.set_coeff({1}, -1.0);
    const Poly r = reciprocal_series(p, 6);
    for (int n = 0; n <= 6; ++n) CHECK(r.coeff({n}) == Complex(1.0));
    const Poly check = (p * r).truncate(6);
    CHECK(check.coeff({0}) == Complex(1.0));
    CHECK(check.max_abs_coeff() == doctest::Approx(1.0));

    // d=2 sanity: p * reciprocal = 1 through the truncation degree
    Poly q(2);
    q.set_coeff({0, 0}, 2.0);
    q.set_coeff({1, 0}, {0.3, 0.1});
    q.set_coeff({0, 2}, -0.7);
    const Poly rq = reciprocal_series(q, 8);
    const Poly prod = (q * rq).truncate(8);
    CHECK(std::abs(prod.coeff({0, 0}) - 1.0) < 1e-14);
    CHECK((prod - Poly::constant(2, prod.coeff({0, 0}))).max_abs_coeff() < 1e-13);
}

TEST_CASE("szego kernel series") {
    const std::vector<Complex> w = {Complex(0.3, 0.1), Complex(-0.2, 0.0)};
    const Poly k = szego_kernel_series(w, 12);
    const std::vector<Complex> z = {Complex(0.2, -0.1), Complex(0.1, 0.3)};
    Complex zw = 0.0;
    for (int j = 0; j < 2; ++j) zw += z[j] * std::conj(w[j]);
    CHECK(std::abs(k.evaluate(z) - 1.0 / (1.0 - zw)) < 1e-10);
}

TEST_CASE("words length-then-lex") {
    const auto words = enumerate_words(2, 5);
    CHECK(words.size() == 63);  // 2^6 - 1
    CHECK(words.front().length() == 0);
    for (size_t i = 1; i < words.size(); ++i) CHECK(word_less(words[i - 1], words[i]));
    CHECK(word_profile(Word{{1, 2, 1}}, 2) == MultiIndex{2, 1});
}
