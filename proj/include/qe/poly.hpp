#pragma once

#include <complex>
#include <map>
#include <string>

#include "qe/multiindex.hpp"

namespace qe {

using Complex = std::complex<double>;

/// Sparse polynomial in d variables: graded-lex ordered map alpha -> coefficient.
/// Zero coefficients are never stored.
class Poly {
public:
    using CoeffMap = std::map<MultiIndex, Complex, GradedLexLess>;

    explicit Poly(int dim = 1) : dim_(dim) {}

    static Poly constant(int dim, Complex c);
    /// The coordinate monomial z_j (1-based j).
    static Poly variable(int dim, int j);
    static Poly monomial(int dim, const MultiIndex& alpha, Complex c);

    int dim() const { return dim_; }
    /// Max |alpha| over stored keys; -1 for the zero polynomial.
    int degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return degree() <= 0; }

    Complex coeff(const MultiIndex& alpha) const;
    void set_coeff(const MultiIndex& alpha, Complex c);
    void add_coeff(const MultiIndex& alpha, Complex c);
    const CoeffMap& coeffs() const { return coeffs_; }

    Complex at_zero() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(Complex s) const;
    Poly operator-() const { return *this * Complex(-1.0, 0.0); }

    /// Multiply by the coordinate z_j (1-based).
    Poly shift_up(int j) const;
    /// Keep only terms with |alpha| <= maxdeg.
    Poly truncate(int maxdeg) const;
    /// Drop coefficients with |c| <= eps.
    Poly pruned(double eps) const;

    Complex evaluate(const std::vector<Complex>& z) const;

    double max_abs_coeff() const;

    /// Canonical JSON: {"d": d, "coeffs": [{"alpha": [...], "re": .., "im": ..}]}
    /// sorted graded-lex, zero coefficients omitted.
    std::string to_json() const;
    static Poly from_json(const std::string& text);

private:
    int dim_;
    CoeffMap coeffs_;
};

inline Poly operator*(Complex s, const Poly& p) { return p * s; }

/// Reciprocal power series of p (p(0) != 0) through total degree N.
Poly reciprocal_series(const Poly& p, int N);

/// Truncated Taylor series of the Drury-Arveson kernel k_w = 1/(1 - z w*).
Poly szego_kernel_series(const std::vector<Complex>& w, int N);

}  // namespace qe
