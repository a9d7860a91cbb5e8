#pragma once

#include <Eigen/Dense>
#include <map>

#include "qe/poly.hpp"

namespace qe {

/// Finite section of the Drury-Arveson space: all monomials of degree <= N
/// with their norm weights, in graded-lex order.
struct TruncatedSpace {
    int d = 1;
    int N = 0;
    std::vector<MultiIndex> basis;
    Eigen::VectorXd weights;
    std::map<MultiIndex, int, GradedLexLess> index;

    TruncatedSpace() = default;
    TruncatedSpace(int d, int N);

    int size() const { return static_cast<int>(basis.size()); }

    /// Coefficient vector of p in the weighted-orthonormal basis e_alpha = z^alpha / sqrt(w_alpha).
    /// Terms of degree > N are an error.
    Eigen::VectorXcd to_vector(const Poly& p) const;
    Poly from_vector(const Eigen::VectorXcd& v) const;
};

/// H^2_d inner product of polynomials; exact (no truncation).
Complex h2_inner(const Poly& p, const Poly& q);

double h2_norm_sq(const Poly& p);

/// M_b^* f, exact: <M_b^* f, g> = <f, b g> for all polynomials g.
Poly mult_adjoint_apply(const Poly& b, const Poly& f);

/// Degree-N compression of I - M_b^* M_b - M_a^* M_a in orthonormal coordinates.
/// Entries are exact polynomial inner products.
Eigen::MatrixXcd column_positivity_matrix(const Poly& b, const Poly& a, int N);

/// lambda_min of the compression above. >= ~0 is necessary for
/// M_a^* M_a + M_b^* M_b <= I, and sufficient in the limit N -> infinity.
double column_positivity(const Poly& b, const Poly& a, int N);

/// Largest singular value of M_b from the degree-N section to the
/// degree-(N + deg b) section; a lower bound for ||M_b||, nondecreasing in N.
double multiplier_norm_lower(const Poly& b, int N);

/// Row-major CSV (re,im pairs) of a matrix in graded-lex basis order, for debugging.
void write_matrix_csv(const Eigen::MatrixXcd& m, const std::string& path);

}  // namespace qe
