#pragma once

#include <Eigen/Dense>

#include "qe/dbr.hpp"

namespace qe {

/// Raised when an operation requires a non-quasi-extreme b.
struct QuasiExtremeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An admissible tuple (b_1..b_d): sum_j z_j b_j = b - b(0) exactly in
/// coefficient arithmetic, together with the per-component norm estimates
/// and the defect 1 - |b(0)|^2 - sum_j ||b_j||_b^2.
struct GleasonTuple {
    std::vector<Poly> b_js;
    std::vector<double> norms;  // ||b_j||_b^2 estimates
    double defect = 0.0;

    double norm_sum() const;
    std::string to_json() const;
};

/// Linear solution operator of the minimum-norm Gleason problem at a fixed
/// truncation: for rhs f in P_N it returns the tuple (h_1..h_d) in P_{N-1}^d
/// minimizing sum_j ||h_j||^2 (Delta^+ surrogate norm, kernel directions
/// penalized) subject to sum_j z_j h_j = f - f(0), with the constraints
/// re-enforced exactly in coefficient arithmetic afterwards.
class GleasonSolver {
public:
    GleasonSolver(const HbContext& ctx, int N);

    int N() const { return N_; }
    std::vector<Poly> solve(const Poly& f) const;

private:
    const HbContext& ctx_;
    int N_;
    int d_;
    TruncatedSpace var_space_;                  // P_{N-1}, per component
    std::vector<MultiIndex> constraint_rows_;   // alpha with 1 <= |alpha| <= N
    Eigen::MatrixXcd Hinv_;                     // per-component inverse objective
    std::vector<Eigen::MatrixXcd> Adense_;      // K x m per component
    Eigen::LDLT<Eigen::MatrixXcd> schur_;       // A H^-1 A^H
    bool forced_1d_ = false;

    void enforce_constraints(const Poly& f, std::vector<Poly>& tuple) const;
};

/// Minimal-defect admissible tuple. Norms are extrapolated over truncations
/// unless extrapolate = false (then the trunc-N surrogate values are kept).
GleasonTuple solve_min_defect(const HbContext& ctx, bool extrapolate = true);
GleasonTuple solve_min_defect_at(const HbContext& ctx, int N, bool extrapolate = true);

/// Canonical tuple through the Herglotz space: minimal Gleason solution of
/// b/(1-b) in L(b), mapped back by multiplication with (1-b(0))(1-b).
/// Independent route; agrees with solve_min_defect within cross_tol.
GleasonTuple canonical_tuple(const HbContext& ctx);

/// Finite model of H(b): ran(Delta_N^{1/2}) with orthonormal coordinates,
/// carrying matrix representations of the Gleason operators X_j.
struct GleasonOperators {
    int d = 1;
    int N = 0;
    int rank = 0;
    TruncatedSpace space;           // P_N
    Eigen::MatrixXcd to_model;      // rank x dim: Delta^{-1/2} projection
    Eigen::MatrixXcd from_model;    // dim x rank: Delta^{1/2} embedding
    std::vector<Eigen::MatrixXcd> X;  // rank x rank
    GleasonTuple tuple;

    Eigen::VectorXcd project(const Poly& f) const;
    Poly lift(const Eigen::VectorXcd& c) const;
    /// Model-space residual ||v - w||.
    static double model_dist(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w);
};

GleasonOperators build_gleason_operators(const HbContext& ctx, const GleasonTuple& tuple);
GleasonOperators build_gleason_operators_at(const HbContext& ctx, const GleasonTuple& tuple, int N);

/// Model representation of X_j k_w = conj(w_j) k_w - conj(b(w)) b_j.
Eigen::VectorXcd apply_X_on_kernel(const HbContext& ctx, const GleasonOperators& ops, int j,
                                   const std::vector<Complex>& w);

/// Model representation of the truncated kernel k^b_w itself.
Eigen::VectorXcd kernel_model_vector(const HbContext& ctx, const GleasonOperators& ops,
                                     const std::vector<Complex>& w);

/// (X_j^* f)(z) = z_j f(z) - <f, b_j>_b b(z), exact polynomial once the
/// inner product is estimated.
Poly apply_Xstar(const HbContext& ctx, const GleasonTuple& tuple, int j, const Poly& f);

/// Max absolute mismatch of the rank-two defect identity
///   I - sum_j X_j^* X_j = k_0 (x) k_0 + |a_0|^2 b (x) b
/// tested against reproducing kernels over node pairs, using the closed
/// kernel formulas only (no operator inversion). a0_sq_override, if >= 0,
/// replaces the tuple defect (for sensitivity checks).
double defect_identity_residual(const HbContext& ctx, const GleasonTuple& tuple,
                                const std::vector<std::pair<int, int>>& pairs,
                                double a0_sq_override = -1.0);

/// |a_0|^2 = 1 / (1 + ||b||_b^2); throws QuasiExtremeError when the
/// membership trace of b diverges.
double a0_from_hbnorm(const HbContext& ctx);

}  // namespace qe
