#pragma once

#include "qe/gleason.hpp"

namespace qe {

/// Data for evaluating Gram matrices of colligation images in closed form,
/// i.e. through reproducing-kernel identities instead of the (lossy) finite
/// matrix compressions. bb_inner fixes the convention for <b, b>_b.
struct ColligationGram {
    Poly b;
    std::vector<Poly> b_js;
    std::vector<double> nj;      // ||b_j||_b^2
    double a0 = 0.0;             // 0 when no a-row is present
    double bb_inner = 0.0;
    std::vector<std::vector<Complex>> nodes;
    bool out_eval0 = false;      // output row f -> f(0) + b(0) lambda
    bool out_a = false;          // output row f -> -a0 <f, b>_b + a0 lambda
};

/// Colligation [A B; C D] : H^{state} (+) C  ->  (H^{state})^d (+) C^{out}.
struct Colligation {
    int d = 1;
    int state_dim = 0;
    int out_dim = 1;
    std::vector<Eigen::MatrixXcd> A;  // d blocks, state x state
    Eigen::MatrixXcd B;               // state x d
    Eigen::MatrixXcd C;               // out x state
    Eigen::VectorXcd D;               // out
    std::optional<ColligationGram> gram;
};

/// S(z) = D + C (I - sum z_j A_j)^{-1} (sum z_j B_j).
Eigen::VectorXcd transfer_eval(const Colligation& col, const std::vector<Complex>& z);

/// Taylor coefficients of the transfer function through total degree N_out,
/// by the word-to-monomial state recursion s_alpha = sum_j A_j s_{alpha-e_j}.
/// Throws on state blow-up (non-convergent series inside the ball).
std::vector<Poly> transfer_taylor(const Colligation& col, int N_out);

/// Functional-model colligation of b: A_j = X_j on the model, B_j = b_j,
/// C = evaluation at 0, D = b(0). Its transfer function reproduces b.
Colligation functional_model_colligation(const HbContext& ctx, const GleasonOperators& ops);

/// Colligation V of the companion multiplier a (out_dim 1), or the combined
/// pair U~ = [b-row; a-row] (out_dim 2) when include_b_row is set.
/// a0 must be the positive square root of the tuple defect.
Colligation build_a_colligation(const HbContext& ctx, const GleasonOperators& ops, double a0,
                                bool include_b_row);

/// || Gram(U x_i, U x_j) - Gram(x_i, x_j) || on a whitened spanning set
/// {k_w} U {b} U {scalar input}, computed from the closed kernel formulas
/// when gram data is attached, otherwise || U^H U - I || of the raw blocks.
double isometry_residual(const Colligation& col, double whiten_cutoff = 1e-6);

/// lambda_max of the whitened image Gram: <= 1 (+ noise) iff the colligation
/// is a contraction on the spanned subspace.
double colligation_contractivity(const Colligation& col, double whiten_cutoff = 1e-6);

struct ACertificate {
    Verdict verdict = Verdict::Inconclusive;
    double a0 = 0.0;
    double defect = 0.0;
    double iso_residual = -1.0;           // -1 when not computed (a0 ~ 0)
    double defect_identity = -1.0;
    double positivity_min_eig = 0.0;
    Poly a;
    std::vector<MembershipStage> trace_b;
    std::vector<MembershipStage> trace_one;
    std::vector<int> stage_Ns;
};

/// Full pipeline: verdict, minimal tuple, companion multiplier a via the
/// transfer function of V, Richardson-extrapolated over the truncation
/// stages (default {N, 3N/2, 2N}), plus the verification residuals.
/// For a quasi-extreme b the certificate carries a == 0.
ACertificate construct_a(const HbContext& ctx, int N_out, int positivity_N,
                         std::vector<int> stage_Ns = {});

}  // namespace qe
