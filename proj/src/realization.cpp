#include "qe/realization.hpp"

namespace qe {

namespace {

// Image of one colligation input in the closed-form Gram bookkeeping:
// j-th state slot equals kcoef_j * k_{w} + t * b_j, plus the output rows y.
struct GramImage {
    int widx = -1;                 // index into gram.nodes, -1 when no kernel part
    std::vector<Complex> kcoef;    // per-slot kernel coefficient (conj(w_j))
    Complex t = 0.0;               // shared coefficient on b_j
    Eigen::VectorXcd y;
};

Eigen::MatrixXcd input_gram(const ColligationGram& g) {
    const int n = static_cast<int>(g.nodes.size());
    Eigen::MatrixXcd G(n + 2, n + 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = kb_eval(g.b, g.nodes[i], g.nodes[j]);
    for (int i = 0; i < n; ++i) {
        const Complex bi = g.b.evaluate(g.nodes[i]);
        G(i, n) = bi;              // <b, k_{w_i}>
        G(n, i) = std::conj(bi);
        G(i, n + 1) = 0.0;
        G(n + 1, i) = 0.0;
    }
    G(n, n) = g.bb_inner;
    G(n, n + 1) = 0.0;
    G(n + 1, n) = 0.0;
    G(n + 1, n + 1) = 1.0;
    return G;
}

std::vector<GramImage> colligation_images(const Colligation& col) {
    const ColligationGram& g = *col.gram;
    const int d = col.d;
    const int n = static_cast<int>(g.nodes.size());
    const Complex b0 = g.b.at_zero();
    const int out = (g.out_eval0 ? 1 : 0) + (g.out_a ? 1 : 0);

    auto outputs = [&](Complex eval0_val, Complex a_val) {
        Eigen::VectorXcd y(out);
        int r = 0;
        if (g.out_eval0) y[r++] = eval0_val;
        if (g.out_a) y[r++] = a_val;
        return y;
    };

    std::vector<GramImage> imgs;
    for (int i = 0; i < n; ++i) {
        GramImage im;
        im.widx = i;
        im.kcoef.resize(d);
        for (int j = 0; j < d; ++j) im.kcoef[j] = std::conj(g.nodes[i][j]);
        const Complex bw_c = std::conj(g.b.evaluate(g.nodes[i]));
        im.t = -bw_c;
        im.y = outputs(1.0 - b0 * bw_c, -g.a0 * bw_c);
        imgs.push_back(std::move(im));
    }
    {
        GramImage im;  // input b
        im.kcoef.assign(d, 0.0);
        im.t = 1.0;
        im.y = outputs(b0, -g.a0 * g.bb_inner);
        imgs.push_back(std::move(im));
    }
    {
        GramImage im;  // scalar input
        im.kcoef.assign(d, 0.0);
        im.t = 1.0;
        im.y = outputs(b0, g.a0);
        imgs.push_back(std::move(im));
    }
    return imgs;
}

Eigen::MatrixXcd image_gram(const Colligation& col) {
    const ColligationGram& g = *col.gram;
    const int d = col.d;
    const auto imgs = colligation_images(col);
    const int m = static_cast<int>(imgs.size());

    // Cache b_j point values.
    const int n = static_cast<int>(g.nodes.size());
    Eigen::MatrixXcd bjv(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) bjv(i, j) = g.b_js[j].evaluate(g.nodes[i]);

    Eigen::MatrixXcd G(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            const GramImage& ip = imgs[p];
            const GramImage& iq = imgs[q];
            Complex s = 0.0;
            for (int j = 0; j < d; ++j) {
                const Complex aq = iq.widx >= 0 ? iq.kcoef[j] : Complex(0.0);
                const Complex ap = ip.widx >= 0 ? ip.kcoef[j] : Complex(0.0);
                if (iq.widx >= 0 && ip.widx >= 0)
                    s += aq * std::conj(ap) * kb_eval(g.b, g.nodes[ip.widx], g.nodes[iq.widx]);
                if (iq.widx >= 0)
                    s += aq * std::conj(ip.t) * std::conj(bjv(iq.widx, j));
                if (ip.widx >= 0) s += iq.t * std::conj(ap) * bjv(ip.widx, j);
                s += iq.t * std::conj(ip.t) * g.nj[j];
            }
            s += ip.y.dot(iq.y);  // sum_r y_q[r] conj(y_p[r])
            G(p, q) = s;
        }
    return G;
}

// Whitening transform of a PSD Gram: columns u_i / sqrt(lambda_i) above the
// relative cutoff.
Eigen::MatrixXcd whitener(const Eigen::MatrixXcd& G, double cutoff_rel) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < G.rows(); ++i)
        if (es.eigenvalues()[i] > cutoff_rel * lmax) keep.push_back(i);
    Eigen::MatrixXcd W(G.rows(), keep.size());
    for (size_t k = 0; k < keep.size(); ++k)
        W.col(k) = es.eigenvectors().col(keep[k]) / std::sqrt(es.eigenvalues()[keep[k]]);
    return W;
}

double spectral_norm_hermitian(const Eigen::MatrixXcd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd stacked_matrix(const Colligation& col) {
    const int m = col.state_dim;
    Eigen::MatrixXcd U(col.d * m + col.out_dim, m + 1);
    for (int j = 0; j < col.d; ++j) {
        U.block(j * m, 0, m, m) = col.A[j];
        U.block(j * m, m, m, 1) = col.B.col(j);
    }
    U.block(col.d * m, 0, col.out_dim, m) = col.C;
    U.block(col.d * m, m, col.out_dim, 1) = col.D;
    return U;
}

}  // namespace

Eigen::VectorXcd transfer_eval(const Colligation& col, const std::vector<Complex>& z) {
    const int m = col.state_dim;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(m, m);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(m);
    for (int j = 0; j < col.d; ++j) {
        P -= z[j] * col.A[j];
        rhs += z[j] * col.B.col(j);
    }
    return col.D + col.C * P.partialPivLu().solve(rhs);
}

std::vector<Poly> transfer_taylor(const Colligation& col, int N_out) {
    const int d = col.d;
    std::map<MultiIndex, Eigen::VectorXcd, GradedLexLess> state;
    std::vector<Poly> out(col.out_dim, Poly(d));
    for (int r = 0; r < col.out_dim; ++r) {
        out[r].set_coeff(MultiIndex(d, 0), col.D[r]);
    }
    const double cap = 1e9 * (col.B.norm() + 1.0);
    for (int deg = 1; deg <= N_out; ++deg) {
        for (const MultiIndex& alpha : enumerate_basis(d, deg)) {
            if (total_degree(alpha) != deg) continue;
            Eigen::VectorXcd s = Eigen::VectorXcd::Zero(col.state_dim);
            for (int j = 0; j < d; ++j) {
                if (alpha[j] == 0) continue;
                MultiIndex beta = alpha;
                beta[j] -= 1;
                if (deg == 1)
                    s += col.B.col(j);
                else
                    s += col.A[j] * state.at(beta);
            }
            if (s.norm() > cap)
                throw std::runtime_error("transfer_taylor: state recursion diverges");
            state[alpha] = s;
            const Eigen::VectorXcd y = col.C * s;
            for (int r = 0; r < col.out_dim; ++r)
                if (std::abs(y[r]) > 0.0) out[r].set_coeff(alpha, y[r]);
        }
        // Drop states no longer needed to bound memory.
        for (auto it = state.begin(); it != state.end();)
            it = total_degree(it->first) < deg ? state.erase(it) : std::next(it);
    }
    return out;
}

Colligation functional_model_colligation(const HbContext& ctx, const GleasonOperators& ops) {
    Colligation col;
    col.d = ctx.d();
    col.state_dim = ops.rank;
    col.out_dim = 1;
    col.A = ops.X;
    col.B.resize(ops.rank, col.d);
    for (int j = 0; j < col.d; ++j) col.B.col(j) = ops.project(ops.tuple.b_js[j]);
    const int idx0 = ops.space.index.at(MultiIndex(col.d, 0));
    col.C = ops.from_model.row(idx0);
    col.D = Eigen::VectorXcd::Constant(1, ctx.b().at_zero());

    ColligationGram g;
    g.b = ctx.b();
    g.b_js = ops.tuple.b_js;
    g.nj = ops.tuple.norms;
    g.a0 = 0.0;
    g.bb_inner = ctx.hb_norm_sq(ctx.b());
    g.nodes = ctx.nodes().points;
    if (g.nodes.size() > 64) g.nodes.resize(64);
    g.out_eval0 = true;
    col.gram = std::move(g);
    return col;
}

Colligation build_a_colligation(const HbContext& ctx, const GleasonOperators& ops, double a0,
                                bool include_b_row) {
    if (!(a0 > 0.0)) throw QuasiExtremeError("build_a_colligation: a0 must be positive");
    Colligation col;
    col.d = ctx.d();
    col.state_dim = ops.rank;
    col.out_dim = include_b_row ? 2 : 1;
    col.A = ops.X;
    col.B.resize(ops.rank, col.d);
    for (int j = 0; j < col.d; ++j) col.B.col(j) = ops.project(ops.tuple.b_js[j]);

    const Eigen::VectorXcd bcoord = ops.project(ctx.b());
    col.C.resize(col.out_dim, ops.rank);
    col.D.resize(col.out_dim);
    int r = 0;
    if (include_b_row) {
        const int idx0 = ops.space.index.at(MultiIndex(col.d, 0));
        col.C.row(r) = ops.from_model.row(idx0);
        col.D[r] = ctx.b().at_zero();
        ++r;
    }
    col.C.row(r) = -a0 * bcoord.adjoint();
    col.D[r] = a0;

    ColligationGram g;
    g.b = ctx.b();
    g.b_js = ops.tuple.b_js;
    g.nj = ops.tuple.norms;
    g.a0 = a0;
    g.bb_inner = (1.0 - a0 * a0) / (a0 * a0);
    g.nodes = ctx.nodes().points;
    if (g.nodes.size() > 64) g.nodes.resize(64);
    g.out_eval0 = include_b_row;
    g.out_a = true;
    col.gram = std::move(g);
    return col;
}

double isometry_residual(const Colligation& col, double whiten_cutoff) {
    if (!col.gram) {
        const Eigen::MatrixXcd U = stacked_matrix(col);
        const int n = col.state_dim + 1;
        return (U.adjoint() * U - Eigen::MatrixXcd::Identity(n, n)).operatorNorm();
    }
    const Eigen::MatrixXcd Gin = input_gram(*col.gram);
    const Eigen::MatrixXcd Gim = image_gram(col);
    const Eigen::MatrixXcd W = whitener(Gin, whiten_cutoff);
    return spectral_norm_hermitian(W.adjoint() * (Gim - Gin) * W);
}

double colligation_contractivity(const Colligation& col, double whiten_cutoff) {
    if (!col.gram) {
        const Eigen::MatrixXcd U = stacked_matrix(col);
        return U.operatorNorm();
    }
    const Eigen::MatrixXcd Gin = input_gram(*col.gram);
    const Eigen::MatrixXcd Gim = image_gram(col);
    const Eigen::MatrixXcd W = whitener(Gin, whiten_cutoff);
    return spectral_norm_hermitian(W.adjoint() * Gim * W);
}

ACertificate construct_a(const HbContext& ctx, int N_out, int positivity_N,
                         std::vector<int> stage_Ns) {
    ACertificate cert;
    const VerdictReport rep = qe_verdict(ctx, fit_schedule(ctx.nodes().size()));
    cert.verdict = rep.verdict;
    cert.trace_b = rep.evidence.trace_b;
    cert.trace_one = rep.evidence.trace_one;
    cert.a = Poly(ctx.d());

    if (stage_Ns.empty()) stage_Ns = {ctx.N(), (3 * ctx.N()) / 2, 2 * ctx.N()};
    cert.stage_Ns = stage_Ns;

    const GleasonTuple best = solve_min_defect(ctx, true);
    cert.defect = best.defect;
    std::vector<std::pair<int, int>> pairs;
    const int n = ctx.nodes().size();
    for (int i = 0; i < std::min(50, n * n); ++i) pairs.push_back({i % n, (i * 7 + 3) % n});
    cert.defect_identity = defect_identity_residual(ctx, best, pairs);

    if (rep.verdict == Verdict::QuasiExtreme || best.defect <= ctx.tol().defect_tol) {
        cert.a0 = 0.0;
        cert.positivity_min_eig = column_positivity(ctx.b(), cert.a, positivity_N);
        return cert;
    }

    // Stage-wise companion multipliers at increasing truncation, then
    // Richardson extrapolation of every Taylor coefficient in 1/(N + 3/2).
    std::vector<double> xs, defects;
    std::vector<Poly> stage_a;
    for (int Ns : stage_Ns) {
        const GleasonTuple tup = solve_min_defect_at(ctx, Ns, false);
        const double def = std::max(tup.defect, 1e-14);
        const GleasonOperators ops = build_gleason_operators_at(ctx, tup, Ns);
        const Colligation V = build_a_colligation(ctx, ops, std::sqrt(def), false);
        stage_a.push_back(transfer_taylor(V, N_out)[0]);
        xs.push_back(1.0 / (Ns + 1.5));
        defects.push_back(tup.defect);
    }
    Poly a(ctx.d());
    std::map<MultiIndex, bool, GradedLexLess> keys;
    for (const Poly& p : stage_a)
        for (const auto& [alpha, c] : p.coeffs()) keys[alpha] = true;
    for (const auto& [alpha, unused] : keys) {
        std::vector<double> re, im;
        for (const Poly& p : stage_a) {
            re.push_back(p.coeff(alpha).real());
            im.push_back(p.coeff(alpha).imag());
        }
        a.set_coeff(alpha, {extrapolate_to_zero(xs, re), extrapolate_to_zero(xs, im)});
    }
    cert.a = a.pruned(1e-12 * std::max(1.0, a.max_abs_coeff()));
    const double defect_x = extrapolate_to_zero(xs, defects);
    cert.a0 = std::sqrt(std::max(defect_x, 0.0));

    // Exact Gram-route isometry of the combined pair at the working degree.
    const GleasonOperators ops = build_gleason_operators(ctx, best);
    const double a0_best = std::sqrt(std::max(best.defect, 1e-14));
    const Colligation Ut = build_a_colligation(ctx, ops, a0_best, true);
    cert.iso_residual = isometry_residual(Ut);
    cert.positivity_min_eig = column_positivity(ctx.b(), cert.a, positivity_N);
    return cert;
}

}  // namespace qe
