#include "qe/gleason.hpp"

#include <json.hpp>

namespace qe {

namespace {

MultiIndex minus_e(const MultiIndex& alpha, int j) {
    MultiIndex beta = alpha;
    beta[j] -= 1;
    return beta;
}

// Truncated H(b) kernel k^b_w = (1 - b b(w)^*) k_w as a polynomial in z.
Poly kb_poly(const Poly& b, const std::vector<Complex>& w, int N) {
    const Complex bw = b.evaluate(w);
    const Poly szego = szego_kernel_series(w, N);
    return (szego - (b * szego) * std::conj(bw)).truncate(N);
}

// Pseudo-inverse with kernel penalty: V diag(s_i or 1/kappa) V^H, so that
// near-null directions of Delta cost kappa in the objective and the
// minimizer stays inside ran(Delta) whenever the constraints allow it.
Eigen::MatrixXcd penalized_inverse_objective(const DeltaData& dd, double kappa) {
    const int n = static_cast<int>(dd.evals.size());
    Eigen::VectorXd diag(n);
    for (int i = 0; i < n; ++i)
        diag[i] = dd.evals[i] > dd.cutoff_abs ? dd.evals[i] : 1.0 / kappa;
    return dd.evecs * diag.asDiagonal() * dd.evecs.adjoint();
}

constexpr double kKernelPenalty = 1e12;

}  // namespace

double GleasonTuple::norm_sum() const {
    double s = 0.0;
    for (double n : norms) s += n;
    return s;
}

std::string GleasonTuple::to_json() const {
    nlohmann::json j;
    j["defect"] = defect;
    j["norms"] = norms;
    auto& arr = j["components"];
    arr = nlohmann::json::array();
    for (const auto& p : b_js) arr.push_back(nlohmann::json::parse(p.to_json()));
    return j.dump(2);
}

GleasonSolver::GleasonSolver(const HbContext& ctx, int N) : ctx_(ctx), N_(N), d_(ctx.d()) {
    if (N < 1) throw std::invalid_argument("GleasonSolver: N must be >= 1");
    if (d_ == 1) {
        forced_1d_ = true;  // the solution (b - b(0)) / z is forced
        return;
    }
    var_space_ = TruncatedSpace(d_, N_ - 1);
    const int m = var_space_.size();
    for (const MultiIndex& alpha : enumerate_basis(d_, N_))
        if (total_degree(alpha) >= 1) constraint_rows_.push_back(alpha);
    const int K = static_cast<int>(constraint_rows_.size());

    const DeltaData& dd = ctx_.delta_at(N_ - 1);
    Hinv_ = penalized_inverse_objective(dd, kKernelPenalty);

    // Constraint in plain coefficients: coeff_alpha(sum_j z_j h_j) with h_j
    // held in orthonormal coordinates, so A_j[row, idx(alpha - e_j)] = w^{-1/2}.
    Adense_.assign(d_, Eigen::MatrixXcd::Zero(K, m));
    for (int r = 0; r < K; ++r) {
        const MultiIndex& alpha = constraint_rows_[r];
        for (int j = 0; j < d_; ++j) {
            if (alpha[j] == 0) continue;
            const MultiIndex beta = minus_e(alpha, j);
            const int col = var_space_.index.at(beta);
            Adense_[j](r, col) = 1.0 / std::sqrt(var_space_.weights[col]);
        }
    }
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(K, K);
    for (int j = 0; j < d_; ++j) S += Adense_[j] * Hinv_ * Adense_[j].adjoint();
    schur_.compute(S);
    if (schur_.info() != Eigen::Success)
        throw std::runtime_error("GleasonSolver: constraint Schur complement not factorizable");
}

std::vector<Poly> GleasonSolver::solve(const Poly& f) const {
    if (f.dim() != d_) throw std::invalid_argument("GleasonSolver: dimension mismatch");
    if (f.degree() > N_) throw std::invalid_argument("GleasonSolver: rhs degree exceeds N");
    std::vector<Poly> tuple;
    if (forced_1d_) {
        Poly h(1);
        for (const auto& [alpha, c] : f.coeffs())
            if (alpha[0] >= 1) h.set_coeff({alpha[0] - 1}, c);
        tuple.push_back(h);
        return tuple;
    }
    const int K = static_cast<int>(constraint_rows_.size());
    Eigen::VectorXcd c(K);
    for (int r = 0; r < K; ++r) c[r] = f.coeff(constraint_rows_[r]);
    const Eigen::VectorXcd lambda = schur_.solve(c);
    for (int j = 0; j < d_; ++j) {
        const Eigen::VectorXcd xj = Hinv_ * (Adense_[j].adjoint() * lambda);
        tuple.push_back(var_space_.from_vector(xj));
    }
    enforce_constraints(f, tuple);
    return tuple;
}

void GleasonSolver::enforce_constraints(const Poly& f, std::vector<Poly>& tuple) const {
    Poly residual = f - Poly::constant(d_, f.at_zero());
    for (int j = 0; j < d_; ++j) residual = residual - tuple[j].shift_up(j + 1);
    for (const auto& [alpha, c] : residual.coeffs()) {
        for (int j = 0; j < d_; ++j) {
            if (alpha[j] >= 1) {
                tuple[j].add_coeff(minus_e(alpha, j), c);
                break;
            }
        }
    }
}

namespace {

GleasonTuple finish_tuple(const HbContext& ctx, std::vector<Poly> b_js, int N, bool extrapolate) {
    GleasonTuple t;
    t.b_js = std::move(b_js);
    for (const Poly& bj : t.b_js)
        t.norms.push_back(extrapolate ? ctx.hb_norm_sq(bj)
                                      : ctx.hb_norm_trunc_at(bj, std::max(N - 1, bj.degree())));
    t.defect = 1.0 - std::norm(ctx.b().at_zero()) - t.norm_sum();
    return t;
}

}  // namespace

GleasonTuple solve_min_defect_at(const HbContext& ctx, int N, bool extrapolate) {
    GleasonSolver solver(ctx, N);
    return finish_tuple(ctx, solver.solve(ctx.b()), N, extrapolate);
}

GleasonTuple solve_min_defect(const HbContext& ctx, bool extrapolate) {
    return solve_min_defect_at(ctx, ctx.N(), extrapolate);
}

GleasonTuple canonical_tuple(const HbContext& ctx) {
    const Poly& b = ctx.b();
    const int d = ctx.d();
    const int N = ctx.N();
    const Complex b0 = b.at_zero();
    const Poly one = Poly::constant(d, 1.0);
    if (d == 1) return solve_min_defect(ctx);  // the solution is forced

    // g0 = b / (1 - b) truncated; solve the Gleason problem for g0 with the
    // L(b) norm pulled back to H(b) through h -> (1 - b) h, then map back.
    const Poly g0 = (b * reciprocal_series(one - b, N)).truncate(N);
    const TruncatedSpace var_space(d, N - 1);
    const TruncatedSpace full_space(d, N);
    const int m = var_space.size();

    // Multiplication by (1 - b): P_{N-1} -> P_N in orthonormal coordinates.
    Eigen::MatrixXcd M(full_space.size(), m);
    for (int c = 0; c < m; ++c) {
        Poly e = Poly::monomial(d, var_space.basis[c], 1.0 / std::sqrt(var_space.weights[c]));
        M.col(c) = full_space.to_vector(((one - b) * e).truncate(N));
    }
    const DeltaData& dd = ctx.delta_at(N);
    const Eigen::MatrixXcd H0 = M.adjoint() * penalized_inverse_objective(dd, kKernelPenalty) * M;
    Eigen::LDLT<Eigen::MatrixXcd> H0f(H0);

    std::vector<MultiIndex> rows;
    for (const MultiIndex& alpha : enumerate_basis(d, N))
        if (total_degree(alpha) >= 1) rows.push_back(alpha);
    const int K = static_cast<int>(rows.size());
    std::vector<Eigen::MatrixXcd> A(d, Eigen::MatrixXcd::Zero(K, m));
    for (int r = 0; r < K; ++r)
        for (int j = 0; j < d; ++j) {
            if (rows[r][j] == 0) continue;
            MultiIndex beta = rows[r];
            beta[j] -= 1;
            const int col = var_space.index.at(beta);
            A[j](r, col) = 1.0 / std::sqrt(var_space.weights[col]);
        }
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(K, K);
    std::vector<Eigen::MatrixXcd> HinvAjH(d);
    for (int j = 0; j < d; ++j) {
        HinvAjH[j] = H0f.solve(A[j].adjoint());
        S += A[j] * HinvAjH[j];
    }
    Eigen::VectorXcd c(K);
    for (int r = 0; r < K; ++r) c[r] = g0.coeff(rows[r]);
    const Eigen::VectorXcd lambda = Eigen::LDLT<Eigen::MatrixXcd>(S).solve(c);

    std::vector<Poly> b_js;
    for (int j = 0; j < d; ++j) {
        const Poly hj = var_space.from_vector(HinvAjH[j] * lambda);
        b_js.push_back(((one - b) * hj * (1.0 - b0)).truncate(N - 1));
    }
    // The truncations above lose the high-order tail of g0; restore exact
    // admissibility for b itself in coefficient arithmetic.
    {
        Poly residual = b - Poly::constant(d, b0);
        for (int j = 0; j < d; ++j) residual = residual - b_js[j].shift_up(j + 1);
        for (const auto& [alpha, cc] : residual.coeffs())
            for (int j = 0; j < d; ++j)
                if (alpha[j] >= 1) {
                    MultiIndex beta = alpha;
                    beta[j] -= 1;
                    b_js[j].add_coeff(beta, cc);
                    break;
                }
    }
    return finish_tuple(ctx, std::move(b_js), N, true);
}

Eigen::VectorXcd GleasonOperators::project(const Poly& f) const {
    return to_model * space.to_vector(f.truncate(N));
}

Poly GleasonOperators::lift(const Eigen::VectorXcd& c) const {
    return space.from_vector(from_model * c);
}

double GleasonOperators::model_dist(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
    return (v - w).norm();
}

GleasonOperators build_gleason_operators_at(const HbContext& ctx, const GleasonTuple& tuple,
                                            int N) {
    GleasonOperators ops;
    ops.d = ctx.d();
    ops.N = N;
    ops.space = TruncatedSpace(ctx.d(), N);
    ops.tuple = tuple;

    const DeltaData& dd = ctx.delta_at(N);
    const int dim = ops.space.size();
    std::vector<int> keep;
    for (int i = 0; i < dim; ++i)
        if (dd.evals[i] > dd.cutoff_abs) keep.push_back(i);
    ops.rank = static_cast<int>(keep.size());
    ops.to_model.resize(ops.rank, dim);
    ops.from_model.resize(dim, ops.rank);
    for (int k = 0; k < ops.rank; ++k) {
        const double s = dd.evals[keep[k]];
        ops.to_model.row(k) = dd.evecs.col(keep[k]).adjoint() / std::sqrt(s);
        ops.from_model.col(k) = dd.evecs.col(keep[k]) * std::sqrt(s);
    }

    GleasonSolver solver(ctx, N);
    std::vector<Eigen::MatrixXcd> T(ops.d, Eigen::MatrixXcd(dim, ops.rank));
    for (int k = 0; k < ops.rank; ++k) {
        const Poly phi = ops.space.from_vector(ops.from_model.col(k));
        const std::vector<Poly> tup = solver.solve(phi);
        for (int j = 0; j < ops.d; ++j) T[j].col(k) = ops.space.to_vector(tup[j]);
    }
    for (int j = 0; j < ops.d; ++j) ops.X.push_back(ops.to_model * T[j]);
    return ops;
}

GleasonOperators build_gleason_operators(const HbContext& ctx, const GleasonTuple& tuple) {
    return build_gleason_operators_at(ctx, tuple, ctx.N());
}

Eigen::VectorXcd kernel_model_vector(const HbContext& ctx, const GleasonOperators& ops,
                                     const std::vector<Complex>& w) {
    return ops.project(kb_poly(ctx.b(), w, ops.N));
}

Eigen::VectorXcd apply_X_on_kernel(const HbContext& ctx, const GleasonOperators& ops, int j,
                                   const std::vector<Complex>& w) {
    const Complex bw = ctx.b().evaluate(w);
    return std::conj(w[j]) * kernel_model_vector(ctx, ops, w) -
           std::conj(bw) * ops.project(ops.tuple.b_js[j]);
}

Poly apply_Xstar(const HbContext& ctx, const GleasonTuple& tuple, int j, const Poly& f) {
    const Complex ip = ctx.hb_inner(f, tuple.b_js[j]);
    return f.shift_up(j + 1) - ctx.b() * ip;
}

double defect_identity_residual(const HbContext& ctx, const GleasonTuple& tuple,
                                const std::vector<std::pair<int, int>>& pairs,
                                double a0_sq_override) {
    const Poly& b = ctx.b();
    const Complex b0 = b.at_zero();
    const double a0sq = a0_sq_override >= 0.0 ? a0_sq_override : tuple.defect;
    const int d = ctx.d();
    double worst = 0.0;
    for (const auto& [pi, qi] : pairs) {
        const auto& z = ctx.nodes().points.at(pi);
        const auto& w = ctx.nodes().points.at(qi);
        const Complex kzw = kb_eval(b, z, w);
        const Complex bz = b.evaluate(z);
        const Complex bw_c = std::conj(b.evaluate(w));
        Complex lhs = kzw;
        for (int j = 0; j < d; ++j) {
            const Complex bjz = tuple.b_js[j].evaluate(z);
            const Complex bjw_c = std::conj(tuple.b_js[j].evaluate(w));
            lhs -= std::conj(w[j]) * z[j] * kzw;
            lhs += std::conj(w[j]) * bz * bjw_c;
            lhs += bw_c * z[j] * bjz;
            lhs -= bw_c * bz * tuple.norms[j];
        }
        const Complex rhs = (1.0 - bz * std::conj(b0)) * (1.0 - bw_c * b0) + a0sq * bz * bw_c;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double a0_from_hbnorm(const HbContext& ctx) {
    const auto trace = ctx.membership_trace(ctx.b(), fit_schedule(ctx.nodes().size()));
    if (trace_diverges(trace, ctx.tol(), h2_norm_sq(ctx.b())))
        throw QuasiExtremeError("a0_from_hbnorm: b escapes H(b), a_0 = 0");
    const double nb = ctx.hb_norm_sq(ctx.b());
    return 1.0 / std::sqrt(1.0 + nb);
}

}  // namespace qe
