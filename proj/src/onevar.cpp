#include "qe/onevar.hpp"

#include <unsupported/Eigen/FFT>

namespace qe {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_onevar(const Poly& b) {
    if (b.dim() != 1) throw std::invalid_argument("one-variable routine called with d != 1");
}

Complex eval_circle(const Poly& b, double theta) {
    return b.evaluate({std::polar(1.0, theta)});
}

double clamped_log_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::log(std::max(x, 1e-300));
    return s / static_cast<double>(v.size());
}

}  // namespace

CircleGrid CircleGrid::build(const Poly& b, int M) {
    require_onevar(b);
    if (M < 4 || (M & (M - 1)) != 0) throw std::invalid_argument("grid size must be a power of two >= 4");
    CircleGrid g;
    g.M = M;
    g.one_minus_b2.resize(M);
    for (int k = 0; k < M; ++k) {
        const double theta = 2.0 * kPi * (k + 0.5) / M;
        const double m = std::norm(eval_circle(b, theta));
        if (m > 1.0 + 1e-12)
            throw NotContractiveError("|b| exceeds 1 on the circle");
        g.one_minus_b2[k] = 1.0 - m;
    }
    return g;
}

SzegoResult szego_integral(const Poly& b, int M, double underflow_tol, double cap) {
    SzegoResult r;
    const CircleGrid g1 = CircleGrid::build(b, M);
    const CircleGrid g2 = CircleGrid::build(b, 2 * M);
    r.at_M = clamped_log_mean(g1.one_minus_b2);
    r.at_2M = clamped_log_mean(g2.one_minus_b2);
    // Midpoint-rule error of the log-singular integrand decays like 1/M.
    r.value = 2.0 * r.at_2M - r.at_M;

    bool touched = false;
    for (double x : g2.one_minus_b2) touched = touched || x <= underflow_tol;
    if (touched) {
        const double at_4M = clamped_log_mean(CircleGrid::build(b, 4 * M).one_minus_b2);
        if (std::min({r.at_M, r.at_2M, at_4M}) < -cap || at_4M < r.at_2M - 0.5)
            r.minus_inf = true;
    }
    return r;
}

namespace {

// Fourier coefficients 0..ncoef of log(1-|b|^2) on the half-shifted M-grid:
// c_n = e^{-i pi n / M} / M * DFT_n.
std::vector<Complex> log_fourier(const Poly& b, int M, int ncoef) {
    const CircleGrid g = CircleGrid::build(b, M);
    std::vector<double> L(M);
    for (int k = 0; k < M; ++k) {
        if (g.one_minus_b2[k] <= 1e-14)
            throw std::invalid_argument("outer_a: 1 - |b|^2 vanishes on the grid (extreme b)");
        L[k] = std::log(g.one_minus_b2[k]);
    }
    Eigen::FFT<double> fft;
    std::vector<Complex> spectrum;
    fft.fwd(spectrum, L);
    std::vector<Complex> c(ncoef + 1);
    for (int n = 0; n <= ncoef; ++n)
        c[n] = spectrum[n] * std::polar(1.0 / M, -kPi * n / M);
    return c;
}

}  // namespace

OuterResult outer_a(const Poly& b, int M) {
    require_onevar(b);
    const CircleGrid g = CircleGrid::build(b, M);
    const int ncoef = M / 4;
    // The half-shifted grid aliases only odd powers of 1/M into c_n, so one
    // Richardson step over {M, 2M} leaves O(1/M^3) coefficient error.
    const std::vector<Complex> cM = log_fourier(b, M, ncoef);
    const std::vector<Complex> c2M = log_fourier(b, 2 * M, ncoef);
    std::vector<Complex> c(ncoef + 1);
    for (int n = 0; n <= ncoef; ++n) c[n] = 2.0 * c2M[n] - cM[n];

    // a = exp(c_0/2 + sum_{n>=1} c_n z^n): power-series exponential.
    std::vector<Complex> ahat(ncoef + 1, 0.0);
    ahat[0] = std::exp(c[0].real() / 2.0);
    for (int n = 1; n <= ncoef; ++n) {
        Complex s = 0.0;
        for (int k = 1; k <= n; ++k) s += static_cast<double>(k) * c[k] * ahat[n - k];
        ahat[n] = s / static_cast<double>(n);
    }

    OuterResult out;
    out.a0 = ahat[0].real();
    Poly a(1);
    for (int n = 0; n <= ncoef; ++n) a.set_coeff({n}, ahat[n]);
    out.a = a.pruned(1e-300);

    double worst = 0.0;
    for (int k = 0; k < M; ++k) {
        const double theta = 2.0 * kPi * (k + 0.5) / M;
        const Complex av = out.a.evaluate({std::polar(1.0, theta)});
        worst = std::max(worst, std::abs(std::norm(av) - g.one_minus_b2[k]));
    }
    out.boundary_residual = worst;
    return out;
}

SarasonCheck sarason_coeff_check(const HbContext& ctx, const OuterResult& outer, int n_max) {
    require_onevar(ctx.b());
    SarasonCheck chk;
    const Poly& b = ctx.b();
    Poly xnb = b;
    for (int n = 1; n <= n_max; ++n) {
        // X is the backward shift in one variable.
        Poly next(1);
        for (const auto& [alpha, cc] : xnb.coeffs())
            if (alpha[0] >= 1) next.set_coeff({alpha[0] - 1}, cc);
        xnb = next;
        const Complex moment = ctx.hb_inner(xnb, b);
        const Complex ratio = outer.a.coeff({n}) / outer.a0;
        chk.residuals.push_back(std::abs(moment + ratio));
    }
    chk.a0_residual = std::abs(outer.a0 * outer.a0 - 1.0 / (1.0 + ctx.hb_norm_sq(b)));
    return chk;
}

}  // namespace qe
