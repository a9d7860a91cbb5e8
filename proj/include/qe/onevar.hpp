#pragma once

#include "qe/dbr.hpp"

namespace qe {

/// Values of 1 - |b|^2 on the half-shifted circle grid theta_k = 2pi(k+1/2)/M
/// (the shift keeps zeros of log(1-|b|^2) off the grid for rational angles).
struct CircleGrid {
    int M = 0;
    std::vector<double> one_minus_b2;

    static CircleGrid build(const Poly& b, int M);
};

struct SzegoResult {
    double value = 0.0;   // (1/2pi) int log(1 - |b|^2), Richardson over {M, 2M}
    bool minus_inf = false;
    double at_M = 0.0;
    double at_2M = 0.0;
};

/// Logarithmic integral deciding extremity of one-variable b. Flagged -inf
/// when 1-|b|^2 underflows at grid points and refinement drives the
/// quadrature below -cap.
SzegoResult szego_integral(const Poly& b, int M, double underflow_tol = 1e-14,
                           double cap = 50.0);

struct OuterResult {
    Poly a;                   // Taylor coefficients through degree M/4
    double boundary_residual = 0.0;  // max | |a|^2 + |b|^2 - 1 | on the grid
    double a0 = 0.0;
};

/// Outer companion: a = exp((c_0 + 2 sum_{n>=1} c_n z^n)/2) with c_n the
/// Fourier coefficients of log(1 - |b|^2), normalized a(0) > 0.
OuterResult outer_a(const Poly& b, int M);

struct SarasonCheck {
    std::vector<double> residuals;  // | <X^n b, b>_b + a_hat(n)/a(0) |, n = 1..n_max
    double a0_residual = 0.0;       // | a(0)^2 - 1/(1 + ||b||_b^2) |
};

/// One-variable cross-check between the backward-shift moments of b in H(b)
/// and the Taylor coefficients of the outer companion.
SarasonCheck sarason_coeff_check(const HbContext& ctx, const OuterResult& outer, int n_max);

}  // namespace qe
