#include "qe/hardy.hpp"

#include <fstream>
#include <stdexcept>

namespace qe {

TruncatedSpace::TruncatedSpace(int d, int N) : d(d), N(N) {
    basis = enumerate_basis(d, N);
    weights.resize(static_cast<int>(basis.size()));
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
        weights[i] = monomial_weight(basis[i]);
        index[basis[i]] = i;
    }
}

Eigen::VectorXcd TruncatedSpace::to_vector(const Poly& p) const {
    if (p.dim() != d) throw std::invalid_argument("to_vector: dimension mismatch");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size());
    for (const auto& [a, c] : p.coeffs()) {
        auto it = index.find(a);
        if (it == index.end()) throw std::invalid_argument("to_vector: degree exceeds truncation");
        v[it->second] = c * std::sqrt(weights[it->second]);
    }
    return v;
}

Poly TruncatedSpace::from_vector(const Eigen::VectorXcd& v) const {
    if (v.size() != size()) throw std::invalid_argument("from_vector: size mismatch");
    Poly p(d);
    for (int i = 0; i < size(); ++i) {
        if (v[i] != Complex(0.0)) p.set_coeff(basis[i], v[i] / std::sqrt(weights[i]));
    }
    return p;
}

Complex h2_inner(const Poly& p, const Poly& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("h2_inner: dimension mismatch");
    Complex sum = 0.0;
    const auto& small = p.coeffs().size() <= q.coeffs().size() ? p : q;
    const auto& other = p.coeffs().size() <= q.coeffs().size() ? q : p;
    for (const auto& [a, c] : small.coeffs()) {
        const Complex oc = other.coeff(a);
        if (oc == Complex(0.0)) continue;
        const double w = monomial_weight(a);
        // linear in p, conjugate-linear in q
        if (&small == &p)
            sum += w * c * std::conj(oc);
        else
            sum += w * oc * std::conj(c);
    }
    return sum;
}

double h2_norm_sq(const Poly& p) { return h2_inner(p, p).real(); }

Poly mult_adjoint_apply(const Poly& b, const Poly& f) {
    if (b.dim() != f.dim()) throw std::invalid_argument("mult_adjoint_apply: dimension mismatch");
    const int d = b.dim();
    // (M_b^* f)_gamma = sum_beta conj(b_beta) f_{beta+gamma} w_{beta+gamma} / w_gamma
    Poly r(d);
    for (const auto& [beta, bc] : b.coeffs()) {
        for (const auto& [alpha, fc] : f.coeffs()) {
            MultiIndex gamma(d);
            bool ok = true;
            for (int i = 0; i < d; ++i) {
                gamma[i] = alpha[i] - beta[i];
                if (gamma[i] < 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            r.add_coeff(gamma, std::conj(bc) * fc * (monomial_weight(alpha) / monomial_weight(gamma)));
        }
    }
    return r;
}

Eigen::MatrixXcd column_positivity_matrix(const Poly& b, const Poly& a, int N) {
    if (b.dim() != a.dim()) throw std::invalid_argument("column_positivity: dimension mismatch");
    const TruncatedSpace sp(b.dim(), N);
    const int n = sp.size();
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(n, n);
    std::vector<Poly> bb(n), aa(n);
    for (int i = 0; i < n; ++i) {
        const Poly e = Poly::monomial(b.dim(), sp.basis[i], 1.0 / std::sqrt(sp.weights[i]));
        bb[i] = b * e;
        aa[i] = a * e;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const Complex v = h2_inner(bb[j], bb[i]) + h2_inner(aa[j], aa[i]);
            Q(i, j) -= v;
            if (i != j) Q(j, i) -= std::conj(v);
        }
    }
    return Q;
}

double column_positivity(const Poly& b, const Poly& a, int N) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(column_positivity_matrix(b, a, N),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double multiplier_norm_lower(const Poly& b, int N) {
    if (b.is_zero()) return 0.0;
    const TruncatedSpace dom(b.dim(), N);
    const TruncatedSpace ran(b.dim(), N + std::max(0, b.degree()));
    Eigen::MatrixXcd M(ran.size(), dom.size());
    for (int j = 0; j < dom.size(); ++j) {
        const Poly e = Poly::monomial(b.dim(), dom.basis[j], 1.0 / std::sqrt(dom.weights[j]));
        M.col(j) = ran.to_vector(b * e);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()[0];
}

void write_matrix_csv(const Eigen::MatrixXcd& m, const std::string& path) {
    std::ofstream out(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ",";
            out << m(i, j).real() << "," << m(i, j).imag();
        }
        out << "\n";
    }
}

}  // namespace qe
