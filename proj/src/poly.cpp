#include "qe/poly.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace qe {

namespace {
void check_dim(const Poly& a, const Poly& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("poly dimension mismatch");
}
}  // namespace

Poly Poly::constant(int dim, Complex c) {
    Poly p(dim);
    p.set_coeff(MultiIndex(dim, 0), c);
    return p;
}

Poly Poly::variable(int dim, int j) {
    if (j < 1 || j > dim) throw std::invalid_argument("variable index out of range");
    MultiIndex alpha(dim, 0);
    alpha[j - 1] = 1;
    return monomial(dim, alpha, 1.0);
}

Poly Poly::monomial(int dim, const MultiIndex& alpha, Complex c) {
    Poly p(dim);
    p.set_coeff(alpha, c);
    return p;
}

int Poly::degree() const {
    if (coeffs_.empty()) return -1;
    return total_degree(coeffs_.rbegin()->first);
}

Complex Poly::coeff(const MultiIndex& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
}

void Poly::set_coeff(const MultiIndex& alpha, Complex c) {
    if (static_cast<int>(alpha.size()) != dim_)
        throw std::invalid_argument("multi-index length != poly dimension");
    if (c == Complex(0.0))
        coeffs_.erase(alpha);
    else
        coeffs_[alpha] = c;
}

void Poly::add_coeff(const MultiIndex& alpha, Complex c) { set_coeff(alpha, coeff(alpha) + c); }

Complex Poly::at_zero() const { return coeff(MultiIndex(dim_, 0)); }

Poly Poly::operator+(const Poly& o) const {
    check_dim(*this, o);
    Poly r = *this;
    for (const auto& [a, c] : o.coeffs_) r.add_coeff(a, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    check_dim(*this, o);
    Poly r = *this;
    for (const auto& [a, c] : o.coeffs_) r.add_coeff(a, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_dim(*this, o);
    Poly r(dim_);
    for (const auto& [a, ca] : coeffs_) {
        for (const auto& [b, cb] : o.coeffs_) {
            MultiIndex s(dim_);
            for (int i = 0; i < dim_; ++i) s[i] = a[i] + b[i];
            r.add_coeff(s, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(Complex s) const {
    Poly r(dim_);
    if (s == Complex(0.0)) return r;
    for (const auto& [a, c] : coeffs_) r.coeffs_[a] = c * s;
    return r;
}

Poly Poly::shift_up(int j) const {
    if (j < 1 || j > dim_) throw std::invalid_argument("shift_up: bad variable index");
    Poly r(dim_);
    for (const auto& [a, c] : coeffs_) {
        MultiIndex s = a;
        ++s[j - 1];
        r.coeffs_[s] = c;
    }
    return r;
}

Poly Poly::truncate(int maxdeg) const {
    Poly r(dim_);
    for (const auto& [a, c] : coeffs_)
        if (total_degree(a) <= maxdeg) r.coeffs_[a] = c;
    return r;
}

Poly Poly::pruned(double eps) const {
    Poly r(dim_);
    for (const auto& [a, c] : coeffs_)
        if (std::abs(c) > eps) r.coeffs_[a] = c;
    return r;
}

Complex Poly::evaluate(const std::vector<Complex>& z) const {
    if (static_cast<int>(z.size()) != dim_) throw std::invalid_argument("evaluate: bad point");
    Complex sum = 0.0;
    for (const auto& [a, c] : coeffs_) {
        Complex term = c;
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < a[i]; ++k) term *= z[i];
        sum += term;
    }
    return sum;
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [a, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

std::string Poly::to_json() const {
    nlohmann::json j;
    j["d"] = dim_;
    j["coeffs"] = nlohmann::json::array();
    for (const auto& [a, c] : coeffs_) {
        nlohmann::json e;
        e["alpha"] = a;
        e["re"] = c.real();
        e["im"] = c.imag();
        j["coeffs"].push_back(e);
    }
    return j.dump();
}

Poly Poly::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Poly p(j.at("d").get<int>());
    for (const auto& e : j.at("coeffs")) {
        MultiIndex a = e.at("alpha").get<MultiIndex>();
        double re = e.value("re", 0.0), im = e.value("im", 0.0);
        p.add_coeff(a, Complex(re, im));
    }
    return p;
}

Poly reciprocal_series(const Poly& p, int N) {
    const Complex p0 = p.at_zero();
    if (std::abs(p0) == 0.0) throw std::invalid_argument("reciprocal_series: p(0) == 0");
    const int d = p.dim();
    // split p = p0 + q, solve (p0 + q) u = 1 by homogeneous degree:
    //   u_n = -(1/p0) sum_{k=1..n} q_k u_{n-k}
    std::vector<Poly> qh(N + 1, Poly(d)), uh(N + 1, Poly(d));
    for (const auto& [a, c] : p.coeffs()) {
        const int n = total_degree(a);
        if (n >= 1 && n <= N) qh[n].set_coeff(a, c);
    }
    uh[0] = Poly::constant(d, 1.0 / p0);
    Poly u = uh[0];
    for (int n = 1; n <= N; ++n) {
        Poly acc(d);
        for (int k = 1; k <= n; ++k)
            if (!qh[k].is_zero() && !uh[n - k].is_zero()) acc = acc + qh[k] * uh[n - k];
        uh[n] = acc * (-1.0 / p0);
        u = u + uh[n];
    }
    return u;
}

Poly szego_kernel_series(const std::vector<Complex>& w, int N) {
    const int d = static_cast<int>(w.size());
    Poly zw(d);  // z w^*
    for (int j = 0; j < d; ++j) {
        MultiIndex a(d, 0);
        a[j] = 1;
        zw.add_coeff(a, std::conj(w[j]));
    }
    Poly r = Poly::constant(d, 1.0);
    Poly pw = Poly::constant(d, 1.0);
    for (int n = 1; n <= N; ++n) {
        pw = (pw * zw).truncate(N);
        r = r + pw;
    }
    return r;
}

}  // namespace qe
