#include <algorithm>
#include <limits>
#include "qe/dbr.hpp"

#include <cmath>
#include <json.hpp>

namespace qe {

namespace {

Complex one_minus_zwstar(const std::vector<Complex>& z, const std::vector<Complex>& w) {
    Complex s = 1.0;
    for (size_t j = 0; j < z.size(); ++j) s -= z[j] * std::conj(w[j]);
    return s;
}

double ball_norm_sq(const std::vector<Complex>& z) {
    double s = 0.0;
    for (const Complex& c : z) s += std::norm(c);
    return s;
}

}  // namespace

Complex kb_eval(const Poly& b, const std::vector<Complex>& z, const std::vector<Complex>& w) {
    if (ball_norm_sq(z) >= 1.0 || ball_norm_sq(w) >= 1.0)
        throw std::invalid_argument("kb_eval: points must lie in the open unit ball");
    return (1.0 - b.evaluate(z) * std::conj(b.evaluate(w))) / one_minus_zwstar(z, w);
}

Complex herglotz_kernel_eval(const Poly& b, const std::vector<Complex>& z,
                             const std::vector<Complex>& w, double cross_tol) {
    const Complex bz = b.evaluate(z), bw = b.evaluate(w);
    if (std::abs(1.0 - bz) < 1e-14 || std::abs(1.0 - bw) < 1e-14)
        throw std::invalid_argument("herglotz_kernel_eval: b attains 1 at a queried point");
    const Complex gz = (1.0 + bz) / (1.0 - bz);
    const Complex gw = (1.0 + bw) / (1.0 - bw);
    const Complex denom = one_minus_zwstar(z, w);
    const Complex via_cayley = 0.5 * (gz + std::conj(gw)) / denom;
    const Complex via_prefactor =
        (1.0 - bz * std::conj(bw)) / denom / ((1.0 - bz) * std::conj(1.0 - bw));
    const double scale = std::max(1.0, std::abs(via_cayley));
    if (std::abs(via_cayley - via_prefactor) > cross_tol * scale)
        throw std::runtime_error("herglotz_kernel_eval: the two kernel formulas disagree");
    return via_cayley;
}

NodeSet NodeSet::sample(int d, int count, std::uint64_t seed, double radius,
                        const Poly* b_for_avoid, double avoid_tol) {
    NodeSet ns;
    ns.seed = seed;
    ns.radius = radius;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-radius, radius);
    while (ns.size() < count) {
        std::vector<Complex> z(d);
        for (int j = 0; j < d; ++j) {
            const double re = unif(rng);
            const double im = unif(rng);
            z[j] = Complex(re, im);
        }
        if (ball_norm_sq(z) > radius * radius) continue;
        if (b_for_avoid && std::abs(1.0 - b_for_avoid->evaluate(z)) < avoid_tol) continue;
        ns.points.push_back(std::move(z));
    }
    // Greedy farthest-point ordering: every prefix of the node list is then
    // a near-optimal covering set, which makes the staged membership scores
    // saturate steadily instead of jumping when a region is first hit.
    const int n = ns.size();
    if (n > 2) {
        auto& pts = ns.points;
        int start = 0;
        for (int i = 1; i < n; ++i)
            if (ball_norm_sq(pts[i]) > ball_norm_sq(pts[start])) start = i;
        std::swap(pts[0], pts[start]);
        std::vector<double> dist(n, std::numeric_limits<double>::infinity());
        for (int k = 1; k < n; ++k) {
            int best = k;
            for (int i = k; i < n; ++i) {
                double dd = 0.0;
                for (int j = 0; j < d; ++j) dd += std::norm(pts[i][j] - pts[k - 1][j]);
                dist[i] = std::min(dist[i], dd);
                if (dist[i] > dist[best]) best = i;
            }
            std::swap(pts[k], pts[best]);
            std::swap(dist[k], dist[best]);
        }
    }
    return ns;
}

std::string NodeSet::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["radius"] = radius;
    j["count"] = size();
    return j.dump();
}

NodeSet NodeSet::from_json(const std::string& text, int d) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.contains("points")) {
        NodeSet ns;
        ns.radius = j.value("radius", 0.9);
        ns.seed = j.value("seed", std::uint64_t{42});
        for (const auto& p : j.at("points")) {
            std::vector<Complex> z;
            for (const auto& c : p) z.emplace_back(c.at("re").get<double>(), c.value("im", 0.0));
            if (static_cast<int>(z.size()) != d)
                throw std::invalid_argument("node set dimension mismatch");
            ns.points.push_back(std::move(z));
        }
        return ns;
    }
    return sample(d, j.at("count").get<int>(), j.value("seed", std::uint64_t{42}),
                  j.value("radius", 0.9));
}

DeltaData::DeltaData(const Poly& b, int N, double pinv_cutoff) : space(b.dim(), N) {
    const int n = space.size();
    // entries <(I - M_b M_b^*) e_beta, e_alpha>, all exact polynomial inner products
    std::vector<Poly> adj(n);
    for (int i = 0; i < n; ++i) {
        const Poly e = Poly::monomial(b.dim(), space.basis[i], 1.0 / std::sqrt(space.weights[i]));
        adj[i] = mult_adjoint_apply(b, e);
    }
    delta = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const Complex v = h2_inner(adj[j], adj[i]);
            delta(i, j) -= v;
            if (i != j) delta(j, i) -= std::conj(v);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(delta);
    evals = es.eigenvalues();
    evecs = es.eigenvectors();
    cutoff_abs = pinv_cutoff * std::max(evals.cwiseAbs().maxCoeff(), 1e-300);
}

int DeltaData::rank() const {
    int r = 0;
    for (int i = 0; i < evals.size(); ++i)
        if (evals[i] > cutoff_abs) ++r;
    return r;
}

Complex DeltaData::quadform(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const {
    const Eigen::VectorXcd fc = evecs.adjoint() * f;
    const Eigen::VectorXcd gc = evecs.adjoint() * g;
    Complex s = 0.0;
    for (int i = 0; i < evals.size(); ++i)
        if (evals[i] > cutoff_abs) s += std::conj(gc[i]) * fc[i] / evals[i];
    return s;
}

double DeltaData::range_residual(const Eigen::VectorXcd& f) const {
    const double nf = f.norm();
    if (nf == 0.0) return 0.0;
    const Eigen::VectorXcd fc = evecs.adjoint() * f;
    double out = 0.0;
    for (int i = 0; i < evals.size(); ++i)
        if (evals[i] <= cutoff_abs) out += std::norm(fc[i]);
    return std::sqrt(out) / nf;
}

HbContext::HbContext(Poly b, int N, NodeSet nodes, Tolerances tol, bool allow_constant)
    : b_(std::move(b)), N_(N), nodes_(std::move(nodes)), tol_(tol) {
    if (!allow_constant && b_.is_constant())
        throw std::invalid_argument("HbContext: constant b rejected");
    if (N_ < std::max(0, b_.degree()))
        throw std::invalid_argument("HbContext: truncation below deg b");
    const double mnl = multiplier_norm_lower(b_, std::min(N_, 8));
    if (mnl > 1.0 + tol_.mult_norm_tol)
        throw NotContractiveError("multiplier norm lower bound exceeds 1: " + std::to_string(mnl));
    kernel_matrix();  // PSD screening
}

const DeltaData& HbContext::delta_at(int N) const {
    auto it = delta_cache_.find(N);
    if (it == delta_cache_.end())
        it = delta_cache_.emplace(N, std::make_shared<DeltaData>(b_, N, tol_.pinv_cutoff)).first;
    return *it->second;
}

const Eigen::MatrixXcd& HbContext::kernel_matrix() const {
    if (!kernel_) {
        const int n = nodes_.size();
        Eigen::MatrixXcd K(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) K(i, j) = kb_eval(b_, nodes_.points[i], nodes_.points[j]);
        K = 0.5 * (K + Eigen::MatrixXcd(K.adjoint()));  // symmetrize roundoff
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K, Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues().minCoeff();
        const double tr = K.real().trace();
        if (lmin < -tol_.kernel_psd_tol * tr)
            throw NotContractiveError("node kernel matrix indefinite: lambda_min = " +
                                      std::to_string(lmin));
        kernel_ = std::move(K);
    }
    return *kernel_;
}

Complex HbContext::hb_inner_trunc(const Poly& f, const Poly& g, int N) const {
    const DeltaData& dd = delta_at(N);
    return dd.quadform(dd.space.to_vector(f), dd.space.to_vector(g));
}

Complex HbContext::hb_inner(const Poly& f, const Poly& g) const {
    const std::vector<int> Ns = {N_, (3 * N_) / 2, 2 * N_};
    std::vector<double> x, vr, vi;
    for (int n : Ns) {
        const Complex v = hb_inner_trunc(f, g, n);
        x.push_back(1.0 / (n + 1.5));
        vr.push_back(v.real());
        vi.push_back(v.imag());
    }
    return {extrapolate_to_zero(x, vr), extrapolate_to_zero(x, vi)};
}

MembershipResult HbContext::membership_score(const Poly& f, int node_count) const {
    const Eigen::MatrixXcd& Kfull = kernel_matrix();
    const int n = node_count < 0 ? nodes_.size() : node_count;
    if (n > nodes_.size()) throw std::invalid_argument("membership_score: not enough nodes");
    const Eigen::MatrixXcd K = Kfull.topLeftCorner(n, n);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = f.evaluate(nodes_.points[i]);

    MembershipResult r;
    if (v.norm() == 0.0) return r;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K);
    const double cutoff = tol_.pinv_cutoff * std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    const Eigen::VectorXcd vc = es.eigenvectors().adjoint() * v;
    double outside = 0.0, score = 0.0;
    for (int i = 0; i < n; ++i) {
        if (es.eigenvalues()[i] > cutoff)
            score += std::norm(vc[i]) / es.eigenvalues()[i];
        else
            outside += std::norm(vc[i]);
    }
    r.range_residual = std::sqrt(outside) / v.norm();
    r.range_ok = r.range_residual <= tol_.range_tol;
    r.infinite = !r.range_ok;
    r.score = score;
    return r;
}

std::vector<MembershipStage> HbContext::membership_trace(const Poly& f,
                                                         const MembershipSchedule& s) const {
    if (nodes_.size() < s.max_nodes())
        throw std::invalid_argument("membership_trace: node set smaller than schedule");
    std::vector<MembershipStage> out;
    for (int k = 0; k < s.stages; ++k) {
        const int n = s.base_nodes << k;
        out.push_back({n, membership_score(f, n)});
    }
    return out;
}

double HbContext::membership_score_limit(const Poly& f) const {
    const int m = nodes_.size();
    if (m < 16) return membership_score(f).score;
    const double s1 = membership_score(f, m / 4).score;
    const double s2 = membership_score(f, m / 2).score;
    const double s3 = membership_score(f, m).score;
    if (!std::isfinite(s3)) return s3;
    const double d1 = s2 - s1, d2 = s3 - s2;
    if (d1 - d2 <= 0.0) return s3;  // not in the geometric regime
    return s3 + d2 * d2 / (d1 - d2);
}

double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& v) {
    const int n = static_cast<int>(x.size());
    std::vector<double> p = v;
    for (int level = 1; level < n; ++level)
        for (int i = 0; i < n - level; ++i)
            p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
    return p[0];
}

}  // namespace qe
