#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>

#include "qe/hardy.hpp"
#include "qe/poly.hpp"

namespace qe {

/// Raised when the contractivity screening refutes ||M_b|| <= 1.
struct NotContractiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double pinv_cutoff = 1e-12;      // relative singular value cutoff
    double range_tol = 1e-6;         // relative range-membership residual
    double cross_tol = 1e-2;         // agreement between the two H(b)-norm estimators
    double defect_tol = 1e-6;        // defect at/below this counts as extremal
    double plateau_tol = 2e-2;       // relative increment defining a plateau
    double div_cap = 1e6;            // score divergence cap, times ||f||^2_{H^2}
    double kernel_psd_tol = 1e-8;    // node kernel lambda_min >= -tol * trace
    double mult_norm_tol = 1e-8;     // refute if multiplier_norm_lower > 1 + tol
    double herglotz_avoid = 1e-8;    // resample nodes with |1 - b(z)| below this
};

/// k^b(z, w) = (1 - b(z) b(w)^*) / (1 - z w^*).
Complex kb_eval(const Poly& b, const std::vector<Complex>& z, const std::vector<Complex>& w);

/// Herglotz kernel K^b_w(z), via the Cayley-transform formula
/// (G_b(z) + G_b(w)^*) / (2 (1 - z w^*)); cross-checked against the
/// prefactored form (1-b(z))^{-1} (1-b(w)^*)^{-1} k^b_w(z) to cross_tol.
Complex herglotz_kernel_eval(const Poly& b, const std::vector<Complex>& z,
                             const std::vector<Complex>& w, double cross_tol = 1e-10);

struct NodeSet {
    std::vector<std::vector<Complex>> points;
    std::uint64_t seed = 42;
    double radius = 0.9;

    int size() const { return static_cast<int>(points.size()); }

    /// Uniform on the radius-rho ball via rejection sampling on the real 2d-cube,
    /// deterministic given the seed. Points where |1 - b(z)| < avoid_tol are resampled.
    static NodeSet sample(int d, int count, std::uint64_t seed, double radius,
                          const Poly* b_for_avoid = nullptr, double avoid_tol = 1e-8);

    std::string to_json() const;
    static NodeSet from_json(const std::string& text, int d);
};

/// Cached degree-N compression of I - M_b M_b^* in orthonormal coordinates,
/// with its eigendecomposition for pseudo-inverse quadratic forms.
struct DeltaData {
    TruncatedSpace space;
    Eigen::MatrixXcd delta;
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
    double cutoff_abs = 0.0;  // absolute eigenvalue cutoff used for the pseudo-inverse

    DeltaData(const Poly& b, int N, double pinv_cutoff);

    int rank() const;
    /// <f, g>_b surrogate: g^H Delta^+ f in orthonormal coordinates.
    Complex quadform(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const;
    /// Relative residual of f against ran(Delta); large => f escapes the model.
    double range_residual(const Eigen::VectorXcd& f) const;
};

struct MembershipResult {
    double score = 0.0;
    bool infinite = false;
    bool range_ok = true;
    double range_residual = 0.0;
};

struct MembershipStage {
    int node_count = 0;
    MembershipResult result;
};

enum class Verdict { QuasiExtreme, NotQuasiExtreme, Inconclusive };

struct VerdictEvidence {
    std::vector<MembershipStage> trace_b;
    std::vector<MembershipStage> trace_one;
    double defect = 0.0;
    bool score_b_diverges = false;
    bool score_b_plateaus = false;
    bool score_one_plateaus = false;
};

struct VerdictReport {
    Verdict verdict = Verdict::Inconclusive;
    VerdictEvidence evidence;
};

struct MembershipSchedule {
    int base_nodes = 16;
    int stages = 5;  // node counts base, 2*base, 4*base, ...

    int max_nodes() const { return base_nodes << (stages - 1); }
};

/// Immutable bundle of b, truncation degree, node set and cached data.
class HbContext {
public:
    HbContext(Poly b, int N, NodeSet nodes, Tolerances tol = {}, bool allow_constant = false);

    const Poly& b() const { return b_; }
    int d() const { return b_.dim(); }
    int N() const { return N_; }
    const NodeSet& nodes() const { return nodes_; }
    const Tolerances& tol() const { return tol_; }

    const DeltaData& delta_at(int N) const;
    const DeltaData& delta() const { return delta_at(N_); }

    /// Node kernel matrix [k^b(z_i, z_j)]; throws NotContractiveError if
    /// indefinite beyond tolerance.
    const Eigen::MatrixXcd& kernel_matrix() const;

    /// Surrogate <f, g>_b at truncation degree N.
    Complex hb_inner_trunc(const Poly& f, const Poly& g, int N) const;
    double hb_norm_trunc(const Poly& f) const { return hb_inner_trunc(f, f, N_).real(); }
    double hb_norm_trunc_at(const Poly& f, int N) const { return hb_inner_trunc(f, f, N).real(); }

    /// Richardson-extrapolated <f, g>_b over truncations {N, 3N/2, 2N}; the
    /// finite-section error of boundary-touching b decays like 1/N, so the
    /// plain value at N is used only as the leading term of the fit.
    Complex hb_inner(const Poly& f, const Poly& g) const;
    double hb_norm_sq(const Poly& f) const { return hb_inner(f, f).real(); }

    /// Quadratic-form score f(Z)^H K(Z)^+ f(Z) over the leading node_count
    /// nodes; infinite when f(Z) escapes ran K(Z).
    MembershipResult membership_score(const Poly& f, int node_count = -1) const;

    std::vector<MembershipStage> membership_trace(const Poly& f,
                                                  const MembershipSchedule& s) const;

    /// Node-count limit of the score: Aitken extrapolation over the last
    /// three doubling stages (m/4, m/2, m nodes). The scores increase to
    /// ||f||_b^2 when f is in H(b), roughly geometrically per doubling.
    double membership_score_limit(const Poly& f) const;

private:
    Poly b_;
    int N_;
    NodeSet nodes_;
    Tolerances tol_;
    mutable std::map<int, std::shared_ptr<DeltaData>> delta_cache_;
    mutable std::optional<Eigen::MatrixXcd> kernel_;
};

/// Quasi-extremity verdict: combines the membership dichotomy for b and 1
/// with the minimal Gleason defect. Constant b is rejected.
VerdictReport qe_verdict(const HbContext& ctx, const MembershipSchedule& schedule = {});

/// Score trace classifiers. A trace diverges when the node-kernel range test
/// fails at two consecutive stages or the score exceeds div_cap * h2_scale;
/// it plateaus when the last two relative increments stay below plateau_tol.
bool trace_diverges(const std::vector<MembershipStage>& trace, const Tolerances& tol,
                    double h2_scale);
bool trace_plateaus(const std::vector<MembershipStage>& trace, const Tolerances& tol);

std::string verdict_name(Verdict v);

/// Largest default-shaped schedule (base 16, doubling) fitting the node budget.
MembershipSchedule fit_schedule(int available_nodes);

/// Neville extrapolation of v(x) to x = 0.
double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& v);

}  // namespace qe
