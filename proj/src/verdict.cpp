#include "qe/gleason.hpp"

namespace qe {

bool trace_diverges(const std::vector<MembershipStage>& trace, const Tolerances& tol,
                    double h2_scale) {
    const int n = static_cast<int>(trace.size());
    int consecutive_fail = 0;
    for (const auto& st : trace) {
        consecutive_fail = st.result.range_ok ? 0 : consecutive_fail + 1;
        if (consecutive_fail >= 2) return true;
    }
    if (n == 1) return !trace[0].result.range_ok;
    return trace[n - 1].result.score > tol.div_cap * std::max(h2_scale, 1e-300);
}

bool trace_plateaus(const std::vector<MembershipStage>& trace, const Tolerances& tol) {
    const int n = static_cast<int>(trace.size());
    if (n < 3) return false;
    for (int k = n - 2; k < n; ++k) {
        if (!trace[k].result.range_ok || !trace[k - 1].result.range_ok) return false;
        const double prev = trace[k - 1].result.score;
        const double cur = trace[k].result.score;
        const double rel = std::abs(cur - prev) / std::max(std::abs(prev), 1e-300);
        if (rel > tol.plateau_tol) return false;
    }
    return true;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::QuasiExtreme: return "QuasiExtreme";
        case Verdict::NotQuasiExtreme: return "NotQuasiExtreme";
        default: return "Inconclusive";
    }
}

MembershipSchedule fit_schedule(int available_nodes) {
    MembershipSchedule s;
    if (available_nodes < s.base_nodes) {
        s.base_nodes = std::max(available_nodes, 1);
        s.stages = 1;
        return s;
    }
    int stages = 1;
    while (stages < 5 && (s.base_nodes << stages) <= available_nodes) ++stages;
    s.stages = stages;
    return s;
}

VerdictReport qe_verdict(const HbContext& ctx, const MembershipSchedule& schedule) {
    if (ctx.b().is_constant())
        throw std::invalid_argument("qe_verdict: constant b is excluded");
    VerdictReport rep;
    VerdictEvidence& ev = rep.evidence;
    const Poly one = Poly::constant(ctx.d(), 1.0);

    ev.trace_b = ctx.membership_trace(ctx.b(), schedule);
    ev.trace_one = ctx.membership_trace(one, schedule);
    ev.score_b_diverges = trace_diverges(ev.trace_b, ctx.tol(), h2_norm_sq(ctx.b()));
    ev.score_b_plateaus = trace_plateaus(ev.trace_b, ctx.tol());
    ev.score_one_plateaus = trace_plateaus(ev.trace_one, ctx.tol());
    ev.defect = solve_min_defect(ctx).defect;

    if (ev.score_b_diverges && ev.defect <= ctx.tol().defect_tol)
        rep.verdict = Verdict::QuasiExtreme;
    else if (ev.score_b_plateaus && ev.score_one_plateaus && ev.defect > ctx.tol().defect_tol)
        rep.verdict = Verdict::NotQuasiExtreme;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

}  // namespace qe
