#include "qe/report.hpp"

#include <sstream>

#include "qe/onevar.hpp"

namespace qe {

namespace {

nlohmann::json trace_json(const std::vector<MembershipStage>& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& st : trace)
        arr.push_back({{"nodes", st.node_count},
                       {"score", st.result.score},
                       {"range_residual", st.result.range_residual},
                       {"range_ok", st.result.range_ok}});
    return arr;
}

}  // namespace

nlohmann::json build_report(const HbContext& ctx, const ACertificate& cert,
                            const ReportConfig& cfg) {
    nlohmann::json rep;
    rep["schema"] = "qe-report/1";
    rep["input"]["b"] = nlohmann::json::parse(ctx.b().to_json());
    rep["input"]["config"] = {{"degree", cfg.degree},
                              {"nodes", cfg.base_nodes},
                              {"seed", cfg.seed},
                              {"radius", cfg.radius},
                              {"taylor_degree", cfg.taylor_degree},
                              {"positivity_degree", cfg.positivity_degree}};
    rep["verdict"] = verdict_name(cert.verdict);
    rep["evidence"] = {{"score_trace_b", trace_json(cert.trace_b)},
                       {"score_trace_one", trace_json(cert.trace_one)}};
    rep["defect"] = cert.defect;
    rep["a0"] = cert.a0;
    rep["a"] = nlohmann::json::parse(cert.a.to_json());
    rep["residuals"] = {{"defect_identity", cert.defect_identity},
                        {"positivity_min_eig", cert.positivity_min_eig}};
    if (cert.iso_residual >= 0.0) rep["residuals"]["isometry"] = cert.iso_residual;
    rep["stage_degrees"] = cert.stage_Ns;
    rep["seed"] = cfg.seed;

    if (ctx.d() == 1) {
        nlohmann::json oracle;
        const SzegoResult sz = szego_integral(ctx.b(), 4096);
        oracle["szego_integral"] = sz.minus_inf ? nlohmann::json("-inf")
                                                : nlohmann::json(sz.value);
        if (!sz.minus_inf && cert.a0 > 0.0) {
            const OuterResult outer = outer_a(ctx.b(), 4096);
            double worst = 0.0;
            for (int n = 0; n <= std::min(cert.a.degree(), 10); ++n)
                worst = std::max(worst, std::abs(cert.a.coeff({n}) - outer.a.coeff({n})));
            oracle["outer_coeff_max_diff"] = worst;
            oracle["outer_boundary_residual"] = outer.boundary_residual;
        }
        rep["residuals"]["oracle"] = oracle;
    }
    return rep;
}

std::string report_text(const nlohmann::json& rep) {
    std::ostringstream os;
    os << "verdict: " << rep.at("verdict").get<std::string>() << "\n";
    os << "defect:  " << rep.at("defect").get<double>() << "\n";
    os << "a0:      " << rep.at("a0").get<double>() << "\n";
    const auto& res = rep.at("residuals");
    if (res.contains("isometry"))
        os << "isometry residual:        " << res.at("isometry").get<double>() << "\n";
    os << "defect identity residual: " << res.at("defect_identity").get<double>() << "\n";
    os << "positivity lambda_min:    " << res.at("positivity_min_eig").get<double>() << "\n";
    if (res.contains("oracle")) {
        const auto& oc = res.at("oracle");
        os << "szego integral: " << oc.at("szego_integral").dump() << "\n";
        if (oc.contains("outer_coeff_max_diff"))
            os << "outer-coefficient max diff: " << oc.at("outer_coeff_max_diff").get<double>()
               << "\n";
    }
    os << "a coefficients: " << rep.at("a").dump() << "\n";
    return os.str();
}

int report_exit_code(const nlohmann::json& rep) {
    return rep.at("verdict").get<std::string>() == "Inconclusive" ? 2 : 0;
}

}  // namespace qe
