#pragma once

#include <json.hpp>

#include "qe/realization.hpp"

namespace qe {

struct ReportConfig {
    int degree = 20;
    int base_nodes = 16;
    std::uint64_t seed = 42;
    double radius = 0.9;
    int taylor_degree = 16;
    int positivity_degree = 20;
};

/// Assemble the versioned analysis report ("qe-report/1"). Deterministic:
/// identical bytes for identical input, seed and flags (no wall-clock data).
nlohmann::json build_report(const HbContext& ctx, const ACertificate& cert,
                            const ReportConfig& cfg);

std::string report_text(const nlohmann::json& rep);

/// Exit code contract: 0 decided, 2 inconclusive.
int report_exit_code(const nlohmann::json& rep);

}  // namespace qe
