#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "qe/fock.hpp"
#include "qe/report.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const nlohmann::json& rep, const std::string& out, const std::string& format) {
    const std::string body = format == "text" ? qe::report_text(rep) : rep.dump(2) + "\n";
    if (out.empty()) {
        std::cout << body;
    } else {
        std::ofstream of(out);
        if (!of) throw std::runtime_error("cannot write " + out);
        of << body;
    }
}

int run_report(const std::string& input, const qe::ReportConfig& cfg, double defect_tol,
               const std::string& out, const std::string& format) {
    const qe::Poly b = qe::Poly::from_json(slurp(input));
    qe::Tolerances tol;
    if (defect_tol > 0) tol.defect_tol = defect_tol;
    const int N = std::max(cfg.degree, b.degree());
    const int total_nodes = cfg.base_nodes << 4;  // five doubling stages
    qe::NodeSet nodes =
        qe::NodeSet::sample(b.dim(), total_nodes, cfg.seed, cfg.radius, &b, tol.herglotz_avoid);
    qe::HbContext ctx(b, N, std::move(nodes), tol);
    const qe::ACertificate cert =
        qe::construct_a(ctx, cfg.taylor_degree, cfg.positivity_degree);
    const nlohmann::json rep = qe::build_report(ctx, cert, cfg);
    emit(rep, out, format);
    return qe::report_exit_code(rep);
}

int run_fock_shift(const std::string& a_path, const std::string& b_path, const std::string& out,
                   const std::string& format) {
    const qe::FockCoeffs A = qe::FockCoeffs::from_json(slurp(a_path));
    const qe::FockCoeffs B = qe::FockCoeffs::from_json(slurp(b_path));
    const qe::ShiftResult sh = qe::shift_nonvanishing(A);
    const qe::Poly lam = qe::symmetrize(sh.shifted);

    nlohmann::json rep;
    rep["schema"] = "qe-report/1";
    rep["command"] = "fock-shift";
    rep["v"] = sh.v.letters;
    rep["a_shifted"] = nlohmann::json::parse(sh.shifted.to_json());
    rep["lambda"] = nlohmann::json::parse(lam.to_json());
    rep["lambda_at_0"] = {{"re", lam.at_zero().real()}, {"im", lam.at_zero().imag()}};
    rep["lambda_min_before"] = qe::column_contractivity_fock(B, A);
    {
        // Shift at the matrix level (A~ = L_v^* A) so the comparison shares
        // one truncation; the coefficient-level object is reported above.
        Eigen::MatrixXcd Lv =
            Eigen::MatrixXcd::Identity(qe::FockBasis(A.d, A.L).size(), qe::FockBasis(A.d, A.L).size());
        for (int letter : sh.v.letters) Lv = Lv * qe::left_creation_matrix(A.d, letter, A.L);
        const Eigen::MatrixXcd Am = Lv.adjoint() * qe::fock_operator_matrix(A);
        const Eigen::MatrixXcd Bm = qe::fock_operator_matrix(B);
        const Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(Am.rows(), Am.cols()) -
                                   Bm.adjoint() * Bm - Am.adjoint() * Am;
        rep["lambda_min_after"] =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Q).eigenvalues().minCoeff();
    }
    const std::string body = format == "text"
                                 ? "v: " + nlohmann::json(sh.v.letters).dump() +
                                       "\nlambda: " + rep["lambda"].dump() + "\n"
                                 : rep.dump(2) + "\n";
    if (out.empty()) {
        std::cout << body;
    } else {
        std::ofstream of(out);
        of << body;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-extremity analysis of Drury-Arveson multipliers"};
    app.require_subcommand(1);

    qe::ReportConfig cfg;
    double defect_tol = -1.0;
    std::string input, out, format = "json";

    CLI::App* rep = app.add_subcommand("report", "analyze a polynomial multiplier b");
    rep->add_option("--input,-i", input, "Poly JSON file for b")->required();
    rep->add_option("--degree", cfg.degree, "truncation degree N");
    rep->add_option("--nodes", cfg.base_nodes, "base node count (5 doubling stages)");
    rep->add_option("--seed", cfg.seed, "sampling seed");
    rep->add_option("--radius", cfg.radius, "node sampling radius");
    rep->add_option("--taylor-degree", cfg.taylor_degree, "output degree for a");
    rep->add_option("--positivity-degree", cfg.positivity_degree, "positivity check degree");
    rep->add_option("--tol-defect", defect_tol, "defect tolerance override");
    rep->add_option("--out,-o", out, "output path (default stdout)");
    rep->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    std::string fock_a, fock_b;
    CLI::App* fshift = app.add_subcommand("fock-shift", "free shift lemma on Fock coefficients");
    fshift->add_option("--a", fock_a, "FockCoeffs JSON for A")->required();
    fshift->add_option("--b", fock_b, "FockCoeffs JSON for B")->required();
    fshift->add_option("--out,-o", out, "output path (default stdout)");
    fshift->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);
    try {
        if (rep->parsed()) return run_report(input, cfg, defect_tol, out, format);
        return run_fock_shift(fock_a, fock_b, out, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
