#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qe/fock.hpp"
#include "qe/onevar.hpp"
#include "qe/report.hpp"

namespace py = pybind11;
using namespace qe;

namespace {

HbContext context_for(const Poly& b, int degree, int base_nodes, std::uint64_t seed,
                      double radius) {
    const int N = std::max(degree, b.degree());
    const int total = base_nodes << 4;
    NodeSet ns = NodeSet::sample(b.dim(), total, seed, radius, &b);
    return HbContext(b, N, ns, Tolerances{});
}

}  // namespace

PYBIND11_MODULE(_daqe, m) {
    m.doc() = "Drury-Arveson quasi-extremity toolkit (JSON-string interface)";

    m.def("poly_degree", [](const std::string& text) { return Poly::from_json(text).degree(); },
          py::arg("poly_json"));

    m.def(
        "poly_eval",
        [](const std::string& text, const std::vector<std::complex<double>>& z) {
            return Poly::from_json(text).evaluate(z);
        },
        py::arg("poly_json"), py::arg("z"));

    m.def(
        "verdict",
        [](const std::string& text, int degree, int base_nodes, std::uint64_t seed,
           double radius) {
            const Poly b = Poly::from_json(text);
            const HbContext ctx = context_for(b, degree, base_nodes, seed, radius);
            MembershipSchedule sched = fit_schedule(ctx.nodes().size());
            return verdict_name(qe_verdict(ctx, sched).verdict);
        },
        py::arg("poly_json"), py::arg("degree") = 20, py::arg("base_nodes") = 16,
        py::arg("seed") = 42, py::arg("radius") = 0.9);

    m.def(
        "report",
        [](const std::string& text, int degree, int base_nodes, std::uint64_t seed,
           double radius, int taylor_degree, int positivity_degree) {
            const Poly b = Poly::from_json(text);
            ReportConfig cfg;
            cfg.degree = degree;
            cfg.base_nodes = base_nodes;
            cfg.seed = seed;
            cfg.radius = radius;
            cfg.taylor_degree = taylor_degree;
            cfg.positivity_degree = positivity_degree;
            const HbContext ctx = context_for(b, degree, base_nodes, seed, radius);
            const int N = ctx.N();
            const ACertificate cert =
                construct_a(ctx, taylor_degree, positivity_degree, {N, N + N / 2, 2 * N});
            return build_report(ctx, cert, cfg).dump(2);
        },
        py::arg("poly_json"), py::arg("degree") = 20, py::arg("base_nodes") = 16,
        py::arg("seed") = 42, py::arg("radius") = 0.9, py::arg("taylor_degree") = 16,
        py::arg("positivity_degree") = 20);

    m.def(
        "construct_a",
        [](const std::string& text, int degree, int base_nodes, std::uint64_t seed,
           double radius, int taylor_degree) {
            const Poly b = Poly::from_json(text);
            const HbContext ctx = context_for(b, degree, base_nodes, seed, radius);
            const ACertificate cert = construct_a(ctx, taylor_degree, 20);
            return cert.a.to_json();
        },
        py::arg("poly_json"), py::arg("degree") = 20, py::arg("base_nodes") = 16,
        py::arg("seed") = 42, py::arg("radius") = 0.9, py::arg("taylor_degree") = 16);

    m.def(
        "szego_integral",
        [](const std::string& text, int M) {
            const SzegoResult s = szego_integral(Poly::from_json(text), M);
            return py::make_tuple(s.value, s.minus_inf);
        },
        py::arg("poly_json"), py::arg("grid") = 2048);

    m.def(
        "outer_a",
        [](const std::string& text, int M) {
            return outer_a(Poly::from_json(text), M).a.to_json();
        },
        py::arg("poly_json"), py::arg("grid") = 2048);

    m.def(
        "column_positivity",
        [](const std::string& b_text, const std::string& a_text, int N) {
            return column_positivity(Poly::from_json(b_text), Poly::from_json(a_text), N);
        },
        py::arg("b_json"), py::arg("a_json"), py::arg("degree"));

    m.def(
        "fock_shift",
        [](const std::string& text) {
            const ShiftResult r = shift_nonvanishing(FockCoeffs::from_json(text));
            return py::make_tuple(r.v.letters, r.shifted.to_json());
        },
        py::arg("fock_json"));
}
