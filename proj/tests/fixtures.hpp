#pragma once

#include "qe/dbr.hpp"

namespace fixtures {

// (1 + z)/2 : boundary-touching, not quasi-extreme, companion (1 - z)/2.
inline qe::Poly b_half() {
    qe::Poly b(1);
    b.set_coeff({0}, 0.5);
    b.set_coeff({1}, 0.5);
    return b;
}

// z : quasi-extreme, H(b) trivial.
inline qe::Poly b_z() {
    qe::Poly b(1);
    b.set_coeff({1}, 1.0);
    return b;
}

// z/2 : strictly contractive, companion sqrt(3)/2.
inline qe::Poly b_halfz() {
    qe::Poly b(1);
    b.set_coeff({1}, 0.5);
    return b;
}

// z1/2 + z2^2/4 : two-variable fixture, not quasi-extreme.
inline qe::Poly b_twovar() {
    qe::Poly b(2);
    b.set_coeff({1, 0}, 0.5);
    b.set_coeff({0, 2}, 0.25);
    return b;
}

inline qe::HbContext make_ctx(const qe::Poly& b, int N, int node_count = 256,
                              std::uint64_t seed = 42, double radius = 0.9) {
    qe::NodeSet nodes = qe::NodeSet::sample(b.dim(), node_count, seed, radius, &b);
    return qe::HbContext(b, N, std::move(nodes));
}

}  // namespace fixtures
