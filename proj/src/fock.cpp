#include "qe/fock.hpp"

#include <json.hpp>

namespace qe {

Complex FockCoeffs::coeff(const Word& w) const {
    auto it = coeffs.find(w);
    return it == coeffs.end() ? Complex(0.0) : it->second;
}

void FockCoeffs::set_coeff(const Word& w, Complex c) {
    if (c == Complex(0.0))
        coeffs.erase(w);
    else
        coeffs[w] = c;
}

std::string FockCoeffs::to_json() const {
    nlohmann::json j;
    j["d"] = d;
    j["L"] = L;
    auto& arr = j["coeffs"];
    arr = nlohmann::json::array();
    for (const auto& [w, c] : coeffs)
        arr.push_back({{"word", w.letters}, {"re", c.real()}, {"im", c.imag()}});
    return j.dump(2);
}

FockCoeffs FockCoeffs::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    FockCoeffs f;
    f.d = j.at("d").get<int>();
    f.L = j.at("L").get<int>();
    if (f.d < 1 || f.L < 0) throw std::invalid_argument("FockCoeffs: bad dimensions");
    for (const auto& e : j.at("coeffs")) {
        Word w{e.at("word").get<std::vector<int>>()};
        if (w.length() > f.L) throw std::invalid_argument("FockCoeffs: word longer than L");
        for (int letter : w.letters)
            if (letter < 1 || letter > f.d) throw std::invalid_argument("FockCoeffs: bad letter");
        f.set_coeff(w, {e.value("re", 0.0), e.value("im", 0.0)});
    }
    return f;
}

FockBasis::FockBasis(int d_, int L_) : d(d_), L(L_), words(enumerate_words(d_, L_)) {
    for (int i = 0; i < size(); ++i) index[words[i]] = i;
}

Eigen::MatrixXcd left_creation_matrix(int d, int i, int L) {
    FockBasis basis(d, L);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (int c = 0; c < basis.size(); ++c) {
        const Word& w = basis.words[c];
        if (w.length() + 1 > L) continue;
        Word iw;
        iw.letters.push_back(i);
        iw.letters.insert(iw.letters.end(), w.letters.begin(), w.letters.end());
        M(basis.index.at(iw), c) = 1.0;
    }
    return M;
}

Eigen::MatrixXcd fock_operator_matrix(const FockCoeffs& f) {
    FockBasis basis(f.d, f.L);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (const auto& [w, c] : f.coeffs)
        for (int col = 0; col < basis.size(); ++col) {
            const Word& u = basis.words[col];
            if (w.length() + u.length() > f.L) continue;
            Word wu = w;
            wu.letters.insert(wu.letters.end(), u.letters.begin(), u.letters.end());
            M(basis.index.at(wu), col) += c;
        }
    return M;
}

Poly symmetrize(const FockCoeffs& f) {
    Poly p(f.d);
    for (const auto& [w, c] : f.coeffs) p.add_coeff(word_profile(w, f.d), c);
    return p;
}

ShiftResult shift_nonvanishing(const FockCoeffs& a) {
    const Word* v = nullptr;
    for (const auto& [w, c] : a.coeffs)
        if (c != Complex(0.0) && (v == nullptr || word_less(w, *v))) v = &w;
    if (v == nullptr) throw std::invalid_argument("shift_nonvanishing: zero element");

    ShiftResult r;
    r.v = *v;
    r.shifted.d = a.d;
    r.shifted.L = a.L;
    const int vl = r.v.length();
    for (const auto& [w, c] : a.coeffs) {
        if (w.length() < vl) continue;
        if (!std::equal(r.v.letters.begin(), r.v.letters.end(), w.letters.begin())) continue;
        Word u{std::vector<int>(w.letters.begin() + vl, w.letters.end())};
        r.shifted.set_coeff(u, c);
    }
    return r;
}

double column_contractivity_fock(const FockCoeffs& b, const FockCoeffs& a, int sub_L) {
    if (b.d != a.d || b.L != a.L)
        throw std::invalid_argument("column_contractivity_fock: mismatched shapes");
    const Eigen::MatrixXcd B = fock_operator_matrix(b);
    const Eigen::MatrixXcd A = fock_operator_matrix(a);
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(B.rows(), B.cols()) - B.adjoint() * B -
                         A.adjoint() * A;
    if (sub_L >= 0) {
        const int n = static_cast<int>(enumerate_words(b.d, sub_L).size());
        Q = Q.topLeftCorner(n, n).eval();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q);
    return es.eigenvalues().minCoeff();
}

}  // namespace qe
