#pragma once

#include <Eigen/Dense>

#include "qe/poly.hpp"

namespace qe {

struct WordLess {
    bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

/// Coefficients of a free (noncommutative) polynomial sum_w c_w L^w on words
/// of length <= L over {1..d}.
struct FockCoeffs {
    int d = 1;
    int L = 0;
    std::map<Word, Complex, WordLess> coeffs;

    Complex coeff(const Word& w) const;
    void set_coeff(const Word& w, Complex c);

    std::string to_json() const;
    static FockCoeffs from_json(const std::string& text);
};

/// Basis of the full Fock space truncated at word length L, length-then-lex.
struct FockBasis {
    int d = 1;
    int L = 0;
    std::vector<Word> words;
    std::map<Word, int, WordLess> index;

    FockBasis(int d, int L);
    int size() const { return static_cast<int>(words.size()); }
};

/// Truncated left creation operator L_i: xi_w -> xi_{iw} (0 past length L).
Eigen::MatrixXcd left_creation_matrix(int d, int i, int L);

/// Matrix of sum_w c_w L^w on the truncated basis: xi_u -> sum c_w xi_{wu}.
Eigen::MatrixXcd fock_operator_matrix(const FockCoeffs& f);

/// Commutative collapse lambda(f): word coefficients summed over monomial
/// profiles (no normalization beyond the plain sum).
Poly symmetrize(const FockCoeffs& f);

struct ShiftResult {
    Word v;             // minimal (length-then-lex) word with c_v != 0
    FockCoeffs shifted;  // coefficients c~_u = c_{v u}
};

/// Left shift by the minimal nonvanishing word: A~ = L_v^* A, so that
/// A~ has nonzero constant coefficient c_v.
ShiftResult shift_nonvanishing(const FockCoeffs& a);

/// lambda_min of I - B^H B - A^H A on the truncated Fock basis, optionally
/// restricted to the sub-basis of words of length <= sub_L.
double column_contractivity_fock(const FockCoeffs& b, const FockCoeffs& a, int sub_L = -1);

}  // namespace qe
