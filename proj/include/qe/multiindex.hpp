#pragma once

#include <cstdint>
#include <vector>

namespace qe {

/// Exponent multi-index for monomials z^alpha in d complex variables.
using MultiIndex = std::vector<int>;

/// Word over the alphabet {1..d} (free-semigroup index); empty word allowed.
struct Word {
    std::vector<int> letters;

    int length() const { return static_cast<int>(letters.size()); }
    bool operator==(const Word&) const = default;
};

int total_degree(const MultiIndex& alpha);

/// Graded lexicographic order: first by |alpha|, then lexicographic.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return graded_lex_less(a, b);
    }
};

/// All alpha with |alpha| <= N in graded lex order; size C(N+d, d).
std::vector<MultiIndex> enumerate_basis(int d, int N);

/// ||z^alpha||^2 in the Drury-Arveson space: alpha!/|alpha|!.
/// Computed in exact integer arithmetic, converted to double once.
double monomial_weight(const MultiIndex& alpha);

/// Words over {1..d} with length <= L, ordered by length then lexicographic.
std::vector<Word> enumerate_words(int d, int L);

/// Length-then-lex comparison used everywhere Fock bases appear.
bool word_less(const Word& a, const Word& b);

/// Commutative collapse of a word: exponent profile in d variables.
MultiIndex word_profile(const Word& w, int d);

}  // namespace qe
