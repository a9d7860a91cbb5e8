#include "qe/multiindex.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace qe {

using boost::multiprecision::cpp_int;

int total_degree(const MultiIndex& alpha) {
    int n = 0;
    for (int a : alpha) n += a;
    return n;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

std::vector<MultiIndex> enumerate_basis(int d, int N) {
    if (d < 1 || N < 0) throw std::invalid_argument("enumerate_basis: need d >= 1, N >= 0");
    std::vector<MultiIndex> out;
    MultiIndex cur(d, 0);
    // enumerate all alpha of total degree n in lex order, for n = 0..N
    for (int n = 0; n <= N; ++n) {
        std::vector<MultiIndex> level;
        MultiIndex a(d, 0);
        // recursive fill without recursion: odometer over compositions of n
        // position 0 gets the largest share first (lex descending on a means
        // ascending graded-lex? we want plain lex ascending), so generate all
        // compositions and sort.
        struct Rec {
            int d, n;
            std::vector<MultiIndex>& out;
            MultiIndex work;
            Rec(int d, int n, std::vector<MultiIndex>& out) : d(d), n(n), out(out), work(d, 0) {}
            void go(int pos, int rem) {
                if (pos == d - 1) {
                    work[pos] = rem;
                    out.push_back(work);
                    return;
                }
                for (int k = 0; k <= rem; ++k) {
                    work[pos] = k;
                    go(pos + 1, rem - k);
                }
            }
        } rec(d, n, level);
        rec.go(0, n);
        std::sort(level.begin(), level.end());
        for (auto& m : level) out.push_back(std::move(m));
    }
    return out;
}

double monomial_weight(const MultiIndex& alpha) {
    for (int a : alpha)
        if (a < 0) throw std::invalid_argument("monomial_weight: negative entry");
    // alpha!/|alpha|! = 1 / multinomial(|alpha|; alpha); build both exactly.
    cpp_int num = 1, den = 1;
    int n = 0;
    for (int a : alpha) {
        for (int k = 1; k <= a; ++k) num *= k;
    }
    n = total_degree(alpha);
    for (int k = 1; k <= n; ++k) den *= k;
    const cpp_int g = boost::multiprecision::gcd(num, den);
    num /= g;
    den /= g;
    return num.convert_to<double>() / den.convert_to<double>();
}

bool word_less(const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.letters < b.letters;
}

std::vector<Word> enumerate_words(int d, int L) {
    if (d < 1 || L < 0) throw std::invalid_argument("enumerate_words: need d >= 1, L >= 0");
    std::vector<Word> out;
    out.push_back(Word{});
    std::vector<Word> cur = {Word{}};
    for (int len = 1; len <= L; ++len) {
        std::vector<Word> next;
        for (const auto& w : cur) {
            for (int i = 1; i <= d; ++i) {
                Word v = w;
                v.letters.push_back(i);
                next.push_back(std::move(v));
            }
        }
        std::sort(next.begin(), next.end(), word_less);
        for (auto& w : next) out.push_back(w);
        cur = std::move(next);
    }
    return out;
}

MultiIndex word_profile(const Word& w, int d) {
    MultiIndex alpha(d, 0);
    for (int letter : w.letters) {
        if (letter < 1 || letter > d) throw std::invalid_argument("word letter out of range");
        ++alpha[letter - 1];
    }
    return alpha;
}

}  // namespace qe
