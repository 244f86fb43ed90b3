#include "lie/lyndon.hpp"

#include <algorithm>

#include "lie/errors.hpp"

namespace lie {

std::vector<Word> lyndon_words(int s, int max_degree) {
    if (s < 1 || s > 64) throw UsageError("lyndon_words: alphabet size must be in [1, 64]");
    if (max_degree < 1) throw UsageError("lyndon_words: max_degree must be >= 1");

    // Duval's generation: start from (0); repeatedly extend periodically and
    // increment the last non-maximal letter.  yields Lyndon words in lex order.
    std::vector<Word> out;
    Word w{0};
    while (true) {
        if (static_cast<int>(w.size()) <= max_degree) out.push_back(w);
        Word t = w;
        w.clear();
        for (int i = 0; static_cast<int>(w.size()) < max_degree; ++i)
            w.push_back(t[i % t.size()]);
        while (!w.empty() && w.back() == s - 1) w.pop_back();
        if (w.empty()) break;
        w.back()++;
    }
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

long long lyndon_count(int s, int n) {
    if (s < 1 || n < 1) throw UsageError("lyndon_count: bad arguments");
    // (1/n) sum_{d | n} mu(d) s^{n/d}
    auto mobius = [](int m) {
        int mu = 1;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                mu = -mu;
            }
        }
        if (m > 1) mu = -mu;
        return mu;
    };
    long long total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        long long pw = 1;
        for (int i = 0; i < n / d; ++i) pw *= s;
        total += mu * pw;
    }
    return total / n;
}

bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    // strictly smaller than every proper rotation
    const size_t n = w.size();
    for (size_t r = 1; r < n; ++r) {
        for (size_t i = 0; i < n; ++i) {
            auto a = w[i], b = w[(i + r) % n];
            if (a != b) {
                if (a > b) return false;
                break;
            }
            if (i + 1 == n) return false;  // equal to a rotation -> periodic, not Lyndon
        }
    }
    return true;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
    if (w.size() < 2) throw UsageError("standard_factorization: need length >= 2");
    // right factor = lexicographically least proper suffix
    size_t best = 1;
    for (size_t i = 2; i < w.size(); ++i) {
        if (std::lexicographical_compare(w.begin() + i, w.end(), w.begin() + best, w.end()))
            best = i;
    }
    return {Word(w.begin(), w.begin() + best), Word(w.begin() + best, w.end())};
}

}  // namespace lie
