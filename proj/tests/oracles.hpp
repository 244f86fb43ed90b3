#pragma once

// independent reference implementations used only by tests: a truncated free
// associative algebra (for the group-law series via log(exp x exp y)), and a
// brute-force Lyndon enumerator.  deliberately written against the definitions,
// not against the library internals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "lie/free_lie.hpp"
#include "lie/numeric.hpp"

namespace testutil {

using lie::Rat;
using lie::Word;

struct AssocPoly {
    int max_degree;
    std::map<Word, Rat> coeff;  // word (possibly empty = unit) -> coefficient
};

inline AssocPoly apoly_zero(int L) { return {L, {}}; }

inline AssocPoly apoly_unit(int L) {
    AssocPoly p{L, {}};
    p.coeff[Word{}] = Rat(1);
    return p;
}

inline AssocPoly apoly_gen(int L, std::uint8_t letter) {
    AssocPoly p{L, {}};
    p.coeff[Word{letter}] = Rat(1);
    return p;
}

inline void apoly_trim(AssocPoly& p) {
    for (auto it = p.coeff.begin(); it != p.coeff.end();)
        it = it->second == 0 ? p.coeff.erase(it) : std::next(it);
}

inline AssocPoly apoly_add(const AssocPoly& a, const AssocPoly& b) {
    AssocPoly out = a;
    for (const auto& [w, c] : b.coeff) out.coeff[w] += c;
    apoly_trim(out);
    return out;
}

inline AssocPoly apoly_scale(const Rat& s, const AssocPoly& a) {
    AssocPoly out{a.max_degree, {}};
    if (s == 0) return out;
    for (const auto& [w, c] : a.coeff) out.coeff[w] = s * c;
    return out;
}

inline AssocPoly apoly_mul(const AssocPoly& a, const AssocPoly& b) {
    AssocPoly out{a.max_degree, {}};
    for (const auto& [wa, ca] : a.coeff) {
        for (const auto& [wb, cb] : b.coeff) {
            if (static_cast<int>(wa.size() + wb.size()) > a.max_degree) continue;
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.coeff[w] += ca * cb;
        }
    }
    apoly_trim(out);
    return out;
}

// exp of a polynomial with zero constant term
inline AssocPoly apoly_exp(const AssocPoly& a) {
    AssocPoly out = apoly_unit(a.max_degree);
    AssocPoly pow = apoly_unit(a.max_degree);
    Rat fact(1);
    for (int k = 1; k <= a.max_degree; ++k) {
        pow = apoly_mul(pow, a);
        fact *= k;
        out = apoly_add(out, apoly_scale(Rat(1) / fact, pow));
    }
    return out;
}

// log of a polynomial with constant term 1
inline AssocPoly apoly_log(const AssocPoly& a) {
    AssocPoly q = a;
    q.coeff[Word{}] -= 1;
    apoly_trim(q);
    AssocPoly out = apoly_zero(a.max_degree);
    AssocPoly pow = apoly_unit(a.max_degree);
    for (int k = 1; k <= a.max_degree; ++k) {
        pow = apoly_mul(pow, q);
        Rat c(k % 2 == 1 ? 1 : -1, k);
        c.canonicalize();
        out = apoly_add(out, apoly_scale(c, pow));
    }
    return out;
}

// log(exp(x) exp(y)) truncated at L: the group-law series in associative words
inline AssocPoly group_law_series_assoc(int L) {
    AssocPoly x = apoly_gen(L, 0);
    AssocPoly y = apoly_gen(L, 1);
    return apoly_log(apoly_mul(apoly_exp(x), apoly_exp(y)));
}

// rotation-filter Lyndon test straight from the definition
inline bool brute_is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (size_t r = 1; r < w.size(); ++r) {
        Word rot(w.begin() + r, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + r);
        if (!(w < rot)) return false;
    }
    return true;
}

// all Lyndon words over s letters of exact degree d, by exhaustive enumeration
inline std::vector<Word> brute_lyndon_words(int s, int d) {
    std::vector<Word> out;
    Word w(d, 0);
    while (true) {
        if (brute_is_lyndon(w)) out.push_back(w);
        int i = d - 1;
        while (i >= 0 && w[i] == s - 1) {
            w[i] = 0;
            i--;
        }
        if (i < 0) break;
        w[i]++;
    }
    return out;
}

// independent oracle for bracket generation: enumerate expression trees
// syntactically (no value sharing) and evaluate each with the same
// per-operation rounding the library uses.  atoms cost 1, sums/differences add
// costs, a matrix action adds 1.
struct TreeOracle {
    using Row = std::vector<std::int32_t>;

    int dim;
    double delta;
    std::vector<Row> atoms;
    std::vector<lie::Mat> mats;
    std::vector<std::vector<Row>> by_cost;  // values of all trees of cost c

    static std::int32_t snap(double x, double delta) {
        return static_cast<std::int32_t>(std::nearbyint(x / delta));
    }

    void run(int steps) {
        by_cost.assign(static_cast<std::size_t>(steps) + 1, {});
        by_cost[1] = atoms;
        for (int c = 2; c <= steps; ++c) {
            std::vector<Row> out;
            for (int c1 = 1; c1 < c; ++c1) {
                for (const Row &u : by_cost[static_cast<std::size_t>(c1)]) {
                    for (const Row &v : by_cost[static_cast<std::size_t>(c - c1)]) {
                        Row s(u.size()), t(u.size());
                        for (std::size_t j = 0; j < u.size(); ++j) {
                            s[j] = u[j] + v[j];
                            t[j] = u[j] - v[j];
                        }
                        out.push_back(s);
                        out.push_back(t);
                    }
                }
            }
            for (const lie::Mat &m : mats) {
                for (const Row &x : by_cost[static_cast<std::size_t>(c - 1)]) {
                    Row r(x.size());
                    for (int i = 0; i < dim; ++i) {
                        double acc = 0;
                        for (int j = 0; j < dim; ++j)
                            acc += m.at(i, j) * x[static_cast<std::size_t>(j)] * delta;
                        r[static_cast<std::size_t>(i)] = snap(acc, delta);
                    }
                    out.push_back(r);
                }
            }
            // value-dedup within the class keeps the enumeration tractable
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            by_cost[static_cast<std::size_t>(c)] = out;
        }
    }

    std::set<Row> all() const {
        std::set<Row> s;
        for (const auto &cls : by_cost) s.insert(cls.begin(), cls.end());
        return s;
    }
};

}  // namespace testutil
