#include "lie/free_lie.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>

#include "lie/errors.hpp"

namespace lie {

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Rat rat_from_string(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw ParseError("rational with zero denominator: " + s);
        Rat q(n, d);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational: " + s);
    }
}

FreeLieAlgebra::FreeLieAlgebra(int s, int max_degree) : s_(s), max_degree_(max_degree) {
    if (s < 1 || s > 16) throw UsageError("FreeLieAlgebra: generator count must be in [1, 16]");
    if (max_degree < 1 || max_degree > 10)
        throw UsageError("FreeLieAlgebra: max_degree must be in [1, 10]");
    build_basis();
    build_products();
}

void FreeLieAlgebra::build_basis() {
    words_ = lyndon_words(s_, max_degree_);
    for (int id = 0; id < static_cast<int>(words_.size()); ++id) id_by_word_[words_[id]] = id;

    degree_first_.assign(max_degree_ + 2, static_cast<int>(words_.size()));
    for (int id = static_cast<int>(words_.size()) - 1; id >= 0; --id) {
        int d = static_cast<int>(words_[id].size());
        for (int k = d; k >= 1; --k) degree_first_[k] = id;
    }
    degree_first_[0] = 0;

    entries_.resize(words_.size());
    for (int id = 0; id < static_cast<int>(words_.size()); ++id) {
        entries_[id].word = words_[id];
        if (words_[id].size() >= 2) {
            auto [u, v] = standard_factorization(words_[id]);
            entries_[id].left = id_by_word_.at(u);
            entries_[id].right = id_by_word_.at(v);
        }
    }
}

std::pair<int, int> FreeLieAlgebra::degree_range(int d) const {
    if (d < 1 || d > max_degree_) throw UsageError("degree_range: degree out of range");
    return {degree_first_[d], degree_first_[d + 1]};
}

std::pair<int, int> FreeLieAlgebra::factorization_ids(int id) const {
    const auto& e = entries_.at(id);
    return {e.left, e.right};
}

namespace {

void add_terms(std::map<int, Rat>& acc, const std::vector<std::pair<int, Rat>>& t, const Rat& c) {
    for (const auto& [id, coeff] : t) {
        auto it = acc.find(id);
        if (it == acc.end())
            acc.emplace(id, c * coeff);
        else
            it->second += c * coeff;
    }
}

std::vector<std::pair<int, Rat>> collapse(std::map<int, Rat>& acc) {
    std::vector<std::pair<int, Rat>> out;
    out.reserve(acc.size());
    for (auto& [id, c] : acc)
        if (c != 0) out.emplace_back(id, std::move(c));
    return out;
}

}  // namespace

// [e_a, e_b] for basis ids with word(a) < word(b) lexicographically.
// either a standard pair (one new basis element) or rewritten by the Jacobi
// identity toward standard pairs.
FreeLieAlgebra::Terms FreeLieAlgebra::pair_product_rec(int a, int b,
                                                       std::map<std::pair<int, int>, Terms>& memo,
                                                       int depth) const {
    if (depth > 500) throw std::logic_error("free lie rewriting recursion blew the depth guard");
    auto key = std::make_pair(a, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const Word& wu = words_[a];
    const Word& wv = words_[b];
    Terms result;
    // (u, v) is the standard factorization of the Lyndon word uv exactly when
    // u is a letter or the right factor of u is >= v
    bool standard_pair = wu.size() == 1 || words_[entries_[a].right] >= wv;
    if (standard_pair) {
        Word cat = wu;
        cat.insert(cat.end(), wv.begin(), wv.end());
        result.emplace_back(id_by_word_.at(cat), Rat(1));
    } else {
        // [[u1, u2], v] = [u1, [u2, v]] + [[u1, v], u2]
        int u1 = entries_[a].left, u2 = entries_[a].right;
        Terms u2v = pair_product_rec(u2, b, memo, depth + 1);  // word(u2) < word(v) here
        Terms u1v = pair_product_rec(u1, b, memo, depth + 1);  // word(u1) < word(u) < word(v)
        Terms e1{{u1, Rat(1)}};
        Terms e2{{u2, Rat(1)}};
        std::map<int, Rat> acc;
        add_terms(acc, bracket_terms(e1, u2v, memo, depth + 1), Rat(1));
        add_terms(acc, bracket_terms(u1v, e2, memo, depth + 1), Rat(1));
        result = collapse(acc);
    }
    memo.emplace(key, result);
    return result;
}

FreeLieAlgebra::Terms FreeLieAlgebra::bracket_terms(const Terms& x, const Terms& y,
                                                    std::map<std::pair<int, int>, Terms>& memo,
                                                    int depth) const {
    std::map<int, Rat> acc;
    for (const auto& [i, ci] : x) {
        for (const auto& [j, cj] : y) {
            if (i == j) continue;
            if (degree_of(i) + degree_of(j) > max_degree_) continue;
            Rat c = ci * cj;
            if (words_[i] < words_[j]) {
                add_terms(acc, pair_product_rec(i, j, memo, depth + 1), c);
            } else {
                add_terms(acc, pair_product_rec(j, i, memo, depth + 1), -c);
            }
        }
    }
    return collapse(acc);
}

void FreeLieAlgebra::build_products() {
    const int n = dimension();
    std::map<std::pair<int, int>, Terms> memo;
    pair_table_.resize(n);
    for (int a = 0; a < n; ++a) {
        int rem = max_degree_ - degree_of(a);
        int bmax = rem >= 1 ? degree_first_[rem + 1] : 0;
        if (bmax <= a + 1) continue;
        pair_table_[a].resize(bmax - a - 1);
        for (int b = a + 1; b < bmax; ++b) {
            Terms t;
            if (words_[a] < words_[b]) {
                t = pair_product_rec(a, b, memo, 0);
            } else {
                t = pair_product_rec(b, a, memo, 0);
                for (auto& [id, c] : t) c = -c;
            }
            pair_table_[a][b - a - 1] = std::move(t);
        }
    }
}

const FreeLieAlgebra::Terms& FreeLieAlgebra::pair_product(int a, int b) const {
    return pair_table_[a][b - a - 1];
}

FreeLieElement FreeLieAlgebra::wrap(Terms t) const {
    FreeLieElement e;
    e.alg = this;
    e.terms = std::move(t);
    return e;
}

FreeLieElement FreeLieAlgebra::zero() const { return wrap({}); }

FreeLieElement FreeLieAlgebra::generator(int i) const {
    if (i < 1 || i > s_) throw UsageError("generator index out of range");
    Word w{static_cast<std::uint8_t>(i - 1)};
    return wrap({{id_by_word_.at(w), Rat(1)}});
}

FreeLieElement FreeLieAlgebra::basis_element(int id) const {
    if (id < 0 || id >= dimension()) throw UsageError("basis id out of range");
    return wrap({{id, Rat(1)}});
}

std::map<Word, Rat> FreeLieAlgebra::associative_expansion(int id) const {
    if (id < 0 || id >= dimension()) throw UsageError("basis id out of range");
    std::map<int, std::map<Word, Rat>> memo;
    std::function<const std::map<Word, Rat>&(int)> expand = [&](int k) -> const std::map<Word, Rat>& {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        std::map<Word, Rat> out;
        if (words_[k].size() == 1) {
            out.emplace(words_[k], Rat(1));
        } else {
            const auto& A = expand(entries_[k].left);
            const auto& B = expand(entries_[k].right);
            auto conv = [&](const std::map<Word, Rat>& p, const std::map<Word, Rat>& q, int sign) {
                for (const auto& [wa, ca] : p) {
                    for (const auto& [wb, cb] : q) {
                        Word cat = wa;
                        cat.insert(cat.end(), wb.begin(), wb.end());
                        out[cat] += sign * ca * cb;
                    }
                }
            };
            conv(A, B, 1);
            conv(B, A, -1);
            for (auto it2 = out.begin(); it2 != out.end();)
                it2 = it2->second == 0 ? out.erase(it2) : std::next(it2);
        }
        return memo.emplace(k, std::move(out)).first->second;
    };
    return expand(id);
}

namespace {

const FreeLieAlgebra* common_alg(const FreeLieElement& a, const FreeLieElement& b) {
    if (!a.alg || !b.alg) throw UsageError("element without an algebra context");
    if (a.alg != b.alg)
        throw UsageError("elements belong to different free Lie algebra contexts");
    return a.alg;
}

}  // namespace

bool operator==(const FreeLieElement& a, const FreeLieElement& b) {
    return a.alg == b.alg && a.terms == b.terms;
}

FreeLieElement operator+(const FreeLieElement& a, const FreeLieElement& b) {
    const FreeLieAlgebra* alg = common_alg(a, b);
    std::map<int, Rat> acc;
    add_terms(acc, a.terms, Rat(1));
    add_terms(acc, b.terms, Rat(1));
    FreeLieElement e;
    e.alg = alg;
    e.terms = collapse(acc);
    return e;
}

FreeLieElement operator-(const FreeLieElement& a, const FreeLieElement& b) {
    const FreeLieAlgebra* alg = common_alg(a, b);
    std::map<int, Rat> acc;
    add_terms(acc, a.terms, Rat(1));
    add_terms(acc, b.terms, Rat(-1));
    FreeLieElement e;
    e.alg = alg;
    e.terms = collapse(acc);
    return e;
}

FreeLieElement operator-(const FreeLieElement& a) { return Rat(-1) * a; }

FreeLieElement operator*(const Rat& c, const FreeLieElement& a) {
    if (!a.alg) throw UsageError("element without an algebra context");
    FreeLieElement e;
    e.alg = a.alg;
    if (c == 0) return e;
    e.terms = a.terms;
    for (auto& [id, coeff] : e.terms) coeff *= c;
    return e;
}

FreeLieElement bracket(const FreeLieElement& a, const FreeLieElement& b) {
    const FreeLieAlgebra* alg = common_alg(a, b);
    std::map<int, Rat> acc;
    for (const auto& [i, ci] : a.terms) {
        for (const auto& [j, cj] : b.terms) {
            if (i == j) continue;
            if (alg->degree_of(i) + alg->degree_of(j) > alg->max_degree()) continue;
            Rat c = ci * cj;
            if (i < j)
                add_terms(acc, alg->pair_product(i, j), c);
            else
                add_terms(acc, alg->pair_product(j, i), -c);
        }
    }
    FreeLieElement e;
    e.alg = alg;
    e.terms = collapse(acc);
    return e;
}

FreeLieElement star_inverse(const FreeLieElement& a) { return -a; }

std::optional<int> valuation(const FreeLieElement& a) {
    if (!a.alg) throw UsageError("element without an algebra context");
    if (a.terms.empty()) return std::nullopt;
    return a.alg->degree_of(a.terms.front().first);
}

FreeLieElement component(const FreeLieElement& a, int k) {
    if (!a.alg) throw UsageError("element without an algebra context");
    FreeLieElement e;
    e.alg = a.alg;
    for (const auto& t : a.terms)
        if (a.alg->degree_of(t.first) == k) e.terms.push_back(t);
    return e;
}

std::map<Word, Rat> associative_form(const FreeLieElement& a) {
    if (!a.alg) throw UsageError("element without an algebra context");
    std::map<Word, Rat> out;
    for (const auto& [id, c] : a.terms) {
        for (const auto& [w, cw] : a.alg->associative_expansion(id)) {
            out[w] += c * cw;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// ---------------------------------------------------------------------------
// truncated group law: universal commutator series, built once per order on a
// two-generator algebra and evaluated at the arguments.

namespace {

struct UniversalSeries {
    std::unique_ptr<FreeLieAlgebra> alg;  // two generators, max_degree = order
    FreeLieElement series;
};

// sum over sequences of blocks x^p y^q (p + q >= 1) of the right-nested
// commutator of the concatenated word, weighted by
// (-1)^(n-1) / (n * m * prod p_i! q_i!) where m is the word length.
UniversalSeries build_universal(int order) {
    UniversalSeries u;
    u.alg = std::make_unique<FreeLieAlgebra>(2, order);
    FreeLieElement x = u.alg->generator(1);
    FreeLieElement y = u.alg->generator(2);

    // degree-graded coefficient of each word, summed over all block sequences
    // that concatenate to it
    std::map<Word, Rat> wcoef;
    Word word;
    std::function<void(int, long long)> rec = [&](int nblocks, long long fact_prod) {
        if (!word.empty()) {
            int m = static_cast<int>(word.size());
            int p_last = 0, q_last = 0;
            for (int i = m - 1; i >= 0 && word[i] == 1; --i) q_last++;
            if (q_last == 0)
                for (int i = m - 1; i >= 0 && word[i] == 0; --i) p_last++;
            // a right-nested bracket whose innermost pair repeats a letter vanishes
            bool trivially_zero = q_last >= 2 || (q_last == 0 && p_last >= 2 && m > 1);
            if (!trivially_zero) {
                long sign = (nblocks % 2 == 1) ? 1 : -1;
                long den = static_cast<long>(nblocks) * m * static_cast<long>(fact_prod);
                Rat c(sign, den);
                c.canonicalize();
                wcoef[word] += c;
            }
        }
        int room = order - static_cast<int>(word.size());
        if (room <= 0) return;
        static const long long factorial[11] = {1,      1,      2,      6,      24, 120,
                                                720,    5040,   40320,  362880, 3628800};
        for (int p = 0; p <= room; ++p) {
            for (int q = 0; p + q <= room; ++q) {
                if (p + q == 0) continue;
                for (int i = 0; i < p; ++i) word.push_back(0);
                for (int i = 0; i < q; ++i) word.push_back(1);
                rec(nblocks + 1, fact_prod * factorial[p] * factorial[q]);
                word.resize(word.size() - p - q);
            }
        }
    };
    rec(0, 1);

    FreeLieElement acc = u.alg->zero();
    for (const auto& [w, c] : wcoef) {
        if (c == 0) continue;
        FreeLieElement nest = w.back() == 0 ? x : y;
        for (int i = static_cast<int>(w.size()) - 2; i >= 0 && !nest.is_zero(); --i)
            nest = bracket(w[i] == 0 ? x : y, nest);
        if (!nest.is_zero()) acc = acc + c * nest;
    }
    u.series = acc;
    return u;
}

const UniversalSeries& universal_series(int order) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<UniversalSeries>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[order];
    if (!slot) slot = std::make_unique<UniversalSeries>(build_universal(order));
    return *slot;
}

}  // namespace

FreeLieElement bch(const FreeLieElement& a, const FreeLieElement& b, int order) {
    const FreeLieAlgebra* alg = common_alg(a, b);
    if (order < 1 || order > alg->max_degree())
        throw UsageError("bch: order must be in [1, max_degree]");
    const UniversalSeries& u = universal_series(order);

    std::vector<std::optional<FreeLieElement>> cache(u.alg->dimension());
    std::function<const FreeLieElement&(int)> eval = [&](int id) -> const FreeLieElement& {
        if (cache[id]) return *cache[id];
        if (u.alg->degree_of(id) == 1) {
            cache[id] = u.alg->basis_word(id)[0] == 0 ? a : b;
        } else {
            auto [l, r] = u.alg->factorization_ids(id);
            cache[id] = bracket(eval(l), eval(r));
        }
        return *cache[id];
    };

    FreeLieElement out = alg->zero();
    for (const auto& [id, c] : u.series.terms) out = out + c * eval(id);
    return out;
}

// ---------------------------------------------------------------------------
// textual serialization

namespace {

std::string render_basis(const FreeLieAlgebra& alg, int id) {
    auto [l, r] = alg.factorization_ids(id);
    if (l < 0) return "x" + std::to_string(alg.basis_word(id)[0] + 1);
    return "[" + render_basis(alg, l) + "," + render_basis(alg, r) + "]";
}

}  // namespace

std::string to_string(const FreeLieElement& a) {
    if (!a.alg) throw UsageError("element without an algebra context");
    if (a.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [id, c] : a.terms) {
        bool neg = c < 0;
        Rat mag = neg ? Rat(-c) : c;
        std::string body = (mag == 1 ? "" : rat_to_string(mag) + " ") + render_basis(*a.alg, id);
        if (first) {
            out += (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

namespace {

struct Parser {
    const FreeLieAlgebra& alg;
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    void expect(char c) {
        if (!peek(c)) throw ParseError(std::string("expected '") + c + "' at offset " +
                                       std::to_string(pos) + " in element text");
        pos++;
    }

    FreeLieElement parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek('-')) {
            pos++;
            neg = true;
        } else if (peek('+')) {
            pos++;
        }
        FreeLieElement acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) break;
            char op = text[pos++];
            FreeLieElement t = parse_term();
            acc = op == '+' ? acc + t : acc - t;
        }
        return acc;
    }

    FreeLieElement parse_term() {
        skip_ws();
        Rat coeff(1);
        bool have_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                pos++;
            coeff = rat_from_string(text.substr(start, pos - start));
            have_coeff = true;
        }
        skip_ws();
        if (pos >= text.size() || (text[pos] != 'x' && text[pos] != '[')) {
            if (have_coeff && coeff == 0) return alg.zero();
            throw ParseError("expected generator or bracket at offset " + std::to_string(pos));
        }
        FreeLieElement atom = parse_atom();
        return have_coeff ? coeff * atom : atom;
    }

    FreeLieElement parse_atom() {
        skip_ws();
        if (peek('x')) {
            pos++;
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) pos++;
            if (start == pos) throw ParseError("expected generator index at offset " +
                                               std::to_string(pos));
            int idx = std::stoi(text.substr(start, pos - start));
            return alg.generator(idx);
        }
        expect('[');
        FreeLieElement a = parse_expr();
        expect(',');
        FreeLieElement b = parse_expr();
        expect(']');
        return bracket(a, b);
    }
};

}  // namespace

FreeLieElement parse_element(const FreeLieAlgebra& alg, const std::string& text) {
    Parser p{alg, text};
    p.skip_ws();
    if (p.pos < text.size() && text[p.pos] == '0') {
        size_t save = p.pos;
        p.pos++;
        p.skip_ws();
        if (p.pos == text.size()) return alg.zero();
        p.pos = save;
    }
    FreeLieElement e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("trailing characters at offset " + std::to_string(p.pos));
    return e;
}

}  // namespace lie
