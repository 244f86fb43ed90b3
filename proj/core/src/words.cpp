#include "lie/words.hpp"

#include <sstream>

#include "lie/errors.hpp"

namespace lie {

namespace {

void check_s(int s) {
    if (s < 1) throw UsageError("word alphabet size must be >= 1");
}

// append a run, merging with the tail and dropping cancelled runs
void push_run(GroupWord& w, int gen, long long e) {
    if (e == 0) return;
    if (!w.runs.empty() && w.runs.back().first == gen) {
        w.runs.back().second += e;
        if (w.runs.back().second == 0) w.runs.pop_back();
        return;
    }
    w.runs.emplace_back(gen, e);
}

}  // namespace

long long GroupWord::length() const {
    long long n = 0;
    for (const auto& [g, e] : runs) n += e >= 0 ? e : -e;
    return n;
}

GroupWord word_identity(int s) {
    check_s(s);
    return GroupWord{s, {}};
}

GroupWord word_letter(int s, int i, long long e) {
    check_s(s);
    if (i < 1 || i > s) throw UsageError("word letter generator index out of range");
    GroupWord w{s, {}};
    push_run(w, i, e);
    return w;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
    if (a.s != b.s) throw UsageError("concat: words over different alphabets");
    GroupWord w = a;
    for (const auto& [g, e] : b.runs) push_run(w, g, e);
    return w;
}

GroupWord word_inverse(const GroupWord& a) {
    GroupWord w{a.s, {}};
    w.runs.reserve(a.runs.size());
    for (auto it = a.runs.rbegin(); it != a.runs.rend(); ++it)
        w.runs.emplace_back(it->first, -it->second);
    return w;
}

GroupWord rescale_letters(const GroupWord& a, long long u) {
    if (u == 0) return word_identity(a.s);
    GroupWord w{a.s, {}};
    w.runs.reserve(a.runs.size());
    for (const auto& [g, e] : a.runs) w.runs.emplace_back(g, e * u);
    return w;
}

GroupWord commutator_word(int s, const std::vector<int>& indices, long long power) {
    check_s(s);
    if (indices.empty()) throw UsageError("commutator_word: empty index sequence");
    for (int i : indices)
        if (i < 1 || i > s) throw UsageError("commutator_word: generator index out of range");
    GroupWord w = word_letter(s, indices.back(), power);
    for (int k = static_cast<int>(indices.size()) - 2; k >= 0; --k) {
        GroupWord a = word_letter(s, indices[k], power);
        // [a, w] = a w a^-1 w^-1
        w = concat(concat(a, w), concat(word_inverse(a), word_inverse(w)));
    }
    return w;
}

FreeLieElement word_log(const GroupWord& w, const std::vector<FreeLieElement>& substitution,
                        int order) {
    if (substitution.empty()) throw UsageError("word_log: empty substitution");
    const FreeLieAlgebra* alg = substitution.front().alg;
    if (!alg) throw UsageError("word_log: substitution entry without algebra context");
    for (const auto& e : substitution)
        if (e.alg != alg) throw UsageError("word_log: mixed algebra contexts in substitution");
    for (const auto& [g, e] : w.runs)
        if (g > static_cast<int>(substitution.size()))
            throw UsageError("word_log: no substitution for generator g" + std::to_string(g));

    FreeLieElement acc = alg->zero();
    bool first = true;
    for (const auto& [g, e] : w.runs) {
        FreeLieElement step = Rat(static_cast<long>(e)) * substitution[g - 1];
        if (first) {
            acc = step;
            first = false;
        } else {
            acc = bch(acc, step, order);
        }
    }
    return acc;
}

std::string to_string(const GroupWord& w) {
    if (w.runs.empty()) return "e";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : w.runs) {
        if (!first) os << ' ';
        first = false;
        os << 'g' << g;
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

GroupWord parse_word(int s, const std::string& text) {
    check_s(s);
    GroupWord w{s, {}};
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "e") continue;
        if (tok.size() < 2 || tok[0] != 'g')
            throw ParseError("bad word token '" + tok + "'");
        size_t caret = tok.find('^');
        long long e = 1;
        int g = 0;
        std::string gen_part = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        try {
            g = std::stoi(gen_part);
            if (caret != std::string::npos) e = std::stoll(tok.substr(caret + 1));
        } catch (const std::exception&) {
            throw ParseError("bad word token '" + tok + "'");
        }
        if (g < 1 || g > s) throw UsageError("word token generator out of range: " + tok);
        push_run(w, g, e);
    }
    return w;
}

}  // namespace lie
