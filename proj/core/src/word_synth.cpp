#include "lie/word_synth.hpp"

#include <map>

#include "lie/errors.hpp"

namespace lie {

namespace {

// fold the letters of wd into the right-nested bracket [y_{w1},[y_{w2},...]]
FreeLieElement right_nested(const FreeLieAlgebra& alg, const Word& wd) {
    FreeLieElement e = alg.generator(wd.back() + 1);
    for (int i = static_cast<int>(wd.size()) - 2; i >= 0; --i)
        e = bracket(alg.generator(wd[i] + 1), e);
    return e;
}

// raise acc so that acc^k clears den: per prime p with exponent e in den,
// acc needs exponent >= ceil(e / k)
void accumulate_root(std::map<Int, int>& acc, Int den, int k) {
    auto take = [&](const Int& p, int e) {
        int need = (e + k - 1) / k;
        int& slot = acc[p];
        if (need > slot) slot = need;
    };
    for (unsigned long p = 2; den > 1 && Int(p) * Int(p) <= den; p = (p == 2 ? 3 : p + 2)) {
        int e = 0;
        while (den % p == 0) {
            den /= p;
            e++;
        }
        if (e) take(Int(p), e);
    }
    if (den > 1) take(den, 1);
}

// signed greedy decomposition m = sum sign * t^k with t >= 1, k >= 2
std::vector<std::pair<Int, int>> power_sum_decomposition(Int m, int k) {
    std::vector<std::pair<Int, int>> out;
    while (m != 0) {
        int sign = m > 0 ? 1 : -1;
        Int a = sign > 0 ? m : Int(-m);
        Int t;
        mpz_root(t.get_mpz_t(), a.get_mpz_t(), k);
        if (t == 0) t = 1;
        Int low, high;
        mpz_pow_ui(low.get_mpz_t(), t.get_mpz_t(), k);
        Int t1 = t + 1;
        mpz_pow_ui(high.get_mpz_t(), t1.get_mpz_t(), k);
        // choose the k-th power closest to the remainder
        if (a - low <= high - a) {
            out.emplace_back(t, sign);
            m -= sign > 0 ? low : Int(-low);
        } else {
            out.emplace_back(t1, sign);
            m -= sign > 0 ? high : Int(-high);
        }
    }
    return out;
}

long long to_ll(const Int& v, const char* what) {
    if (!v.fits_slong_p())
        throw BudgetExceeded(std::string(what) + " overflows the representable range");
    return v.get_si();
}

}  // namespace

SynthesizedApproximant synthesize(int s, int order, long long max_word_length) {
    if (s < 1) throw UsageError("synthesize: need at least one generator");
    if (order < 2) throw UsageError("synthesize: order must be >= 2");
    if (order > 10) throw UsageError("synthesize: order above the supported maximum of 10");
    if (max_word_length < 1) throw UsageError("synthesize: word length cap must be positive");

    if (s == 1) return SynthesizedApproximant{Int(1), word_letter(1, 1), order, 1};

    GroupWord w = word_identity(s);
    for (int i = 1; i <= s; ++i) w = concat(w, word_letter(s, i));
    Int C(1);

    for (int k = 2; k < order; ++k) {
        FreeLieAlgebra alg(s, k);
        std::vector<FreeLieElement> gens;
        for (int i = 1; i <= s; ++i) gens.push_back(alg.generator(i));
        // with unscaled generators the degree-k defect coefficients carry no
        // powers of C, only the group-law denominators
        FreeLieElement Dk = component(word_log(w, gens, k), k);
        if (Dk.is_zero()) continue;

        // right-normed rewriting: Dk = sum_w (c_w / k) [y_{w1},[y_{w2},...]];
        // rescaling every letter by u scales Dk by u^k, so u must make every
        // u^k c_w / k an integer
        std::map<Word, Rat> assoc = associative_form(Dk);
        std::map<Int, int> root_factors;
        for (const auto& [wd, c] : assoc) {
            Rat q = c / k;
            q.canonicalize();
            accumulate_root(root_factors, q.get_den(), k);
        }
        Int u(1);
        for (const auto& [p, e] : root_factors)
            for (int i = 0; i < e; ++i) u *= p;

        long long u_ll = to_ll(u, "synthesize: letter rescale factor");
        if (u_ll > 1) {
            if (w.length() > max_word_length / u_ll)
                throw BudgetExceeded("synthesize: word length cap exceeded while rescaling");
            w = rescale_letters(w, u_ll);
            C *= u;
        }
        Int uk;
        mpz_pow_ui(uk.get_mpz_t(), u.get_mpz_t(), k);

        for (const auto& [wd, c] : assoc) {
            if (right_nested(alg, wd).is_zero()) continue;
            Rat q = c * uk / k;
            q.canonicalize();
            if (q.get_den() != 1)
                throw std::logic_error("synthesize: multiplicity failed to clear denominators");
            Int m = -q.get_num();
            if (m == 0) continue;
            std::vector<int> indices(wd.begin(), wd.end());
            for (int& idx : indices) idx += 1;
            for (const auto& [t, sign] : power_sum_decomposition(m, k)) {
                GroupWord piece = commutator_word(s, indices, to_ll(t, "synthesize: letter power"));
                if (sign < 0) piece = word_inverse(piece);
                w = concat(w, piece);
                if (w.length() > max_word_length)
                    throw BudgetExceeded("synthesize: word length cap exceeded");
            }
        }
    }
    return SynthesizedApproximant{C, w, order, s};
}

CertificateReport certify(const SynthesizedApproximant& a) {
    if (a.s < 1) throw UsageError("certify: invalid generator count");
    if (a.order < 1 || a.order > 10) throw UsageError("certify: order out of range");

    FreeLieAlgebra alg(a.s, a.order);
    Rat inv_c(Int(1), a.C);
    inv_c.canonicalize();
    std::vector<FreeLieElement> subst;
    FreeLieElement target = alg.zero();
    for (int i = 1; i <= a.s; ++i) {
        subst.push_back(inv_c * alg.generator(i));
        target = target + alg.generator(i);
    }
    FreeLieElement defect = word_log(a.word, subst, a.order) - target;

    CertificateReport r;
    r.order = a.order;
    r.defect_valuation = valuation(defect);
    r.certified = !r.defect_valuation || *r.defect_valuation >= a.order;
    return r;
}

}  // namespace lie
