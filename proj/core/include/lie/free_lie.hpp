#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lie/lyndon.hpp"
#include "lie/rational.hpp"

namespace lie {

class FreeLieAlgebra;

// element of a truncated free Lie algebra in Lyndon coordinates.
// terms are (basis id, coefficient), sorted by id, coefficients nonzero.
// ids are graded, so the first term has minimal degree.
struct FreeLieElement {
    const FreeLieAlgebra* alg = nullptr;
    std::vector<std::pair<int, Rat>> terms;

    bool is_zero() const { return terms.empty(); }
};

bool operator==(const FreeLieElement& a, const FreeLieElement& b);
inline bool operator!=(const FreeLieElement& a, const FreeLieElement& b) { return !(a == b); }

// free Lie algebra on s generators over Q, truncated beyond max_degree.
// brackets that fall outside the truncation are dropped silently by design.
// the basis is the Lyndon-word basis with standard-factorization bracketing;
// all structure constants are computed eagerly, so a constructed instance is
// immutable and safe to share across threads.
class FreeLieAlgebra {
public:
    // throws UsageError unless 1 <= s <= 16 and 1 <= max_degree <= 10
    FreeLieAlgebra(int s, int max_degree);

    FreeLieAlgebra(const FreeLieAlgebra&) = delete;
    FreeLieAlgebra& operator=(const FreeLieAlgebra&) = delete;

    int generators() const { return s_; }
    int max_degree() const { return max_degree_; }
    int dimension() const { return static_cast<int>(words_.size()); }

    // basis ids are 0..dimension()-1 ordered by (degree, lexicographic word)
    const Word& basis_word(int id) const { return words_.at(id); }
    int degree_of(int id) const { return static_cast<int>(words_.at(id).size()); }
    // ids of exact degree d
    std::pair<int, int> degree_range(int d) const;  // [first, last)

    FreeLieElement zero() const;
    FreeLieElement generator(int i) const;  // 1-based, rendered as "x<i>"
    FreeLieElement basis_element(int id) const;

    // the basis bracket expanded in the free associative algebra (word -> coefficient);
    // used to rewrite homogeneous elements into right-nested form
    std::map<Word, Rat> associative_expansion(int id) const;

    // standard-factorization factor ids of a basis bracket; (-1, -1) for letters
    std::pair<int, int> factorization_ids(int id) const;

private:
    friend FreeLieElement bracket(const FreeLieElement&, const FreeLieElement&);

    struct BasisEntry {
        Word word;
        int left = -1;   // standard factorization factors, -1 for letters
        int right = -1;
    };

    int s_;
    int max_degree_;
    std::vector<Word> words_;
    std::vector<BasisEntry> entries_;
    std::map<Word, int> id_by_word_;
    std::vector<int> degree_first_;  // degree_first_[d] = first id of degree d

    // structure constants: product of basis pair (a < b by id) in Lyndon coordinates
    using Terms = std::vector<std::pair<int, Rat>>;
    std::vector<std::vector<Terms>> pair_table_;  // [a][b - a - 1], degree sum <= max

    void build_basis();
    void build_products();
    Terms pair_product_rec(int a, int b, std::map<std::pair<int, int>, Terms>& memo,
                           int depth) const;
    Terms bracket_terms(const Terms& x, const Terms& y,
                        std::map<std::pair<int, int>, Terms>& memo, int depth) const;
    const Terms& pair_product(int a, int b) const;  // requires a < b, degsum <= max

    FreeLieElement wrap(Terms t) const;
};

FreeLieElement operator+(const FreeLieElement& a, const FreeLieElement& b);
FreeLieElement operator-(const FreeLieElement& a, const FreeLieElement& b);
FreeLieElement operator-(const FreeLieElement& a);
FreeLieElement operator*(const Rat& c, const FreeLieElement& a);

FreeLieElement bracket(const FreeLieElement& a, const FreeLieElement& b);

// truncated group law in logarithmic coordinates: log(exp(a) exp(b)) up to the
// given order.  1 <= order <= max_degree of the ambient algebra.  computed by
// evaluating the universal commutator series of that order at (a, b).
FreeLieElement bch(const FreeLieElement& a, const FreeLieElement& b, int order);

// inverse for the truncated group law: bch(a, star_inverse(a), l) == 0
FreeLieElement star_inverse(const FreeLieElement& a);

// minimal degree with a nonzero coefficient; nullopt for the zero element
std::optional<int> valuation(const FreeLieElement& a);

// homogeneous degree-k part
FreeLieElement component(const FreeLieElement& a, int k);

// expansion in the free associative algebra (exact; words of the element's degrees)
std::map<Word, Rat> associative_form(const FreeLieElement& a);

// textual form, e.g. "x1 + x2 + 1/2 [x1,x2]"; stable across runs, reparseable
std::string to_string(const FreeLieElement& a);

// parse the textual form; brackets may contain arbitrary subexpressions and are
// rewritten to normal form.  throws ParseError / UsageError.
FreeLieElement parse_element(const FreeLieAlgebra& alg, const std::string& text);

}  // namespace lie
