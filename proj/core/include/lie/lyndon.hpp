#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace lie {

// word over the alphabet {0, 1, ..., s-1}; degree = length
using Word = std::vector<std::uint8_t>;

// all Lyndon words over s letters with 1 <= length <= max_degree, ordered by
// (degree, lexicographic).  Duval's generation; throws UsageError on s < 1,
// max_degree < 1 or s > 64.
std::vector<Word> lyndon_words(int s, int max_degree);

// number of Lyndon words of exact degree n over s letters (necklace count),
// computed from the Moebius sum; used to cross-check enumeration
long long lyndon_count(int s, int n);

bool is_lyndon(const Word& w);

// standard factorization w = uv of a Lyndon word of length >= 2: v is the
// lexicographically least proper suffix; both factors are Lyndon and u < v
std::pair<Word, Word> standard_factorization(const Word& w);

}  // namespace lie
