#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lie/free_lie.hpp"

namespace lie {

// word in the free group on s letters g1..gs, stored run-length encoded as
// (generator, exponent) with nonzero exponents and no two adjacent runs on the
// same generator -- i.e. always freely reduced.  length() counts single
// (exponent +-1) letters, which is the budgeted quantity.
struct GroupWord {
    int s = 0;
    std::vector<std::pair<int, long long>> runs;  // (generator 1..s, exponent != 0)

    bool empty() const { return runs.empty(); }
    long long length() const;
};

GroupWord word_identity(int s);
// single letter gi^e (e may be any nonzero integer; e = 0 gives the identity)
GroupWord word_letter(int s, int i, long long e = 1);
GroupWord concat(const GroupWord& a, const GroupWord& b);
GroupWord word_inverse(const GroupWord& a);
// w with every letter replaced by its u-th power (run exponents scaled by u);
// u = 0 gives the identity word
GroupWord rescale_letters(const GroupWord& a, long long u);

// repeated group commutator [g_{i1}, [g_{i2}, ... ]] with [a,b] = a b a^-1 b^-1;
// a single index gives the letter itself.  power raises every letter to the
// given power, so the symbolic log has leading term power^k [x_{i1},...,x_{ik}].
GroupWord commutator_word(int s, const std::vector<int>& indices, long long power = 1);

// symbolic log of the word map: fold the truncated group law over the runs of w
// with letter gi |-> substitution[i-1].  all substitution entries must share an
// algebra; w referencing a generator beyond the substitution is a usage error.
FreeLieElement word_log(const GroupWord& w, const std::vector<FreeLieElement>& substitution,
                        int order);

// textual form "g1^2 g2^-1 g1", one token per run; parseable by parse_word
std::string to_string(const GroupWord& w);
GroupWord parse_word(int s, const std::string& text);

}  // namespace lie
