#pragma once

#include <optional>
#include <string>

#include "lie/words.hpp"

namespace lie {

// scale constant C and word w approximating the exponential of C times the
// generator sum: the symbolic log of w at the substitution x_i / C equals
// x_1 + ... + x_s plus a defect of valuation >= order.
struct SynthesizedApproximant {
    Int C;
    GroupWord word;
    int order = 0;
    int s = 0;
};

struct CertificateReport {
    int order = 0;
    // minimal degree of a nonzero defect term; nullopt when the defect vanishes
    // identically at the truncation order (e.g. one generator)
    std::optional<int> defect_valuation;
    bool certified = false;
};

// builds the approximant by induction on the degree: starting from g1...gs,
// each step cancels the lowest surviving defect degree by appending repeated
// commutator words with powered letters, rescaling the existing word so the
// required multiplicities are integers.  throws BudgetExceeded if the word
// grows past max_word_length letters.
SynthesizedApproximant synthesize(int s, int order, long long max_word_length = 1'000'000);

// recomputes the defect log(w at x_i/C) - sum x_i in exact arithmetic at the
// approximant's order and reports its valuation
CertificateReport certify(const SynthesizedApproximant& a);

}  // namespace lie
