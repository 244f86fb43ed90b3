#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lie/backends.hpp"
#include "lie/delta_sets.hpp"

namespace lie {

// scaled integer box: the d-dimensional progression of spacing delta^kappa
// truncated at radius r, sampled on the delta lattice.
struct APConfig {
    int d = 1;
    double kappa = 1.0;
    double delta = 0.0;
    double r = 1.0;
};

// Centered d-dimensional progression with stride ~ delta^kappa, truncated to
// the box [-r, r]^d. The stride is rounded to a whole number of delta-cells so
// every point lies exactly on the resolution grid and sumsets stay exact
// progressions. requires 0 < kappa <= 1 and a stride below r.
DeltaSet arithmetic_progression_set(const APConfig &c);

// delta-net points of the chart ball B(1, 2r) of the target group whose
// abelianization coordinates coincide with a point of p ("within delta" on a
// shared lattice means exact coincidence). the target must have a nontrivial
// abelianization: flat groups lift over themselves, the nilpotent backend over
// its (x, y) plane; perfect groups are rejected.
DeltaSet lift_to_group(const DeltaSet &p, const Backend &g, double r);

struct QuotientProfile {
    std::string subgroup;
    ProfileFit fit;
};

struct NonGrowthReport {
    std::size_t count_a = 0;     // covering count of A at its own resolution
    std::size_t count_aaa = 0;   // same for the triple product
    double ratio = 0.0;
    bool truncated = false;
    ProfileFit base_fit;
    std::vector<QuotientProfile> quotient_fits;  // one per normal subgroup with a quotient
    std::vector<SubgroupClearance> clearances;   // escape distances at threshold delta
};

NonGrowthReport verify_nongrowth(const DeltaSet &a, const ProductBudget &budget = {});

// generating pairs whose commutators span the next step of the descending
// central series; exponent is the product length the coverage bound uses.
struct CentralSeriesWitness {
    int level = 1;
    std::vector<std::pair<AlgebraVector, AlgebraVector>> pairs;
    int exponent = 1;
};

CentralSeriesWitness central_series_witness(const Backend &b);

// the two-branch commutator witness: t >= 0 gives the commutator of
// exp(sqrt(t) x) and exp(sqrt(t) y), t < 0 the reversed order; continuous at 0.
GroupElement central_series_witness_map(const Backend &b, double t);

struct CoverageResult {
    double c = 0.0;         // largest tested c achieving the reported fraction
    double fraction = 0.0;  // covered share of the net of the central ball of radius c*rho^2
};

// scans c in {1, 1/2, 1/4, ...}: the fraction of the net of the central ball
// of radius c*rho^2 reachable as a k-fold product of witness values, each
// factor built from ball elements of radius rho. inversion is closed-form.
CoverageResult commutator_coverage(const Backend &b, double rho, int k);

}  // namespace lie
