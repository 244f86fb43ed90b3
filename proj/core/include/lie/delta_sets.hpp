#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lie/backends.hpp"

namespace lie {

// finite delta-separated point set in the exponential chart of a backend.
// points are stored as int32 lattice coordinates (chart coordinate / delta),
// flattened row-major, sorted lexicographically, duplicates removed.
struct DeltaSet {
    Backend ambient;
    double delta = 0.0;
    double radius = 0.0;              // bounding chart radius the set was built for
    std::vector<std::int32_t> pts;    // size() * dim() entries
    bool truncated = false;           // a budget stopped point accumulation
    std::size_t dropped = 0;          // points discarded by budgets / chart limits

    int dim() const { return ambient.algebra_dim(); }
    std::size_t size() const { return dim() == 0 ? 0 : pts.size() / static_cast<std::size_t>(dim()); }
    const std::int32_t *point(std::size_t i) const { return pts.data() + i * static_cast<std::size_t>(dim()); }
};

// budget for product-set and generation routines.
struct ProductBudget {
    std::size_t max_points = 20'000'000;
};

struct GenerationBudget {
    int steps = 3;                    // max expression cost
    std::size_t region_cap = 4'000'000;   // per-cost-class point cap
    std::size_t point_cap = 20'000'000;   // total point cap
};

// how a point set acts on the module in bracket generation.
enum class ModuleAction {
    ScalarExp,   // acting set lives in abelian:1; t acts on R^d as v -> e^t * v
    Adjoint,     // acting set lives in the group's chart; p acts as Ad(exp(p))
};

struct CoveringProfile {
    double delta = 0.0;
    std::vector<double> rho;
    std::vector<std::size_t> count;
};

struct ProfileFit {
    double kappa_hat = 0.0;   // fitted exponent of rho^{-kappa_hat}
    double eps_hat = 0.0;     // normalized offset: count ~ delta^{-eps_hat} at rho = 1
};

// --- construction -----------------------------------------------------------

// round chart coordinates to the delta lattice and canonicalize (sort + dedup).
DeltaSet make_delta_set(const Backend &b, double delta, double radius,
                        const std::vector<std::vector<double>> &chart_points);

// canonicalize in place: sort lexicographically and remove duplicates.
void canonicalize(DeltaSet &s);

// full delta-lattice net of the chart ball of the given radius.
DeltaSet delta_net_ball(const Backend &b, double delta, double radius);

// chart coordinates of point i (lattice coords scaled by delta).
std::vector<double> chart_point(const DeltaSet &s, std::size_t i);

// group element of point i (exp of the chart coordinates).
GroupElement group_point(const DeltaSet &s, std::size_t i);

// --- covering numbers -------------------------------------------------------

// number of zero-aligned axis cells of side rho/sqrt(dim) meeting the set.
// requires rho >= delta (UsageError otherwise).
std::size_t covering_number(const DeltaSet &s, double rho);

// greedy ball covering: repeatedly pick an uncovered point, discard everything
// within chart distance rho. O(n^2); the comparison oracle for covering_number.
std::size_t greedy_covering_number(const DeltaSet &s, double rho);

// counts at rho = delta * 2^k ascending, stopping at the first rho >= 4 * R
// where R = max(bounding radius of the set, delta).
CoveringProfile covering_profile(const DeltaSet &s);

// least-squares fit of log count against -log rho over the profile;
// requires at least 3 scales (UsageError otherwise).
ProfileFit profile_fit(const CoveringProfile &p);

// --- set operations ---------------------------------------------------------

// pairwise products {exp(a) * exp(b)}, snapped back to the delta lattice.
// abelian backends dispatch to an FFT convolution when the pair count is large.
DeltaSet product_set(const DeltaSet &a, const DeltaSet &b,
                     const ProductBudget &budget = {});

// k-fold product A * A * ... * A (k factors). k = 0 gives {identity}.
DeltaSet k_fold_product(const DeltaSet &a, int k,
                        const ProductBudget &budget = {});

// closure of points + acting set under +, -, and the module action,
// up to expression cost budget.steps. points live in abelian:d chart coords.
DeltaSet generate_bracket(const DeltaSet &points, const DeltaSet &acting,
                          ModuleAction action, const GenerationBudget &budget);

// per catalog subgroup of the ambient backend: how far does the set escape
// the subgroup's neighborhood? escape_dist is the max over points of the
// chart-coordinate distance to the subgroup's chart plane; clear means the
// set is NOT contained in the rho-neighborhood (escape_dist > rho).
struct SubgroupClearance {
    std::string name;
    double escape_dist = 0.0;
    bool clear = false;
};
std::vector<SubgroupClearance> away_from_subgroups(const DeltaSet &s, double rho);

// fraction of the target net within lattice distance <= 1 of the sample set.
// both sets must share backend and delta (UsageError otherwise).
double ball_coverage(const DeltaSet &target, const DeltaSet &sample);

// abelian-only FFT sumset on the int32 lattice (componentwise gcd reduction,
// 0.5 threshold, deterministic); exposed for testing against the pairwise path.
DeltaSet convolve_sumset(const DeltaSet &a, const DeltaSet &b,
                         const ProductBudget &budget = {});

// --- io ---------------------------------------------------------------------

// one-line JSON header (backend, delta, radius, size, truncated, dropped)
// followed by one CSV row of lattice coordinates per point.
void save_delta_set(const DeltaSet &s, const std::string &path);
DeltaSet load_delta_set(const std::string &path);

// CSV "rho,count" with a delta comment header.
void save_profile(const CoveringProfile &p, const std::string &path);
CoveringProfile load_profile(const std::string &path);

}  // namespace lie
