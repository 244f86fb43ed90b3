#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "lie/backends.hpp"
#include "lie/constructions.hpp"
#include "lie/delta_sets.hpp"
#include "lie/errors.hpp"

using namespace lie;

namespace {

using Row = std::vector<std::int32_t>;

std::set<Row> as_rows(const DeltaSet &s) {
    std::set<Row> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out.insert(Row(s.point(i), s.point(i) + s.dim()));
    return out;
}

}  // namespace

TEST_CASE("progression hand values") {
    // full lattice: spacing = delta, 33 points on [-1, 1]
    APConfig c{1, 1.0, 1.0 / 16.0, 1.0};
    DeltaSet p = arithmetic_progression_set(c);
    CHECK(p.size() == 33);
    CHECK(p.ambient == Backend::abelian(1));
    std::set<Row> rows = as_rows(p);
    for (int k = -16; k <= 16; ++k) CHECK(rows.count({k}) == 1);

    // square-root spacing: every coordinate a multiple of 16 lattice steps
    APConfig c2{1, 0.5, 1.0 / 256.0, 1.0};
    DeltaSet p2 = arithmetic_progression_set(c2);
    CHECK(p2.size() == 33);
    for (std::size_t i = 0; i < p2.size(); ++i) CHECK(p2.point(i)[0] % 16 == 0);
    CHECK(p2.point(0)[0] == -256);
    CHECK(p2.point(p2.size() - 1)[0] == 256);

    // two dimensions: the box is the per-axis progression squared
    APConfig c3{2, 0.5, 1.0 / 1024.0, 0.5};
    DeltaSet p3 = arithmetic_progression_set(c3);
    CHECK(p3.size() == 33 * 33);
    double count = static_cast<double>(p3.size());
    double dense = std::pow(std::pow(c3.delta, -c3.kappa * c3.d), 1.0);  // 2^10
    CHECK(count / dense <= 4.0);
    CHECK(count / dense >= 0.25);
}

TEST_CASE("progression validation") {
    CHECK_THROWS_AS(arithmetic_progression_set({0, 1.0, 0.25, 1.0}), UsageError);
    CHECK_THROWS_AS(arithmetic_progression_set({1, 0.0, 0.25, 1.0}), UsageError);
    CHECK_THROWS_AS(arithmetic_progression_set({1, 1.0, 1.5, 1.0}), UsageError);
    // spacing at or above the radius leaves only the origin: rejected
    CHECK_THROWS_AS(arithmetic_progression_set({1, 1.0, 0.25, 0.2}), UsageError);
    CHECK_THROWS_AS(arithmetic_progression_set({1, 1.0, 0.25, 0.25}), UsageError);
}

TEST_CASE("flat lift is the ball intersection") {
    APConfig c{1, 1.0, 1.0 / 16.0, 1.0};
    DeltaSet p = arithmetic_progression_set(c);

    // ball radius 2 contains everything
    DeltaSet l = lift_to_group(p, Backend::abelian(1), 1.0);
    CHECK(as_rows(l) == as_rows(p));
    CHECK(l.radius == doctest::Approx(2.0));

    // ball radius 1/2 keeps |k| <= 8
    DeltaSet l2 = lift_to_group(p, Backend::abelian(1), 0.25);
    CHECK(l2.size() == 17);
    for (std::size_t i = 0; i < l2.size(); ++i) CHECK(std::abs(l2.point(i)[0]) <= 8);
}

TEST_CASE("nilpotent lift enumerates vertical fibers") {
    Backend h = Backend::heis3();
    const double delta = 0.25, r = 0.5;
    std::vector<std::vector<double>> base = {{0.0, 0.0}, {0.25, 0.0}, {0.5, 0.75}, {1.25, 0.0}};
    DeltaSet p = make_delta_set(Backend::abelian(2), delta, 1.5, base);
    DeltaSet l = lift_to_group(p, h, r);
    CHECK(l.ambient == h);
    CHECK(l.delta == delta);

    // oracle: every net point of the chart ball whose first two coordinates
    // land exactly on the projected set
    std::set<Row> proj = as_rows(p);
    DeltaSet net = delta_net_ball(h, delta, 2.0 * r);
    std::set<Row> expect;
    for (std::size_t i = 0; i < net.size(); ++i) {
        Row q(net.point(i), net.point(i) + 3);
        if (proj.count({q[0], q[1]})) expect.insert(q);
    }
    CHECK(as_rows(l) == expect);

    // the out-of-ball projected point contributes nothing
    for (std::size_t i = 0; i < l.size(); ++i) CHECK(l.point(i)[0] <= 2);
    // central fiber over the origin spans the full vertical ball
    CHECK(as_rows(l).count({0, 0, 4}) == 1);
    CHECK(as_rows(l).count({0, 0, -4}) == 1);
    CHECK(as_rows(l).count({0, 0, 5}) == 0);
}

TEST_CASE("lift rejects bad inputs") {
    APConfig c{1, 1.0, 1.0 / 16.0, 1.0};
    DeltaSet p1 = arithmetic_progression_set(c);
    APConfig c2{2, 1.0, 1.0 / 16.0, 1.0};
    DeltaSet p2 = arithmetic_progression_set(c2);

    CHECK_THROWS_AS(lift_to_group(p1, Backend::su2(), 0.5), UsageError);
    CHECK_THROWS_AS(lift_to_group(p1, Backend::sl2r(), 0.5), UsageError);
    CHECK_THROWS_AS(lift_to_group(p1, Backend::sl2rxh3(), 0.5), UsageError);
    // dimension mismatches
    CHECK_THROWS_AS(lift_to_group(p2, Backend::abelian(1), 0.5), UsageError);
    CHECK_THROWS_AS(lift_to_group(p1, Backend::heis3(), 0.5), UsageError);
    // a curved-chart set cannot be a projected set
    DeltaSet hset = delta_net_ball(Backend::heis3(), 0.25, 0.5);
    CHECK_THROWS_AS(lift_to_group(hset, Backend::heis3(), 0.5), UsageError);
    CHECK_THROWS_AS(lift_to_group(p1, Backend::abelian(1), 0.0), UsageError);
}

TEST_CASE("nongrowth report on a square-root progression") {
    APConfig c{1, 0.5, 1.0 / 1024.0, 1.0};
    DeltaSet a = arithmetic_progression_set(c);
    NonGrowthReport rep = verify_nongrowth(a);

    CHECK(rep.count_a == 65);
    CHECK(rep.count_aaa == 193);
    CHECK(rep.ratio == doctest::Approx(193.0 / 65.0));
    CHECK(rep.ratio <= 10.0);
    CHECK_FALSE(rep.truncated);
    CHECK(rep.base_fit.kappa_hat == doctest::Approx(0.5).epsilon(0.2));
    CHECK(std::abs(rep.base_fit.kappa_hat - 0.5) <= 0.1);

    // abelian:1 has one normal subgroup with a quotient: the trivial one,
    // whose quotient map is the identity
    REQUIRE(rep.quotient_fits.size() == 1);
    CHECK(rep.quotient_fits[0].subgroup == "trivial");
    CHECK(rep.quotient_fits[0].fit.kappa_hat == doctest::Approx(rep.base_fit.kappa_hat));
    CHECK(rep.quotient_fits[0].fit.kappa_hat >= 0.4);

    REQUIRE(rep.clearances.size() == 1);
    CHECK(rep.clearances[0].name == "trivial");
    CHECK(rep.clearances[0].clear);  // the set reaches far beyond delta from the origin
}

TEST_CASE("nongrowth report on a full ball") {
    DeltaSet b = delta_net_ball(Backend::abelian(1), 1.0 / 64.0, 1.0);
    NonGrowthReport rep = verify_nongrowth(b);
    CHECK(rep.count_a == 129);
    CHECK(rep.count_aaa == 385);
    CHECK(rep.ratio <= 3.0 * 8.0);
    CHECK(rep.base_fit.kappa_hat == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("nongrowth quotients on the nilpotent backend") {
    // lifted square-root progression: base spacing 4 delta over [-1/4, 1/4]^2
    APConfig c{2, 0.5, 1.0 / 16.0, 0.4};
    DeltaSet p = arithmetic_progression_set(c);
    REQUIRE(p.size() == 9);
    DeltaSet a = lift_to_group(p, Backend::heis3(), 0.4);
    REQUIRE(a.size() > 0);
    NonGrowthReport rep = verify_nongrowth(a);
    CHECK(rep.count_a > 0);
    CHECK(rep.count_aaa >= rep.count_a);

    // quotients: trivial, center (onto the (x, y) plane), xz, yz
    REQUIRE(rep.quotient_fits.size() == 4);
    std::set<std::string> names;
    for (const QuotientProfile &q : rep.quotient_fits) names.insert(q.subgroup);
    CHECK(names == std::set<std::string>{"trivial", "center", "xz", "yz"});
    // the ladder is short at this coarse scale; only sanity-band the exponent
    for (const QuotientProfile &q : rep.quotient_fits)
        if (q.subgroup == "center") {
            CHECK(q.fit.kappa_hat >= 0.2);
            CHECK(q.fit.kappa_hat <= 1.5);
        }

    // clearances cover the full catalog, including non-normal lines
    CHECK(rep.clearances.size() == 6);
}

TEST_CASE("witness pairs span the next central step") {
    Backend h = Backend::heis3();
    CentralSeriesWitness w = central_series_witness(h);
    CHECK(w.level == 1);
    CHECK(w.exponent == 1);
    REQUIRE(w.pairs.size() == 1);
    AlgebraVector br = vec_bracket(w.pairs[0].first, w.pairs[0].second);
    CHECK(br.v[0] == 0.0);
    CHECK(br.v[1] == 0.0);
    CHECK(br.v[2] == doctest::Approx(1.0));

    CHECK_THROWS_AS(central_series_witness(Backend::abelian(2)), UsageError);
    CHECK_THROWS_AS(central_series_witness(Backend::su2()), UsageError);
}

TEST_CASE("witness map lands on the central one-parameter group") {
    Backend h = Backend::heis3();
    AlgebraVector z = algebra_zero(h);
    z.v[2] = 1.0;

    GroupElement at0 = central_series_witness_map(h, 0.0);
    CHECK(dist(at0, identity(h)) == 0.0);

    for (double t : {0.01, -0.01, 0.5, -0.5, 1.0, -1.0}) {
        GroupElement g = central_series_witness_map(h, t);
        GroupElement want = exp_map(vec_scale(t, z));
        CHECK(dist(g, want) <= 1e-12);
    }

    // dense parameter sweep: the map is exactly exp(t z) in this chart
    for (int i = -500; i <= 500; ++i) {
        double t = static_cast<double>(i) / 500.0;
        GroupElement g = central_series_witness_map(h, t);
        AlgebraVector lg = log_map(g);
        CHECK(std::abs(lg.v[0]) <= 1e-12);
        CHECK(std::abs(lg.v[1]) <= 1e-12);
        CHECK(std::abs(lg.v[2] - t) <= 1e-12);
    }

    // difference quotient at 0 recovers the central direction exactly
    double hstep = 1.0 / 4096.0;
    AlgebraVector dplus = log_map(central_series_witness_map(h, hstep));
    CHECK(dplus.v[2] / hstep == doctest::Approx(1.0));
    CHECK(dplus.v[0] == 0.0);
    CHECK(dplus.v[1] == 0.0);

    CHECK_THROWS_AS(central_series_witness_map(h, 1.5), DomainError);
    CHECK_THROWS_AS(central_series_witness_map(h, -1.5), DomainError);
    CHECK_THROWS_AS(central_series_witness_map(Backend::sl2r(), 0.1), UsageError);
}

TEST_CASE("commutator coverage fills the central ball") {
    Backend h = Backend::heis3();
    for (double rho : {0.1, 0.05}) {
        CoverageResult one = commutator_coverage(h, rho, 1);
        CHECK(one.c == doctest::Approx(1.0));
        CHECK(one.fraction == doctest::Approx(1.0));
    }

    CoverageResult none = commutator_coverage(h, 0.1, 0);
    CHECK(none.c == 0.0);
    CHECK(none.fraction == 0.0);

    // longer products can only reach more of the ball
    CoverageResult k1 = commutator_coverage(h, 0.1, 1);
    CoverageResult k3 = commutator_coverage(h, 0.1, 3);
    CHECK(k3.fraction >= k1.fraction);
    CHECK(k3.c >= k1.c);

    CHECK_THROWS_AS(commutator_coverage(Backend::su2(), 0.1, 1), UsageError);
    CHECK_THROWS_AS(commutator_coverage(Backend::abelian(3), 0.1, 1), UsageError);
    CHECK_THROWS_AS(commutator_coverage(h, 0.0, 1), UsageError);
    CHECK_THROWS_AS(commutator_coverage(h, 2.0, 1), UsageError);
    CHECK_THROWS_AS(commutator_coverage(h, 0.1, -1), UsageError);
}
