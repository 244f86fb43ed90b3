#include "lie/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lie/errors.hpp"

namespace lie {

DeltaSet arithmetic_progression_set(const APConfig &c) {
    if (c.d < 1) throw UsageError("dimension must be positive");
    if (!(c.kappa > 0.0 && c.kappa <= 1.0)) throw UsageError("exponent must lie in (0, 1]");
    if (!(c.delta > 0.0 && c.delta < 1.0)) throw UsageError("scale must lie in (0, 1)");
    // The stride is snapped to a whole number of lattice cells so every point
    // lands exactly on the resolution grid. Sums of such progressions are again
    // progressions of the same stride; a stride that is irrational in units of
    // the cell would instead smear each 3-fold sum across neighboring cells and
    // inflate covering counts by a dimension-dependent factor.
    const long g = std::max(1L, std::lround(std::pow(c.delta, c.kappa - 1.0)));
    const double spacing = double(g) * c.delta;
    if (spacing >= c.r)
        throw UsageError("spacing reaches the radius; the progression is vacuous");

    // 1e-9 slack keeps exact powers of two from rounding below the integer
    const long m = static_cast<long>(std::floor(c.r / spacing + 1e-9));
    std::vector<std::vector<double>> pts;
    std::vector<long> idx(static_cast<std::size_t>(c.d), -m);
    while (true) {
        std::vector<double> p(static_cast<std::size_t>(c.d));
        for (int j = 0; j < c.d; ++j) p[static_cast<std::size_t>(j)] = double(idx[j]) * spacing;
        pts.push_back(std::move(p));
        int j = c.d - 1;
        for (; j >= 0; --j) {
            if (idx[j] < m) { ++idx[j]; break; }
            idx[j] = -m;
        }
        if (j < 0) break;
    }
    return make_delta_set(Backend::abelian(c.d), c.delta, c.r * std::sqrt(double(c.d)), pts);
}

DeltaSet lift_to_group(const DeltaSet &p, const Backend &g, double r) {
    if (!(r > 0.0)) throw UsageError("radius must be positive");
    if (p.ambient.kind != BackendKind::Abelian)
        throw UsageError("the projected set must be flat");

    if (g.kind == BackendKind::Abelian) {
        if (!(p.ambient == g)) throw UsageError("projected set dimension does not match the group");
        DeltaSet out;
        out.ambient = g;
        out.delta = p.delta;
        out.radius = 2.0 * r;
        const int d = p.dim();
        const double r2 = 4.0 * r * r * (1 + 1e-12);
        for (std::size_t i = 0; i < p.size(); ++i) {
            double q = 0.0;
            for (int j = 0; j < d; ++j) {
                double x = p.point(i)[j] * p.delta;
                q += x * x;
            }
            if (q <= r2) out.pts.insert(out.pts.end(), p.point(i), p.point(i) + d);
        }
        return out;
    }
    if (g.kind == BackendKind::Heisenberg3) {
        if (p.dim() != 2)
            throw UsageError("the nilpotent backend abelianizes onto two coordinates");
        DeltaSet out;
        out.ambient = g;
        out.delta = p.delta;
        out.radius = 2.0 * r;
        const double r2 = 4.0 * r * r * (1 + 1e-12);
        // one vertical fiber per projected point: z ranges over the chart ball
        for (std::size_t i = 0; i < p.size(); ++i) {
            double x = p.point(i)[0] * p.delta;
            double y = p.point(i)[1] * p.delta;
            double room = r2 - x * x - y * y;
            if (room < 0.0) continue;
            long zm = static_cast<long>(std::floor(std::sqrt(room) / p.delta + 1e-12));
            for (long z = -zm; z <= zm; ++z) {
                out.pts.push_back(p.point(i)[0]);
                out.pts.push_back(p.point(i)[1]);
                out.pts.push_back(static_cast<std::int32_t>(z));
            }
        }
        canonicalize(out);
        return out;
    }
    throw UsageError("backend '" + g.name() + "' is perfect: it has no abelianization to lift over");
}

NonGrowthReport verify_nongrowth(const DeltaSet &a, const ProductBudget &budget) {
    NonGrowthReport rep;
    DeltaSet aaa = k_fold_product(a, 3, budget);
    rep.count_a = covering_number(a, a.delta);
    rep.count_aaa = covering_number(aaa, aaa.delta);
    rep.ratio = rep.count_a == 0
                    ? 0.0
                    : static_cast<double>(rep.count_aaa) / static_cast<double>(rep.count_a);
    rep.truncated = a.truncated || aaa.truncated;
    rep.base_fit = profile_fit(covering_profile(a));

    for (const SubgroupDescriptor &n : subgroup_catalog(a.ambient)) {
        if (!n.normal || !n.quotient) continue;
        std::vector<std::vector<double>> proj;
        proj.reserve(a.size());
        double rad = a.delta;
        for (std::size_t i = 0; i < a.size(); ++i) {
            AlgebraVector v = algebra_vector(a.ambient, chart_point(a, i));
            AlgebraVector q = quotient_project_vec(v, n);
            double nn = vec_norm(q);
            rad = std::max(rad, nn);
            proj.push_back(q.v);
        }
        DeltaSet qs = make_delta_set(*n.quotient, a.delta, rad, proj);
        QuotientProfile qp;
        qp.subgroup = n.name;
        qp.fit = profile_fit(covering_profile(qs));
        rep.quotient_fits.push_back(std::move(qp));
    }

    rep.clearances = away_from_subgroups(a, a.delta);
    return rep;
}

CentralSeriesWitness central_series_witness(const Backend &b) {
    if (b.kind != BackendKind::Heisenberg3)
        throw UsageError("central series witnesses are configured for the nilpotent backend");
    CentralSeriesWitness w;
    w.level = 1;
    AlgebraVector x = algebra_zero(b), y = algebra_zero(b);
    x.v[0] = 1.0;
    y.v[1] = 1.0;
    w.pairs.emplace_back(x, y);
    w.exponent = 1;
    return w;
}

GroupElement central_series_witness_map(const Backend &b, double t) {
    if (b.kind != BackendKind::Heisenberg3)
        throw UsageError("central series witnesses are configured for the nilpotent backend");
    if (std::abs(t) > 1.0 + 1e-12)
        throw DomainError("witness parameter leaves the chart");
    const double s = std::sqrt(std::abs(t));
    AlgebraVector x = algebra_zero(b), y = algebra_zero(b);
    x.v[0] = s;
    y.v[1] = s;
    GroupElement gx = exp_map(x), gy = exp_map(y);
    if (t >= 0.0)
        return mul(mul(gx, gy), mul(inverse(gx), inverse(gy)));
    return mul(mul(gy, gx), mul(inverse(gy), inverse(gx)));
}

CoverageResult commutator_coverage(const Backend &b, double rho, int k) {
    if (b.kind != BackendKind::Heisenberg3)
        throw UsageError("commutator coverage is configured for the nilpotent backend");
    if (!(rho > 0.0 && rho <= 1.0)) throw UsageError("radius must lie in (0, 1]");
    if (k < 0) throw UsageError("product length must be nonnegative");

    // the target net is much finer than the quadratic range of the witness,
    // so coverage is decided by the map rather than the mesh
    const double dt = rho * rho / 64.0;
    if (k == 0) return {0.0, 0.0};

    AlgebraVector z = algebra_zero(b);
    z.v[2] = 1.0;
    CoverageResult best;
    for (double c = 1.0; c > 1e-6; c /= 2.0) {
        const long m = static_cast<long>(std::floor(c * rho * rho / dt + 1e-9));
        long hit = 0, total = 0;
        for (long i = -m; i <= m; ++i) {
            ++total;
            const double target = double(i) * dt;
            const double t = target / double(k);
            // each factor needs sqrt(|t|) <= rho to stay in the sampling ball
            if (std::abs(t) > rho * rho * (1 + 1e-12)) continue;
            GroupElement g = identity(b);
            for (int j = 0; j < k; ++j) g = mul(g, central_series_witness_map(b, t));
            GroupElement want = exp_map(vec_scale(target, z));
            if (dist(g, want) <= dt / 2.0) ++hit;
        }
        double frac = total == 0 ? 1.0 : static_cast<double>(hit) / static_cast<double>(total);
        if (frac > best.fraction || best.c == 0.0) {
            best.c = c;
            best.fraction = frac;
        }
        if (frac == 1.0) return {c, 1.0};
    }
    return best;
}

}  // namespace lie
