#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "lie/delta_sets.hpp"
#include "lie/errors.hpp"
#include "lie/numeric.hpp"

namespace lie {

namespace {

using Row = std::vector<std::int32_t>;

std::int32_t snap_coord(double x, double delta) {
    double r = std::nearbyint(x / delta);
    if (std::abs(r) > 2e9) throw UsageError("coordinate too large for the lattice");
    return static_cast<std::int32_t>(r);
}

Row snap_row(const std::vector<double> &x, double delta) {
    Row r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = snap_coord(x[i], delta);
    return r;
}

DeltaSet from_rows(const Backend &b, double delta, const std::set<Row> &rows) {
    DeltaSet out;
    out.ambient = b;
    out.delta = delta;
    double rmax = delta;
    for (const Row &r : rows) {
        double q = 0.0;
        for (std::int32_t v : r) {
            out.pts.push_back(v);
            double c = double(v) * delta;
            q += c * c;
        }
        rmax = std::max(rmax, std::sqrt(q));
    }
    out.radius = rmax;
    return out;
}

}  // namespace

DeltaSet product_set(const DeltaSet &a, const DeltaSet &b, const ProductBudget &budget) {
    if (!(a.ambient == b.ambient)) throw UsageError("operands live in different groups");
    if (a.delta != b.delta) throw UsageError("operands have different resolutions");
    const Backend &bk = a.ambient;
    if (bk.kind == BackendKind::Abelian && a.size() * b.size() > 250'000)
        return convolve_sumset(a, b, budget);

    const int d = a.dim();
    if (bk.chart_is_global()) {
        // the chart covers the whole group, so the product law is evaluated on
        // chart coordinates directly (no radius constraint applies): flat sum,
        // or the terminating series x + y + [x,y]/2 in the nilpotent case
        std::set<Row> rows;
        bool truncated = false;
        std::size_t dropped = 0;
        Row r(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < a.size() && !truncated; ++i) {
            const std::int32_t *pa = a.point(i);
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::int32_t *pb = b.point(j);
                for (int t = 0; t < d; ++t)
                    r[static_cast<std::size_t>(t)] = pa[t] + pb[t];
                if (bk.kind == BackendKind::Heisenberg3) {
                    double cross = (double(pa[0]) * double(pb[1]) -
                                    double(pa[1]) * double(pb[0])) *
                                   a.delta / 2.0;
                    r[2] = static_cast<std::int32_t>(
                        std::int64_t(pa[2]) + std::int64_t(pb[2]) +
                        std::int64_t(std::nearbyint(cross)));
                }
                if (rows.size() >= budget.max_points && !rows.count(r)) {
                    truncated = true;
                    dropped += (a.size() - i) * b.size() - j;
                    break;
                }
                rows.insert(r);
            }
        }
        DeltaSet out = from_rows(bk, a.delta, rows);
        out.truncated = truncated;
        out.dropped = dropped;
        return out;
    }
    // exp each operand once; products that leave the chart are counted dropped
    std::vector<GroupElement> ga, gb;
    std::vector<char> ok_a(a.size(), 1), ok_b(b.size(), 1);
    ga.reserve(a.size());
    gb.reserve(b.size());
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        try {
            ga.push_back(group_point(a, i));
        } catch (const DomainError &) {
            ga.push_back(identity(bk));
            ok_a[i] = 0;
        }
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        try {
            gb.push_back(group_point(b, j));
        } catch (const DomainError &) {
            gb.push_back(identity(bk));
            ok_b[j] = 0;
        }
    }

    std::set<Row> rows;
    bool truncated = false;
    for (std::size_t i = 0; i < a.size() && !truncated; ++i) {
        if (!ok_a[i]) {
            dropped += b.size();
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!ok_b[j]) {
                ++dropped;
                continue;
            }
            std::vector<double> lg;
            try {
                lg = log_map(mul(ga[i], gb[j])).v;
            } catch (const DomainError &) {
                ++dropped;
                continue;
            }
            Row r = snap_row(lg, a.delta);
            if (rows.size() >= budget.max_points && !rows.count(r)) {
                truncated = true;
                dropped += (a.size() - i) * b.size() - j;
                break;
            }
            rows.insert(std::move(r));
        }
    }
    DeltaSet out = from_rows(bk, a.delta, rows);
    out.truncated = truncated;
    out.dropped = dropped;
    (void)d;
    return out;
}

DeltaSet k_fold_product(const DeltaSet &a, int k, const ProductBudget &budget) {
    if (k < 0) throw UsageError("fold count must be nonnegative");
    if (k == 0) {
        DeltaSet out;
        out.ambient = a.ambient;
        out.delta = a.delta;
        out.radius = a.delta;
        out.pts.assign(static_cast<std::size_t>(a.dim()), 0);
        return out;
    }
    DeltaSet acc = a;
    for (int i = 1; i < k; ++i) {
        acc = product_set(acc, a, budget);
        if (acc.truncated) break;
    }
    return acc;
}

DeltaSet generate_bracket(const DeltaSet &points, const DeltaSet &acting,
                          ModuleAction action, const GenerationBudget &budget) {
    if (points.ambient.kind != BackendKind::Abelian)
        throw UsageError("generation runs over a flat module");
    const int d = points.dim();
    if (budget.steps < 1) throw UsageError("need a positive step budget");

    // precompute the linear action of every acting point on the module
    std::vector<Mat> mats;
    mats.reserve(acting.size());
    if (action == ModuleAction::ScalarExp) {
        if (acting.ambient.kind != BackendKind::Abelian || acting.dim() != 1)
            throw UsageError("scalar action needs a one-dimensional acting set");
        for (std::size_t i = 0; i < acting.size(); ++i) {
            double t = acting.point(i)[0] * acting.delta;
            Mat m = Mat::eye(d);
            for (int j = 0; j < d; ++j) m.at(j, j) = std::exp(t);
            mats.push_back(m);
        }
    } else {
        if (acting.ambient.algebra_dim() != d)
            throw UsageError("acting group dimension does not match the module");
        for (std::size_t i = 0; i < acting.size(); ++i)
            mats.push_back(adjoint(group_point(acting, i)));
    }

    // exact-cost classes: V[c] holds the values of expressions of cost exactly c.
    // atoms cost 1; u+v and u-v cost additively; a.x costs 1 + cost(x).
    // every operation snaps to the module lattice (sums are already exact on it).
    std::vector<std::set<Row>> V(static_cast<std::size_t>(budget.steps) + 1);
    bool truncated = false;
    std::size_t dropped = 0;
    std::size_t total = 0;
    auto add_to = [&](std::set<Row> &cls, Row r) {
        if (cls.count(r)) return;
        if (cls.size() >= budget.region_cap || total >= budget.point_cap) {
            truncated = true;
            ++dropped;
            return;
        }
        cls.insert(std::move(r));
        ++total;
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        Row r(points.point(i), points.point(i) + d);
        add_to(V[1], std::move(r));
    }
    for (int c = 2; c <= budget.steps; ++c) {
        std::set<Row> cls;
        for (int c1 = 1; c1 < c; ++c1) {
            const int c2 = c - c1;
            for (const Row &u : V[static_cast<std::size_t>(c1)]) {
                for (const Row &v : V[static_cast<std::size_t>(c2)]) {
                    Row s(static_cast<std::size_t>(d)), t(static_cast<std::size_t>(d));
                    for (int j = 0; j < d; ++j) {
                        s[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j)] +
                                                         v[static_cast<std::size_t>(j)];
                        t[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j)] -
                                                         v[static_cast<std::size_t>(j)];
                    }
                    add_to(cls, std::move(s));
                    add_to(cls, std::move(t));
                }
            }
        }
        for (const Mat &m : mats) {
            for (const Row &x : V[static_cast<std::size_t>(c - 1)]) {
                Row r(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < d; ++j)
                        acc += m.at(i, j) * x[static_cast<std::size_t>(j)] * points.delta;
                    r[static_cast<std::size_t>(i)] = snap_coord(acc, points.delta);
                }
                add_to(cls, std::move(r));
            }
        }
        V[static_cast<std::size_t>(c)] = std::move(cls);
    }

    std::set<Row> all;
    for (int c = 1; c <= budget.steps; ++c)
        for (const Row &r : V[static_cast<std::size_t>(c)]) all.insert(r);
    DeltaSet out = from_rows(points.ambient, points.delta, all);
    out.truncated = truncated;
    out.dropped = dropped;
    return out;
}

std::vector<SubgroupClearance> away_from_subgroups(const DeltaSet &s, double rho) {
    std::vector<SubgroupClearance> out;
    for (const SubgroupDescriptor &h : subgroup_catalog(s.ambient)) {
        SubgroupClearance c;
        c.name = h.name;
        // distance measured in the chart: residual of the orthogonal projection
        // onto the subgroup's tangent plane (no exp/log, so radius is no concern)
        double worst = 0.0;
        const int d = s.dim();
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<double> x = chart_point(s, i);
            std::vector<double> res = x;
            for (const auto &bvec : h.basis) {
                double dot = 0.0;
                for (int j = 0; j < d; ++j) dot += x[static_cast<std::size_t>(j)] * bvec.v[static_cast<std::size_t>(j)];
                for (int j = 0; j < d; ++j) res[static_cast<std::size_t>(j)] -= dot * bvec.v[static_cast<std::size_t>(j)];
            }
            double q = 0.0;
            for (double v : res) q += v * v;
            worst = std::max(worst, std::sqrt(q));
        }
        c.escape_dist = worst;
        c.clear = worst > rho;
        out.push_back(std::move(c));
    }
    return out;
}

double ball_coverage(const DeltaSet &target, const DeltaSet &sample) {
    if (!(target.ambient == sample.ambient)) throw UsageError("sets live in different groups");
    if (target.delta != sample.delta) throw UsageError("sets have different resolutions");
    if (target.size() == 0) return 1.0;
    const int d = target.dim();
    std::set<Row> have;
    for (std::size_t i = 0; i < sample.size(); ++i)
        have.insert(Row(sample.point(i), sample.point(i) + d));
    // both sets share the lattice, so chart distance <= delta means the integer
    // offset has euclidean norm <= 1: the zero offset or a single +-1 step
    std::size_t hit = 0;
    Row probe(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < target.size(); ++i) {
        const std::int32_t *p = target.point(i);
        probe.assign(p, p + d);
        bool found = have.count(probe) > 0;
        for (int j = 0; j < d && !found; ++j) {
            for (int sgn : {-1, +1}) {
                probe[static_cast<std::size_t>(j)] = p[j] + sgn;
                if (have.count(probe)) {
                    found = true;
                    break;
                }
            }
            probe[static_cast<std::size_t>(j)] = p[j];
        }
        if (found) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(target.size());
}

}  // namespace lie
