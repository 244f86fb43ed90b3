#include "lie/delta_sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <unordered_set>

#include "lie/errors.hpp"
#include "lie/numeric.hpp"

namespace lie {

namespace {

std::int32_t snap_coord(double x, double delta) {
    double r = std::nearbyint(x / delta);
    if (std::abs(r) > 2e9) throw UsageError("coordinate too large for the lattice");
    return static_cast<std::int32_t>(r);
}

double chart_norm(const DeltaSet &s, std::size_t i) {
    double acc = 0.0;
    const std::int32_t *p = s.point(i);
    for (int j = 0; j < s.dim(); ++j) {
        double c = p[j] * s.delta;
        acc += c * c;
    }
    return std::sqrt(acc);
}

// 64-bit mix hash over a flattened int run; good enough for dedup sets.
struct RowHash {
    std::size_t operator()(const std::vector<std::int32_t> &v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int32_t x : v) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

void canonicalize(DeltaSet &s) {
    const int d = s.dim();
    if (d == 0 || s.pts.empty()) return;
    const std::size_t n = s.pts.size() / static_cast<std::size_t>(d);
    std::vector<std::size_t> ord(n);
    for (std::size_t i = 0; i < n; ++i) ord[i] = i;
    auto less = [&](std::size_t a, std::size_t b) {
        const std::int32_t *pa = s.pts.data() + a * d;
        const std::int32_t *pb = s.pts.data() + b * d;
        return std::lexicographical_compare(pa, pa + d, pb, pb + d);
    };
    std::sort(ord.begin(), ord.end(), less);
    std::vector<std::int32_t> out;
    out.reserve(s.pts.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t *p = s.pts.data() + ord[i] * d;
        if (!out.empty() && std::equal(p, p + d, out.end() - d)) continue;
        out.insert(out.end(), p, p + d);
    }
    s.pts = std::move(out);
}

DeltaSet make_delta_set(const Backend &b, double delta, double radius,
                        const std::vector<std::vector<double>> &chart_points) {
    if (!(delta > 0.0)) throw UsageError("delta must be positive");
    DeltaSet s;
    s.ambient = b;
    s.delta = delta;
    s.radius = radius;
    const int d = s.dim();
    s.pts.reserve(chart_points.size() * static_cast<std::size_t>(d));
    for (const auto &p : chart_points) {
        if (static_cast<int>(p.size()) != d)
            throw UsageError("chart point has wrong dimension");
        for (double x : p) s.pts.push_back(snap_coord(x, delta));
    }
    canonicalize(s);
    return s;
}

DeltaSet delta_net_ball(const Backend &b, double delta, double radius) {
    if (!(delta > 0.0)) throw UsageError("delta must be positive");
    if (!(radius >= 0.0)) throw UsageError("radius must be nonnegative");
    DeltaSet s;
    s.ambient = b;
    s.delta = delta;
    s.radius = radius;
    const int d = s.dim();
    const long m = static_cast<long>(std::floor(radius / delta + 1e-12));
    // odometer over the integer box, keeping points with euclidean norm <= radius
    std::vector<long> idx(static_cast<std::size_t>(d), -m);
    const double r2 = (radius / delta) * (radius / delta) * (1.0 + 1e-12) + 1e-12;
    while (true) {
        double q = 0.0;
        for (int j = 0; j < d; ++j) q += double(idx[j]) * double(idx[j]);
        if (q <= r2)
            for (int j = 0; j < d; ++j) s.pts.push_back(static_cast<std::int32_t>(idx[j]));
        int j = d - 1;
        for (; j >= 0; --j) {
            if (idx[j] < m) { ++idx[j]; break; }
            idx[j] = -m;
        }
        if (j < 0) break;
    }
    // odometer emits in lexicographic order already
    return s;
}

std::vector<double> chart_point(const DeltaSet &s, std::size_t i) {
    std::vector<double> x(static_cast<std::size_t>(s.dim()));
    const std::int32_t *p = s.point(i);
    for (int j = 0; j < s.dim(); ++j) x[static_cast<std::size_t>(j)] = p[j] * s.delta;
    return x;
}

GroupElement group_point(const DeltaSet &s, std::size_t i) {
    return exp_map(algebra_vector(s.ambient, chart_point(s, i)));
}

std::size_t covering_number(const DeltaSet &s, double rho) {
    if (rho < s.delta) throw UsageError("scale below the set resolution");
    const int d = s.dim();
    if (d == 0 || s.size() == 0) return 0;
    // zero-aligned cells of side rho/sqrt(d): cell diameter is exactly rho, and
    // doubling rho nests the cells, so counts cannot increase along the ladder.
    // the index is computed as floor(x*sqrt(d)/rho); the numerator is rounded
    // identically at every scale and dividing by 2*rho only shifts the exponent,
    // so the nesting holds bit-exactly, not just in real arithmetic
    const double sq = std::sqrt(static_cast<double>(d));
    std::unordered_set<std::vector<std::int32_t>, RowHash> cells;
    std::vector<std::int32_t> key(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::int32_t *p = s.point(i);
        for (int j = 0; j < d; ++j)
            key[static_cast<std::size_t>(j)] =
                static_cast<std::int32_t>(std::floor(p[j] * s.delta * sq / rho));
        cells.insert(key);
    }
    return cells.size();
}

std::size_t greedy_covering_number(const DeltaSet &s, double rho) {
    if (rho < s.delta) throw UsageError("scale below the set resolution");
    const std::size_t n = s.size();
    const int d = s.dim();
    std::vector<char> covered(n, 0);
    std::size_t balls = 0;
    const double r2 = rho * rho * (1.0 + 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
        if (covered[i]) continue;
        ++balls;
        const std::int32_t *pi = s.point(i);
        for (std::size_t j = i; j < n; ++j) {
            if (covered[j]) continue;
            const std::int32_t *pj = s.point(j);
            double q = 0.0;
            for (int t = 0; t < d; ++t) {
                double diff = double(pi[t] - pj[t]) * s.delta;
                q += diff * diff;
            }
            if (q <= r2) covered[j] = 1;
        }
    }
    return balls;
}

CoveringProfile covering_profile(const DeltaSet &s) {
    CoveringProfile p;
    p.delta = s.delta;
    double r = s.delta;
    for (std::size_t i = 0; i < s.size(); ++i) r = std::max(r, chart_norm(s, i));
    double rho = s.delta;
    while (true) {
        p.rho.push_back(rho);
        p.count.push_back(covering_number(s, rho));
        if (rho >= 4.0 * r) break;
        rho *= 2.0;
    }
    return p;
}

ProfileFit profile_fit(const CoveringProfile &p) {
    if (p.rho.size() < 3) throw UsageError("need at least 3 scales to fit");
    if (!(p.delta > 0.0) || p.delta >= 1.0)
        throw UsageError("fit requires a resolution in (0,1)");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < p.rho.size(); ++i) {
        if (p.count[i] == 0) throw UsageError("profile has an empty scale");
        xs.push_back(-std::log(p.rho[i]));
        ys.push_back(std::log(static_cast<double>(p.count[i])));
    }
    auto [slope, intercept] = fit_line(xs, ys);
    ProfileFit out;
    out.kappa_hat = slope;
    out.eps_hat = intercept / std::log(1.0 / p.delta);
    return out;
}

}  // namespace lie
