#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <new>
#include <numeric>
#include <vector>

#include "lie/delta_sets.hpp"
#include "lie/errors.hpp"

namespace lie {

namespace {

constexpr std::size_t kBoxCap = 30'000'000;  // cells; beyond this fall back to pairwise

// next 5-smooth integer >= n (fftw is fast on 2^a 3^b 5^c sizes)
std::size_t next_smooth(std::size_t n) {
    if (n <= 1) return 1;
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t f : {std::size_t(2), std::size_t(3), std::size_t(5)})
            while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

struct LatticeFrame {
    std::vector<std::int64_t> lo;   // per-axis min over the set
    std::vector<std::int64_t> g;    // per-axis stride gcd (>= 1)
};

// deterministic pairwise sumset honoring the point budget
DeltaSet pairwise_sum(const DeltaSet &a, const DeltaSet &b, const ProductBudget &budget) {
    const int d = a.dim();
    DeltaSet out;
    out.ambient = a.ambient;
    out.delta = a.delta;
    std::vector<std::vector<std::int32_t>> rows;
    rows.reserve(std::min(budget.max_points, a.size() * b.size()));
    std::vector<std::int32_t> row(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < a.size() && !out.truncated; ++i) {
        const std::int32_t *pa = a.point(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::int32_t *pb = b.point(j);
            for (int t = 0; t < d; ++t) {
                std::int64_t v = std::int64_t(pa[t]) + std::int64_t(pb[t]);
                row[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(v);
            }
            if (rows.size() >= budget.max_points) {
                out.truncated = true;
                out.dropped += (a.size() - i) * b.size() - j;
                break;
            }
            rows.push_back(row);
        }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    out.pts.reserve(rows.size() * static_cast<std::size_t>(d));
    for (const auto &r : rows) out.pts.insert(out.pts.end(), r.begin(), r.end());
    double rmax = out.delta;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double q = 0.0;
        for (int t = 0; t < d; ++t) {
            double c = out.point(i)[t] * out.delta;
            q += c * c;
        }
        rmax = std::max(rmax, std::sqrt(q));
    }
    out.radius = rmax;
    return out;
}

}  // namespace

DeltaSet convolve_sumset(const DeltaSet &a, const DeltaSet &b, const ProductBudget &budget) {
    if (a.ambient.kind != BackendKind::Abelian || !(a.ambient == b.ambient))
        throw UsageError("lattice convolution needs matching abelian operands");
    if (a.delta != b.delta) throw UsageError("operands have different resolutions");
    const int d = a.dim();
    if (a.size() == 0 || b.size() == 0) {
        DeltaSet empty;
        empty.ambient = a.ambient;
        empty.delta = a.delta;
        empty.radius = a.delta;
        return empty;
    }

    // shift both sets to nonnegative coords, then divide out the common
    // per-axis stride gcd: structured sets (arithmetic progressions) collapse
    // to a dense box orders of magnitude smaller than the raw extent
    LatticeFrame fr;
    fr.lo.assign(static_cast<std::size_t>(d), 0);
    fr.g.assign(static_cast<std::size_t>(d), 0);
    std::vector<std::int64_t> lo_a(static_cast<std::size_t>(d)), lo_b(static_cast<std::size_t>(d));
    for (int t = 0; t < d; ++t) {
        std::int64_t ma = a.point(0)[t], mb = b.point(0)[t];
        for (std::size_t i = 1; i < a.size(); ++i) ma = std::min<std::int64_t>(ma, a.point(i)[t]);
        for (std::size_t i = 1; i < b.size(); ++i) mb = std::min<std::int64_t>(mb, b.point(i)[t]);
        lo_a[static_cast<std::size_t>(t)] = ma;
        lo_b[static_cast<std::size_t>(t)] = mb;
        fr.lo[static_cast<std::size_t>(t)] = ma + mb;
    }
    for (int t = 0; t < d; ++t) {
        std::int64_t g = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            g = std::gcd(g, std::int64_t(a.point(i)[t]) - lo_a[static_cast<std::size_t>(t)]);
        for (std::size_t i = 0; i < b.size(); ++i)
            g = std::gcd(g, std::int64_t(b.point(i)[t]) - lo_b[static_cast<std::size_t>(t)]);
        fr.g[static_cast<std::size_t>(t)] = g == 0 ? 1 : g;
    }

    std::vector<std::size_t> ext_a(static_cast<std::size_t>(d)), ext_b(static_cast<std::size_t>(d));
    std::vector<std::size_t> shape(static_cast<std::size_t>(d));
    std::size_t cells = 1;
    bool overflow = false;
    for (int t = 0; t < d; ++t) {
        std::int64_t g = fr.g[static_cast<std::size_t>(t)];
        std::int64_t ea = 0, eb = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            ea = std::max(ea, (std::int64_t(a.point(i)[t]) - lo_a[static_cast<std::size_t>(t)]) / g);
        for (std::size_t i = 0; i < b.size(); ++i)
            eb = std::max(eb, (std::int64_t(b.point(i)[t]) - lo_b[static_cast<std::size_t>(t)]) / g);
        ext_a[static_cast<std::size_t>(t)] = static_cast<std::size_t>(ea);
        ext_b[static_cast<std::size_t>(t)] = static_cast<std::size_t>(eb);
        shape[static_cast<std::size_t>(t)] = static_cast<std::size_t>(ea + eb) + 1;
        if (cells > kBoxCap / shape[static_cast<std::size_t>(t)]) overflow = true;
        cells *= shape[static_cast<std::size_t>(t)];
    }
    if (overflow || cells > kBoxCap) return pairwise_sum(a, b, budget);

    std::vector<int> n(static_cast<std::size_t>(d));
    std::size_t total = 1;
    for (int t = 0; t < d; ++t) {
        n[static_cast<std::size_t>(t)] = static_cast<int>(next_smooth(shape[static_cast<std::size_t>(t)]));
        total *= static_cast<std::size_t>(n[static_cast<std::size_t>(t)]);
    }
    const std::size_t nc = total / static_cast<std::size_t>(n[static_cast<std::size_t>(d - 1)]) *
                           (static_cast<std::size_t>(n[static_cast<std::size_t>(d - 1)]) / 2 + 1);

    auto flat_index = [&](const DeltaSet &s, std::size_t i,
                          const std::vector<std::int64_t> &lo) {
        std::size_t idx = 0;
        for (int t = 0; t < d; ++t) {
            std::int64_t q = (std::int64_t(s.point(i)[t]) - lo[static_cast<std::size_t>(t)]) /
                             fr.g[static_cast<std::size_t>(t)];
            idx = idx * static_cast<std::size_t>(n[static_cast<std::size_t>(t)]) +
                  static_cast<std::size_t>(q);
        }
        return idx;
    };

    double *ra = fftw_alloc_real(total);
    double *rb = fftw_alloc_real(total);
    fftw_complex *ca = fftw_alloc_complex(nc);
    fftw_complex *cb = fftw_alloc_complex(nc);
    if (!ra || !rb || !ca || !cb) throw std::bad_alloc();
    std::fill(ra, ra + total, 0.0);
    std::fill(rb, rb + total, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) ra[flat_index(a, i, lo_a)] = 1.0;
    for (std::size_t i = 0; i < b.size(); ++i) rb[flat_index(b, i, lo_b)] = 1.0;

    fftw_plan pf_a = fftw_plan_dft_r2c(d, n.data(), ra, ca, FFTW_ESTIMATE);
    fftw_plan pf_b = fftw_plan_dft_r2c(d, n.data(), rb, cb, FFTW_ESTIMATE);
    fftw_execute(pf_a);
    fftw_execute(pf_b);
    for (std::size_t i = 0; i < nc; ++i) {
        double re = ca[i][0] * cb[i][0] - ca[i][1] * cb[i][1];
        double im = ca[i][0] * cb[i][1] + ca[i][1] * cb[i][0];
        ca[i][0] = re;
        ca[i][1] = im;
    }
    fftw_plan pb = fftw_plan_dft_c2r(d, n.data(), ca, ra, FFTW_ESTIMATE);
    fftw_execute(pb);
    fftw_destroy_plan(pf_a);
    fftw_destroy_plan(pf_b);
    fftw_destroy_plan(pb);
    fftw_free(rb);
    fftw_free(ca);
    fftw_free(cb);

    DeltaSet out;
    out.ambient = a.ambient;
    out.delta = a.delta;
    const double scale = static_cast<double>(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    double rmax = out.delta;
    // iterate the sum box in lexicographic order; cell counts >= 0.5 are hits
    while (true) {
        std::size_t flat = 0;
        bool inside = true;
        for (int t = 0; t < d; ++t) {
            if (idx[static_cast<std::size_t>(t)] >= shape[static_cast<std::size_t>(t)]) inside = false;
            flat = flat * static_cast<std::size_t>(n[static_cast<std::size_t>(t)]) +
                   idx[static_cast<std::size_t>(t)];
        }
        if (inside && ra[flat] / scale > 0.5) {
            double q = 0.0;
            for (int t = 0; t < d; ++t) {
                std::int64_t v = std::int64_t(idx[static_cast<std::size_t>(t)]) *
                                     fr.g[static_cast<std::size_t>(t)] +
                                 fr.lo[static_cast<std::size_t>(t)];
                out.pts.push_back(static_cast<std::int32_t>(v));
                double c = double(v) * out.delta;
                q += c * c;
            }
            rmax = std::max(rmax, std::sqrt(q));
        }
        int t = d - 1;
        for (; t >= 0; --t) {
            if (idx[static_cast<std::size_t>(t)] + 1 < shape[static_cast<std::size_t>(t)]) {
                ++idx[static_cast<std::size_t>(t)];
                break;
            }
            idx[static_cast<std::size_t>(t)] = 0;
        }
        if (t < 0) break;
    }
    fftw_free(ra);
    out.radius = rmax;
    return out;
}

}  // namespace lie
