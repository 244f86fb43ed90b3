#include "lie/linearize.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lie/errors.hpp"

namespace lie {

namespace {

double row_norm(const double *v, int n) {
    double q = 0.0;
    for (int i = 0; i < n; ++i) q += v[i] * v[i];
    return std::sqrt(q);
}

// exact gaussian solve of G * X = B over the rationals; G must be invertible
std::vector<std::vector<mpq_class>> solve_exact(std::vector<std::vector<mpq_class>> g,
                                                std::vector<std::vector<mpq_class>> b) {
    const std::size_t n = g.size();
    const std::size_t m = b[0].size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && g[piv][col] == 0) ++piv;
        if (piv == n) throw UsageError("constraint map does not have full row rank");
        std::swap(g[piv], g[col]);
        std::swap(b[piv], b[col]);
        mpq_class inv = 1 / g[col][col];
        for (std::size_t j = 0; j < n; ++j) g[col][j] *= inv;
        for (std::size_t j = 0; j < m; ++j) b[col][j] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || g[r][col] == 0) continue;
            mpq_class f = g[r][col];
            for (std::size_t j = 0; j < n; ++j) g[r][j] -= f * g[col][j];
            for (std::size_t j = 0; j < m; ++j) b[r][j] -= f * b[col][j];
        }
    }
    return b;
}

void apply_phi(const Mat &phi, const std::int32_t *pt, double delta, double *out) {
    for (int i = 0; i < phi.rows; ++i) {
        double acc = 0.0;
        for (int j = 0; j < phi.cols; ++j) acc += phi.at(i, j) * (pt[j] * delta);
        out[i] = acc;
    }
}

void validate_and_measure(const SampledMap &s, LinearizeReport &rep) {
    if (!(s.delta > 0.0 && s.delta < s.rho1 && s.rho1 < s.rho2 && s.rho2 <= 1.0))
        throw UsageError("parameters must satisfy 0 < delta < rho1 < rho2 <= 1");
    if (s.dim_in < 1 || s.dim_out < 1) throw UsageError("dimensions must be positive");
    if (s.size() == 0) throw UsageError("empty sample grid");
    if (s.values.size() != s.size() * static_cast<std::size_t>(s.dim_out))
        throw UsageError("value array does not match the grid");

    const double slack = 1e-9 * s.rho1;
    // near-origin bound on every grid point inside the delta-ball
    for (std::size_t i = 0; i < s.size(); ++i) {
        double q = 0.0;
        for (int j = 0; j < s.dim_in; ++j) {
            double c = s.point(i)[j] * s.delta;
            q += c * c;
        }
        if (q <= s.delta * s.delta * (1 + 1e-12) &&
            row_norm(s.value(i), s.dim_out) > s.rho1 + slack)
            throw InfeasibleError("value near the origin exceeds the defect bound");
    }

    auto defect_of = [&](std::size_t ia, std::size_t ib, std::size_t iab) {
        double q = 0.0;
        for (int j = 0; j < s.dim_out; ++j) {
            double d = s.value(ia)[j] + s.value(ib)[j] - s.value(iab)[j];
            q += d * d;
        }
        return std::sqrt(q);
    };

    // the construction walks each axis down by halving; check those chains fully
    const std::int32_t pin = static_cast<std::int32_t>(std::nearbyint(s.rho2 / s.delta));
    std::vector<std::int32_t> pa(static_cast<std::size_t>(s.dim_in), 0);
    std::vector<std::int32_t> pb(static_cast<std::size_t>(s.dim_in), 0);
    std::vector<std::int32_t> pc(static_cast<std::size_t>(s.dim_in), 0);
    for (int axis = 0; axis < s.dim_in; ++axis) {
        std::int32_t cur = pin;
        while (cur > 1) {
            std::int32_t lo = cur / 2, hi = cur - lo;
            std::fill(pa.begin(), pa.end(), 0);
            std::fill(pb.begin(), pb.end(), 0);
            std::fill(pc.begin(), pc.end(), 0);
            pa[static_cast<std::size_t>(axis)] = lo;
            pb[static_cast<std::size_t>(axis)] = hi;
            pc[static_cast<std::size_t>(axis)] = cur;
            auto ia = s.find(pa.data()), ib = s.find(pb.data()), ic = s.find(pc.data());
            if (!ia || !ib || !ic) throw UsageError("grid is missing a chain point");
            double d = defect_of(*ia, *ib, *ic);
            rep.defect_observed = std::max(rep.defect_observed, d);
            if (d > s.rho1 + slack)
                throw InfeasibleError("additivity defect exceeds the bound on a chain");
            cur = hi;
        }
    }

    // global guard: random in-domain triples (deterministic seed)
    std::mt19937_64 rng(0x11bea51ull);
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    int checked = 0, attempts = 0;
    while (checked < 10'000 && attempts < 200'000) {
        ++attempts;
        std::size_t ia = pick(rng), ib = pick(rng);
        bool ok = true;
        for (int j = 0; j < s.dim_in; ++j) {
            std::int64_t c = std::int64_t(s.point(ia)[j]) + std::int64_t(s.point(ib)[j]);
            if (c < INT32_MIN || c > INT32_MAX) ok = false;
            pc[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(c);
        }
        if (!ok) continue;
        auto ic = s.find(pc.data());
        if (!ic) continue;
        ++checked;
        double d = defect_of(ia, ib, *ic);
        rep.defect_observed = std::max(rep.defect_observed, d);
        if (d > s.rho1 + slack)
            throw InfeasibleError("additivity defect exceeds the bound on a sampled triple");
    }
}

}  // namespace

std::optional<std::size_t> SampledMap::find(const std::int32_t *pt) const {
    const int d = dim_in;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        const std::int32_t *p = point(mid);
        if (std::lexicographical_compare(p, p + d, pt, pt + d))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size() && std::equal(pt, pt + d, point(lo))) return lo;
    return std::nullopt;
}

SampledMap sample_map(int dim_in, int dim_out, double delta, double rho1, double rho2,
                      const std::function<std::vector<double>(const std::vector<double> &)> &f) {
    if (!(delta > 0.0) || dim_in < 1 || dim_out < 1)
        throw UsageError("bad sampling parameters");
    SampledMap s;
    s.dim_in = dim_in;
    s.dim_out = dim_out;
    s.delta = delta;
    s.rho1 = rho1;
    s.rho2 = rho2;
    const long m = static_cast<long>(std::floor(rho2 / delta + 1e-12));
    const double r2 = (rho2 / delta) * (rho2 / delta) * (1 + 1e-12) + 1e-12;
    std::vector<long> idx(static_cast<std::size_t>(dim_in), -m);
    std::vector<double> x(static_cast<std::size_t>(dim_in));
    while (true) {
        double q = 0.0;
        for (int j = 0; j < dim_in; ++j) q += double(idx[j]) * double(idx[j]);
        if (q <= r2) {
            for (int j = 0; j < dim_in; ++j) {
                s.grid.push_back(static_cast<std::int32_t>(idx[j]));
                x[static_cast<std::size_t>(j)] = double(idx[j]) * delta;
            }
            std::vector<double> v = f(x);
            if (static_cast<int>(v.size()) != dim_out)
                throw UsageError("sampled value has the wrong dimension");
            s.values.insert(s.values.end(), v.begin(), v.end());
        }
        int j = dim_in - 1;
        for (; j >= 0; --j) {
            if (idx[j] < m) { ++idx[j]; break; }
            idx[j] = -m;
        }
        if (j < 0) break;
    }
    return s;
}

Mat linearize(const SampledMap &s, LinearizeReport *report) {
    LinearizeReport rep;
    validate_and_measure(s, rep);

    // pin each column at the sampled value on the scaled basis direction
    const std::int32_t pin = static_cast<std::int32_t>(std::nearbyint(s.rho2 / s.delta));
    Mat phi(s.dim_out, s.dim_in);
    std::vector<std::int32_t> p(static_cast<std::size_t>(s.dim_in), 0);
    for (int axis = 0; axis < s.dim_in; ++axis) {
        std::fill(p.begin(), p.end(), 0);
        p[static_cast<std::size_t>(axis)] = pin;
        auto i = s.find(p.data());
        if (!i) throw UsageError("grid is missing a pinning point");
        const double scale = pin * s.delta;
        for (int r = 0; r < s.dim_out; ++r) phi.at(r, axis) = s.value(*i)[r] / scale;
    }

    std::vector<double> fx(static_cast<std::size_t>(s.dim_out));
    for (std::size_t i = 0; i < s.size(); ++i) {
        apply_phi(phi, s.point(i), s.delta, fx.data());
        double q = 0.0;
        for (int j = 0; j < s.dim_out; ++j) {
            double d = fx[static_cast<std::size_t>(j)] - s.value(i)[j];
            q += d * d;
        }
        rep.sup_error = std::max(rep.sup_error, std::sqrt(q));
    }
    rep.k_measured = rep.sup_error / ((std::log2(1.0 / s.delta) + 1.0) * s.rho1);
    if (report) *report = rep;
    return phi;
}

Mat linearize_constrained(const SampledMap &s, const Mat &pi, const Mat &psi,
                          LinearizeReport *report) {
    if (pi.cols != s.dim_out || psi.cols != s.dim_in || pi.rows != psi.rows)
        throw UsageError("constraint shapes do not match the sampled map");
    LinearizeReport rep;
    Mat phi = linearize(s, &rep);

    // feasibility of the constraint on the data itself
    std::vector<double> px(static_cast<std::size_t>(pi.rows));
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (int r = 0; r < pi.rows; ++r) {
            double acc = 0.0;
            for (int c = 0; c < pi.cols; ++c) acc += pi.at(r, c) * s.value(i)[c];
            for (int c = 0; c < psi.cols; ++c) acc -= psi.at(r, c) * (s.point(i)[c] * s.delta);
            px[static_cast<std::size_t>(r)] = acc;
        }
        if (row_norm(px.data(), pi.rows) > s.delta * (1 + 1e-9))
            throw InfeasibleError("constraint does not hold on the sampled data");
    }

    // signed coordinate rows can be enforced by overwriting whole rows of phi,
    // which leaves the constraint residual identically zero in the arithmetic
    bool coordinate = true;
    std::vector<int> target(static_cast<std::size_t>(pi.rows), -1);
    std::vector<double> sign(static_cast<std::size_t>(pi.rows), 1.0);
    std::vector<char> used(static_cast<std::size_t>(pi.cols), 0);
    for (int r = 0; r < pi.rows && coordinate; ++r) {
        int nz = -1;
        for (int c = 0; c < pi.cols; ++c) {
            if (pi.at(r, c) == 0.0) continue;
            if (nz >= 0 || (pi.at(r, c) != 1.0 && pi.at(r, c) != -1.0)) {
                coordinate = false;
                break;
            }
            nz = c;
        }
        if (nz < 0 || used[static_cast<std::size_t>(nz)]) coordinate = false;
        if (coordinate) {
            used[static_cast<std::size_t>(nz)] = 1;
            target[static_cast<std::size_t>(r)] = nz;
            sign[static_cast<std::size_t>(r)] = pi.at(r, nz);
        }
    }

    if (coordinate) {
        for (int r = 0; r < pi.rows; ++r)
            for (int c = 0; c < s.dim_in; ++c)
                phi.at(target[static_cast<std::size_t>(r)], c) = sign[static_cast<std::size_t>(r)] * psi.at(r, c);
    } else {
        // minimal-norm correction M = pi^T (pi pi^T)^{-1} (psi - pi phi),
        // carried out in exact rational arithmetic on the double entries
        const int rr = pi.rows, vo = s.dim_out, vi = s.dim_in;
        std::vector<std::vector<mpq_class>> qpi(static_cast<std::size_t>(rr),
                                                std::vector<mpq_class>(static_cast<std::size_t>(vo)));
        for (int r = 0; r < rr; ++r)
            for (int c = 0; c < vo; ++c) qpi[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = mpq_class(pi.at(r, c));
        std::vector<std::vector<mpq_class>> qphi(static_cast<std::size_t>(vo),
                                                 std::vector<mpq_class>(static_cast<std::size_t>(vi)));
        for (int r = 0; r < vo; ++r)
            for (int c = 0; c < vi; ++c) qphi[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = mpq_class(phi.at(r, c));
        std::vector<std::vector<mpq_class>> gram(static_cast<std::size_t>(rr),
                                                 std::vector<mpq_class>(static_cast<std::size_t>(rr), 0));
        for (int a = 0; a < rr; ++a)
            for (int b = 0; b < rr; ++b)
                for (int c = 0; c < vo; ++c)
                    gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +=
                        qpi[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] *
                        qpi[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
        std::vector<std::vector<mpq_class>> rhs(static_cast<std::size_t>(rr),
                                                std::vector<mpq_class>(static_cast<std::size_t>(vi), 0));
        for (int r = 0; r < rr; ++r)
            for (int c = 0; c < vi; ++c) {
                mpq_class acc = mpq_class(psi.at(r, c));
                for (int k = 0; k < vo; ++k)
                    acc -= qpi[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                           qphi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
                rhs[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = acc;
            }
        auto lam = solve_exact(gram, rhs);
        for (int r = 0; r < vo; ++r)
            for (int c = 0; c < vi; ++c) {
                mpq_class acc = qphi[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                for (int k = 0; k < rr; ++k)
                    acc += qpi[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] *
                           lam[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
                phi.at(r, c) = acc.get_d();
            }
    }

    // measured residual of the returned matrix, honest about rounding
    double res = 0.0;
    for (int r = 0; r < pi.rows; ++r)
        for (int c = 0; c < s.dim_in; ++c) {
            double acc = -psi.at(r, c);
            for (int k = 0; k < s.dim_out; ++k) acc += pi.at(r, k) * phi.at(k, c);
            res = std::max(res, std::abs(acc));
        }
    rep.constraint_residual = res;

    rep.sup_error = 0.0;
    std::vector<double> fx(static_cast<std::size_t>(s.dim_out));
    for (std::size_t i = 0; i < s.size(); ++i) {
        apply_phi(phi, s.point(i), s.delta, fx.data());
        double q = 0.0;
        for (int j = 0; j < s.dim_out; ++j) {
            double d = fx[static_cast<std::size_t>(j)] - s.value(i)[j];
            q += d * d;
        }
        rep.sup_error = std::max(rep.sup_error, std::sqrt(q));
    }
    rep.k_measured = rep.sup_error / ((std::log2(1.0 / s.delta) + 1.0) * s.rho1);
    if (report) *report = rep;
    return phi;
}

void save_sampled_map(const SampledMap &s, const std::string &path) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open " + path + " for writing");
    nlohmann::json hdr;
    hdr["dim_in"] = s.dim_in;
    hdr["dim_out"] = s.dim_out;
    hdr["delta"] = s.delta;
    hdr["rho1"] = s.rho1;
    hdr["rho2"] = s.rho2;
    hdr["size"] = s.size();
    f << hdr.dump() << "\n";
    char buf[40];
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (int j = 0; j < s.dim_in; ++j) {
            if (j) f << ',';
            f << s.point(i)[j];
        }
        for (int j = 0; j < s.dim_out; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", s.value(i)[j]);
            f << ',' << buf;
        }
        f << '\n';
    }
    if (!f) throw UsageError("write to " + path + " failed");
}

SampledMap load_sampled_map(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw ParseError("missing header in " + path);
    SampledMap s;
    try {
        nlohmann::json hdr = nlohmann::json::parse(line);
        s.dim_in = hdr.at("dim_in").get<int>();
        s.dim_out = hdr.at("dim_out").get<int>();
        s.delta = hdr.at("delta").get<double>();
        s.rho1 = hdr.at("rho1").get<double>();
        s.rho2 = hdr.at("rho2").get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("bad header: ") + e.what());
    }
    if (s.dim_in < 1 || s.dim_out < 1) throw ParseError("bad dimensions in " + path);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                if (col < s.dim_in)
                    s.grid.push_back(static_cast<std::int32_t>(std::stol(cell)));
                else
                    s.values.push_back(std::stod(cell));
            } catch (const std::exception &) {
                throw ParseError("bad cell '" + cell + "' in " + path);
            }
            ++col;
        }
        if (col != s.dim_in + s.dim_out) throw ParseError("row arity mismatch in " + path);
    }
    return s;
}

void save_linear_map(const Mat &phi, const LinearizeReport &r, const std::string &path) {
    nlohmann::json j;
    j["rows"] = phi.rows;
    j["cols"] = phi.cols;
    std::vector<std::vector<double>> entries;
    for (int i = 0; i < phi.rows; ++i) {
        std::vector<double> row;
        for (int c = 0; c < phi.cols; ++c) row.push_back(phi.at(i, c));
        entries.push_back(std::move(row));
    }
    j["entries"] = entries;
    j["sup_error"] = r.sup_error;
    j["k_measured"] = r.k_measured;
    j["defect_observed"] = r.defect_observed;
    j["constraint_residual"] = r.constraint_residual;
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open " + path + " for writing");
    f << j.dump(2) << "\n";
    if (!f) throw UsageError("write to " + path + " failed");
}

}  // namespace lie
