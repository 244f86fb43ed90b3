#include "lie/backends.hpp"

#include <cmath>
#include <cstdlib>

#include "lie/errors.hpp"

namespace lie {

namespace {

constexpr double kSu2ChartLimit = M_PI - 0.1;
constexpr double kRadiusSlack = 1e-12;

void check_same_backend(const Backend& a, const Backend& b, const char* who) {
    if (!(a == b)) throw UsageError(std::string(who) + ": mixed backends");
}

// ---- 2x2 helpers for sl2r ----

Mat sl2_to_mat(const double* c) {
    Mat m(2, 2);
    m.at(0, 0) = c[0];
    m.at(0, 1) = c[1];
    m.at(1, 0) = c[2];
    m.at(1, 1) = c[3];
    return m;
}

void sl2_from_mat(const Mat& m, double* c) {
    c[0] = m.at(0, 0);
    c[1] = m.at(0, 1);
    c[2] = m.at(1, 0);
    c[3] = m.at(1, 1);
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// algebra coords (a1,a2,a3) wrt basis ((e11-e22)/sqrt2, e12, e21)
Mat sl2_alg_to_mat(double a1, double a2, double a3) {
    Mat m(2, 2);
    m.at(0, 0) = a1 * kInvSqrt2;
    m.at(1, 1) = -a1 * kInvSqrt2;
    m.at(0, 1) = a2;
    m.at(1, 0) = a3;
    return m;
}

void sl2_alg_from_mat(const Mat& m, double* v) {
    v[0] = std::sqrt(2.0) * 0.5 * (m.at(0, 0) - m.at(1, 1));
    v[1] = m.at(0, 1);
    v[2] = m.at(1, 0);
}

void sl2_renormalize(double* c) {
    double det = c[0] * c[3] - c[1] * c[2];
    if (det > 0.25) {
        double s = 1.0 / std::sqrt(det);
        for (int i = 0; i < 4; ++i) c[i] *= s;
    }
}

// ---- 4x4 embedding for sl2rxh3 ----
// element (S, lambda, mu, kappa) maps to S_emb * N where the sl2 block sits at
// rows/cols {0,2} and N = I + lambda*P + mu*Q + kappa*Z with
// P = E01 - E32, Q = E21 + E30, Z = E31

Mat sd_to_mat(const std::vector<double>& c) {
    Mat s = Mat::eye(4);
    s.at(0, 0) = c[0];
    s.at(0, 2) = c[1];
    s.at(2, 0) = c[2];
    s.at(2, 2) = c[3];
    Mat n = Mat::eye(4);
    double la = c[4], mu = c[5], ka = c[6];
    n.at(0, 1) = la;
    n.at(2, 1) = mu;
    n.at(3, 0) = mu;
    n.at(3, 1) = ka;
    n.at(3, 2) = -la;
    return mat_mul(s, n);
}

void sd_from_mat(const Mat& m, std::vector<double>& c) {
    c[0] = m.at(0, 0);
    c[1] = m.at(0, 2);
    c[2] = m.at(2, 0);
    c[3] = m.at(2, 2);
    c[4] = -m.at(3, 2);
    c[5] = m.at(3, 0);
    c[6] = m.at(3, 1);
}

// algebra coords (a1,a2,a3,p,q,z)
Mat sd_alg_to_mat(const std::vector<double>& v) {
    Mat m(4, 4);
    m.at(0, 0) = v[0] * kInvSqrt2;
    m.at(2, 2) = -v[0] * kInvSqrt2;
    m.at(0, 2) = v[1];
    m.at(2, 0) = v[2];
    m.at(0, 1) = v[3];
    m.at(3, 2) = -v[3];
    m.at(2, 1) = v[4];
    m.at(3, 0) = v[4];
    m.at(3, 1) = v[5];
    return m;
}

void sd_alg_from_mat(const Mat& m, std::vector<double>& v) {
    v[0] = std::sqrt(2.0) * 0.5 * (m.at(0, 0) - m.at(2, 2));
    v[1] = m.at(0, 2);
    v[2] = m.at(2, 0);
    v[3] = 0.5 * (m.at(0, 1) - m.at(3, 2));
    v[4] = 0.5 * (m.at(2, 1) + m.at(3, 0));
    v[5] = m.at(3, 1);
}

// ---- quaternion helpers for su2, layout (w, x, y, z) ----

void qmul(const double* a, const double* b, double* r) {
    r[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
    r[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
    r[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
    r[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
}

double qnorm(const double* q) {
    return std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
}

void qnormalize(double* q) {
    double n = qnorm(q);
    if (n < 1e-8) throw UsageError("su2: degenerate quaternion coordinates");
    for (int i = 0; i < 4; ++i) q[i] /= n;
}

}  // namespace

// ---- Backend ----

Backend Backend::abelian(int d) {
    if (d < 1 || d > 9) throw UsageError("abelian backend: dimension must be in [1, 9]");
    Backend b;
    b.kind = BackendKind::Abelian;
    b.dim_param = d;
    return b;
}

Backend Backend::heis3() { return Backend{BackendKind::Heisenberg3, 0}; }
Backend Backend::su2() { return Backend{BackendKind::SU2, 0}; }
Backend Backend::sl2r() { return Backend{BackendKind::SL2R, 0}; }
Backend Backend::sl2rxh3() { return Backend{BackendKind::SL2RxH3, 0}; }

Backend Backend::parse(const std::string& name) {
    if (name.rfind("abelian:", 0) == 0) {
        std::string tail = name.substr(8);
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("backend parse: bad abelian dimension in '" + name + "'");
        long d = std::strtol(tail.c_str(), nullptr, 10);
        return abelian(static_cast<int>(d));
    }
    if (name == "heis3") return heis3();
    if (name == "su2") return su2();
    if (name == "sl2r") return sl2r();
    if (name == "sl2rxh3") return sl2rxh3();
    throw UsageError("backend parse: unknown backend '" + name + "'");
}

std::string Backend::name() const {
    switch (kind) {
        case BackendKind::Abelian: return "abelian:" + std::to_string(dim_param);
        case BackendKind::Heisenberg3: return "heis3";
        case BackendKind::SU2: return "su2";
        case BackendKind::SL2R: return "sl2r";
        case BackendKind::SL2RxH3: return "sl2rxh3";
    }
    return "?";
}

int Backend::algebra_dim() const {
    switch (kind) {
        case BackendKind::Abelian: return dim_param;
        case BackendKind::Heisenberg3: return 3;
        case BackendKind::SU2: return 3;
        case BackendKind::SL2R: return 3;
        case BackendKind::SL2RxH3: return 6;
    }
    return 0;
}

int Backend::coord_size() const {
    switch (kind) {
        case BackendKind::Abelian: return dim_param;
        case BackendKind::Heisenberg3: return 3;
        case BackendKind::SU2: return 4;
        case BackendKind::SL2R: return 4;
        case BackendKind::SL2RxH3: return 7;
    }
    return 0;
}

double Backend::injectivity_radius() const {
    return kind == BackendKind::SU2 ? kSu2ChartLimit : 1.0;
}

bool Backend::chart_is_global() const {
    return kind == BackendKind::Abelian || kind == BackendKind::Heisenberg3;
}

// ---- element constructors ----

GroupElement identity(const Backend& b) {
    GroupElement g{b, std::vector<double>(static_cast<size_t>(b.coord_size()), 0.0)};
    switch (b.kind) {
        case BackendKind::SU2:
            g.c[0] = 1.0;
            break;
        case BackendKind::SL2R:
        case BackendKind::SL2RxH3:
            g.c[0] = 1.0;
            g.c[3] = 1.0;
            break;
        default:
            break;
    }
    return g;
}

AlgebraVector algebra_zero(const Backend& b) {
    return AlgebraVector{b, std::vector<double>(static_cast<size_t>(b.algebra_dim()), 0.0)};
}

AlgebraVector algebra_vector(const Backend& b, std::vector<double> coeffs) {
    if (static_cast<int>(coeffs.size()) != b.algebra_dim())
        throw UsageError("algebra_vector: expected " + std::to_string(b.algebra_dim()) + " coefficients");
    return AlgebraVector{b, std::move(coeffs)};
}

std::vector<AlgebraVector> algebra_basis(const Backend& b) {
    std::vector<AlgebraVector> out;
    int n = b.algebra_dim();
    for (int i = 0; i < n; ++i) {
        AlgebraVector e = algebra_zero(b);
        e.v[static_cast<size_t>(i)] = 1.0;
        out.push_back(std::move(e));
    }
    return out;
}

double membership_residual(const GroupElement& g) {
    switch (g.backend.kind) {
        case BackendKind::Abelian:
        case BackendKind::Heisenberg3:
            return 0.0;
        case BackendKind::SU2:
            return std::abs(qnorm(g.c.data()) - 1.0);
        case BackendKind::SL2R:
            return std::abs(g.c[0] * g.c[3] - g.c[1] * g.c[2] - 1.0);
        case BackendKind::SL2RxH3:
            return std::abs(g.c[0] * g.c[3] - g.c[1] * g.c[2] - 1.0);
    }
    return 0.0;
}

// ---- group operations ----

GroupElement mul(const GroupElement& a, const GroupElement& b) {
    check_same_backend(a.backend, b.backend, "mul");
    GroupElement r{a.backend, std::vector<double>(a.c.size(), 0.0)};
    switch (a.backend.kind) {
        case BackendKind::Abelian:
            for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
            break;
        case BackendKind::Heisenberg3:
            r.c[0] = a.c[0] + b.c[0];
            r.c[1] = a.c[1] + b.c[1];
            r.c[2] = a.c[2] + b.c[2] + a.c[0] * b.c[1];
            break;
        case BackendKind::SU2:
            qmul(a.c.data(), b.c.data(), r.c.data());
            qnormalize(r.c.data());
            break;
        case BackendKind::SL2R: {
            r.c[0] = a.c[0] * b.c[0] + a.c[1] * b.c[2];
            r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[3];
            r.c[2] = a.c[2] * b.c[0] + a.c[3] * b.c[2];
            r.c[3] = a.c[2] * b.c[1] + a.c[3] * b.c[3];
            sl2_renormalize(r.c.data());
            break;
        }
        case BackendKind::SL2RxH3: {
            // (s1, n1)(s2, n2) = (s1 s2, conj(s2^-1)(n1) * n2); conjugation acts
            // on (lambda, mu) by the standard 2x2 action and fixes kappa
            r.c[0] = a.c[0] * b.c[0] + a.c[1] * b.c[2];
            r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[3];
            r.c[2] = a.c[2] * b.c[0] + a.c[3] * b.c[2];
            r.c[3] = a.c[2] * b.c[1] + a.c[3] * b.c[3];
            sl2_renormalize(r.c.data());
            double det2 = b.c[0] * b.c[3] - b.c[1] * b.c[2];
            if (std::abs(det2) < 1e-8) throw UsageError("sl2rxh3: degenerate sl2 block");
            // s2^{-1} = (d, -b; -c, a) / det
            double la = (b.c[3] * a.c[4] - b.c[1] * a.c[5]) / det2;
            double mu = (-b.c[2] * a.c[4] + b.c[0] * a.c[5]) / det2;
            double ka = a.c[6];
            r.c[4] = la + b.c[4];
            r.c[5] = mu + b.c[5];
            r.c[6] = ka + b.c[6] + mu * b.c[4] - la * b.c[5];
            break;
        }
    }
    return r;
}

GroupElement inverse(const GroupElement& a) {
    GroupElement r{a.backend, std::vector<double>(a.c.size(), 0.0)};
    switch (a.backend.kind) {
        case BackendKind::Abelian:
            for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = -a.c[i];
            break;
        case BackendKind::Heisenberg3:
            r.c[0] = -a.c[0];
            r.c[1] = -a.c[1];
            r.c[2] = -a.c[2] + a.c[0] * a.c[1];
            break;
        case BackendKind::SU2:
            r.c[0] = a.c[0];
            r.c[1] = -a.c[1];
            r.c[2] = -a.c[2];
            r.c[3] = -a.c[3];
            break;
        case BackendKind::SL2R:
            r.c[0] = a.c[3];
            r.c[1] = -a.c[1];
            r.c[2] = -a.c[2];
            r.c[3] = a.c[0];
            sl2_renormalize(r.c.data());
            break;
        case BackendKind::SL2RxH3: {
            r.c[0] = a.c[3];
            r.c[1] = -a.c[1];
            r.c[2] = -a.c[2];
            r.c[3] = a.c[0];
            sl2_renormalize(r.c.data());
            // (s, n)^-1 = (s^-1, conj(s)(n^-1)) with n^-1 = (-la, -mu, -ka)
            r.c[4] = -(a.c[0] * a.c[4] + a.c[1] * a.c[5]);
            r.c[5] = -(a.c[2] * a.c[4] + a.c[3] * a.c[5]);
            r.c[6] = -a.c[6];
            break;
        }
    }
    return r;
}

GroupElement power(const GroupElement& a, long long e) {
    GroupElement base = e < 0 ? inverse(a) : a;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                                 : static_cast<unsigned long long>(e);
    GroupElement acc = identity(a.backend);
    while (n > 0) {
        if (n & 1ULL) acc = mul(acc, base);
        base = mul(base, base);
        n >>= 1;
    }
    return acc;
}

// ---- exponential chart ----

GroupElement exp_map(const AlgebraVector& x) {
    const Backend& b = x.backend;
    double r = vec_norm(x);
    if (r > b.injectivity_radius() + kRadiusSlack)
        throw DomainError("exp_map: argument norm " + std::to_string(r) +
                          " exceeds the injectivity radius of " + b.name());
    GroupElement g = identity(b);
    switch (b.kind) {
        case BackendKind::Abelian:
            g.c = x.v;
            break;
        case BackendKind::Heisenberg3:
            g.c[0] = x.v[0];
            g.c[1] = x.v[1];
            g.c[2] = x.v[2] + 0.5 * x.v[0] * x.v[1];
            break;
        case BackendKind::SU2: {
            double s = r < 1e-8 ? 1.0 - r * r / 6.0 : std::sin(r) / r;
            g.c[0] = std::cos(r);
            g.c[1] = s * x.v[0];
            g.c[2] = s * x.v[1];
            g.c[3] = s * x.v[2];
            break;
        }
        case BackendKind::SL2R: {
            Mat m = mat_exp(sl2_alg_to_mat(x.v[0], x.v[1], x.v[2]));
            sl2_from_mat(m, g.c.data());
            break;
        }
        case BackendKind::SL2RxH3: {
            Mat m = mat_exp(sd_alg_to_mat(x.v));
            sd_from_mat(m, g.c);
            break;
        }
    }
    return g;
}

AlgebraVector log_map(const GroupElement& g) {
    const Backend& b = g.backend;
    AlgebraVector x = algebra_zero(b);
    switch (b.kind) {
        case BackendKind::Abelian:
            x.v = g.c;
            break;
        case BackendKind::Heisenberg3:
            x.v[0] = g.c[0];
            x.v[1] = g.c[1];
            x.v[2] = g.c[2] - 0.5 * g.c[0] * g.c[1];
            break;
        case BackendKind::SU2: {
            double q[4] = {g.c[0], g.c[1], g.c[2], g.c[3]};
            qnormalize(q);
            double vlen = std::sqrt(q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
            double theta = std::atan2(vlen, q[0]);
            if (theta > kSu2ChartLimit + kRadiusSlack)
                throw DomainError("log_map: su2 element lies beyond the chart (angle " +
                                  std::to_string(theta) + ")");
            double f = vlen < 1e-12 ? 1.0 : theta / vlen;
            x.v[0] = f * q[1];
            x.v[1] = f * q[2];
            x.v[2] = f * q[3];
            break;
        }
        case BackendKind::SL2R: {
            Mat l = mat_log(sl2_to_mat(g.c.data()));
            sl2_alg_from_mat(l, x.v.data());
            break;
        }
        case BackendKind::SL2RxH3: {
            Mat l = mat_log(sd_to_mat(g.c));
            sd_alg_from_mat(l, x.v);
            break;
        }
    }
    return x;
}

// ---- algebra operations ----

AlgebraVector vec_add(const AlgebraVector& x, const AlgebraVector& y) {
    check_same_backend(x.backend, y.backend, "vec_add");
    AlgebraVector r = x;
    for (size_t i = 0; i < r.v.size(); ++i) r.v[i] += y.v[i];
    return r;
}

AlgebraVector vec_sub(const AlgebraVector& x, const AlgebraVector& y) {
    check_same_backend(x.backend, y.backend, "vec_sub");
    AlgebraVector r = x;
    for (size_t i = 0; i < r.v.size(); ++i) r.v[i] -= y.v[i];
    return r;
}

AlgebraVector vec_scale(double s, const AlgebraVector& x) {
    AlgebraVector r = x;
    for (double& v : r.v) v *= s;
    return r;
}

double vec_norm(const AlgebraVector& x) {
    double s = 0.0;
    for (double v : x.v) s += v * v;
    return std::sqrt(s);
}

AlgebraVector vec_bracket(const AlgebraVector& x, const AlgebraVector& y) {
    check_same_backend(x.backend, y.backend, "vec_bracket");
    AlgebraVector r = algebra_zero(x.backend);
    switch (x.backend.kind) {
        case BackendKind::Abelian:
            break;
        case BackendKind::Heisenberg3:
            r.v[2] = x.v[0] * y.v[1] - x.v[1] * y.v[0];
            break;
        case BackendKind::SU2:
            r.v[0] = 2.0 * (x.v[1] * y.v[2] - x.v[2] * y.v[1]);
            r.v[1] = 2.0 * (x.v[2] * y.v[0] - x.v[0] * y.v[2]);
            r.v[2] = 2.0 * (x.v[0] * y.v[1] - x.v[1] * y.v[0]);
            break;
        case BackendKind::SL2R: {
            Mat a = sl2_alg_to_mat(x.v[0], x.v[1], x.v[2]);
            Mat b = sl2_alg_to_mat(y.v[0], y.v[1], y.v[2]);
            Mat c = mat_sub(mat_mul(a, b), mat_mul(b, a));
            sl2_alg_from_mat(c, r.v.data());
            break;
        }
        case BackendKind::SL2RxH3: {
            Mat a = sd_alg_to_mat(x.v);
            Mat b = sd_alg_to_mat(y.v);
            Mat c = mat_sub(mat_mul(a, b), mat_mul(b, a));
            sd_alg_from_mat(c, r.v);
            break;
        }
    }
    return r;
}

double dist(const GroupElement& a, const GroupElement& b) {
    check_same_backend(a.backend, b.backend, "dist");
    return vec_norm(log_map(mul(inverse(a), b)));
}

Mat adjoint(const GroupElement& g) {
    const Backend& b = g.backend;
    int n = b.algebra_dim();
    Mat ad = Mat::eye(n);
    switch (b.kind) {
        case BackendKind::Abelian:
            break;
        case BackendKind::Heisenberg3:
            ad.at(2, 0) = -g.c[1];
            ad.at(2, 1) = g.c[0];
            break;
        case BackendKind::SU2: {
            const double* q = g.c.data();
            double qc[4] = {q[0], -q[1], -q[2], -q[3]};
            for (int j = 0; j < 3; ++j) {
                double e[4] = {0, 0, 0, 0};
                e[j + 1] = 1.0;
                double t[4], rq[4];
                qmul(q, e, t);
                qmul(t, qc, rq);
                for (int i = 0; i < 3; ++i) ad.at(i, j) = rq[i + 1];
            }
            break;
        }
        case BackendKind::SL2R: {
            Mat s = sl2_to_mat(g.c.data());
            Mat si = mat_inverse(s);
            for (int j = 0; j < 3; ++j) {
                double e[3] = {0, 0, 0};
                e[j] = 1.0;
                Mat conj = mat_mul(mat_mul(s, sl2_alg_to_mat(e[0], e[1], e[2])), si);
                double col[3];
                sl2_alg_from_mat(conj, col);
                for (int i = 0; i < 3; ++i) ad.at(i, j) = col[i];
            }
            break;
        }
        case BackendKind::SL2RxH3: {
            Mat m = sd_to_mat(g.c);
            Mat mi = mat_inverse(m);
            for (int j = 0; j < 6; ++j) {
                std::vector<double> e(6, 0.0);
                e[static_cast<size_t>(j)] = 1.0;
                Mat conj = mat_mul(mat_mul(m, sd_alg_to_mat(e)), mi);
                std::vector<double> col(6, 0.0);
                sd_alg_from_mat(conj, col);
                for (int i = 0; i < 6; ++i) ad.at(i, j) = col[static_cast<size_t>(i)];
            }
            break;
        }
    }
    return ad;
}

AlgebraVector apply_linear(const Mat& m, const AlgebraVector& x) {
    if (m.cols != static_cast<int>(x.v.size())) throw UsageError("apply_linear: shape mismatch");
    AlgebraVector r{x.backend, std::vector<double>(static_cast<size_t>(m.rows), 0.0)};
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * x.v[static_cast<size_t>(j)];
        r.v[static_cast<size_t>(i)] = s;
    }
    return r;
}

GroupElement evaluate_word(const GroupWord& w, const std::vector<GroupElement>& letters) {
    if (static_cast<int>(letters.size()) < w.s)
        throw UsageError("evaluate_word: word uses " + std::to_string(w.s) + " generators, got " +
                         std::to_string(letters.size()) + " elements");
    if (letters.empty()) throw UsageError("evaluate_word: at least one substituted element required");
    const Backend& b = letters[0].backend;
    for (const GroupElement& g : letters) check_same_backend(b, g.backend, "evaluate_word");
    GroupElement acc = identity(b);
    for (const auto& [gen, e] : w.runs) acc = mul(acc, power(letters[static_cast<size_t>(gen - 1)], e));
    return acc;
}

namespace {

AlgebraVector evaluate_basis_tree(const FreeLieAlgebra& alg, int id,
                                  const std::vector<AlgebraVector>& args,
                                  std::vector<std::optional<AlgebraVector>>& memo) {
    if (memo[static_cast<size_t>(id)]) return *memo[static_cast<size_t>(id)];
    AlgebraVector out = algebra_zero(args[0].backend);
    auto [l, r] = alg.factorization_ids(id);
    if (l < 0) {
        out = args[static_cast<size_t>(alg.basis_word(id)[0])];
    } else {
        out = vec_bracket(evaluate_basis_tree(alg, l, args, memo),
                          evaluate_basis_tree(alg, r, args, memo));
    }
    memo[static_cast<size_t>(id)] = out;
    return out;
}

}  // namespace

AlgebraVector evaluate_element(const FreeLieElement& e, const std::vector<AlgebraVector>& args) {
    if (args.empty()) throw UsageError("evaluate_element: at least one argument required");
    const FreeLieAlgebra* alg = e.alg;
    if (alg == nullptr) {
        // zero element without an algebra context
        return algebra_zero(args[0].backend);
    }
    if (static_cast<int>(args.size()) < alg->generators())
        throw UsageError("evaluate_element: element uses " + std::to_string(alg->generators()) +
                         " generators, got " + std::to_string(args.size()) + " vectors");
    const Backend& b = args[0].backend;
    for (const AlgebraVector& a : args) check_same_backend(b, a.backend, "evaluate_element");
    AlgebraVector acc = algebra_zero(b);
    std::vector<std::optional<AlgebraVector>> memo(static_cast<size_t>(alg->dimension()));
    for (const auto& [id, coeff] : e.terms) {
        AlgebraVector t = evaluate_basis_tree(*alg, id, args, memo);
        acc = vec_add(acc, vec_scale(coeff.get_d(), t));
    }
    return acc;
}

}  // namespace lie
