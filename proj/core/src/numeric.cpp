#include "lie/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "lie/errors.hpp"

namespace lie {

Mat Mat::eye(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw UsageError("mat_mul: shape mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            double v = x.at(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

Mat mat_add(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw UsageError("mat_add: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

Mat mat_sub(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw UsageError("mat_sub: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

Mat mat_scale(double s, const Mat& x) {
    Mat r = x;
    for (double& v : r.a) v *= s;
    return r;
}

Mat mat_transpose(const Mat& x) {
    Mat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

double mat_norm_fro(const Mat& x) {
    double s = 0.0;
    for (double v : x.a) s += v * v;
    return std::sqrt(s);
}

Mat mat_inverse(const Mat& x) {
    if (x.rows != x.cols) throw UsageError("mat_inverse: square matrix required");
    int n = x.rows;
    Mat a = x;
    Mat inv = Mat::eye(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (std::abs(a.at(piv, col)) < 1e-300) throw DomainError("mat_inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        double d = a.at(col, col);
        for (int j = 0; j < n; ++j) {
            a.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a.at(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a.at(r, j) -= f * a.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

double mat_det(const Mat& x) {
    if (x.rows != x.cols) throw UsageError("mat_det: square matrix required");
    int n = x.rows;
    Mat a = x;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (std::abs(a.at(piv, col)) == 0.0) return 0.0;
        if (piv != col) {
            det = -det;
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
        }
        det *= a.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            double f = a.at(r, col) / a.at(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
        }
    }
    return det;
}

int mat_rank(Mat a, double tol) {
    int rank = 0;
    int row = 0;
    for (int col = 0; col < a.cols && row < a.rows; ++col) {
        int piv = row;
        for (int r = row + 1; r < a.rows; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (std::abs(a.at(piv, col)) <= tol) continue;
        if (piv != row)
            for (int j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(row, j));
        for (int r = 0; r < a.rows; ++r) {
            if (r == row) continue;
            double f = a.at(r, col) / a.at(row, col);
            if (f == 0.0) continue;
            for (int j = 0; j < a.cols; ++j) a.at(r, j) -= f * a.at(row, j);
        }
        ++rank;
        ++row;
    }
    return rank;
}

Mat mat_exp(const Mat& x) {
    if (x.rows != x.cols) throw UsageError("mat_exp: square matrix required");
    int n = x.rows;
    double nrm = mat_norm_fro(x);
    int squarings = 0;
    while (nrm > 0.5) {
        nrm /= 2.0;
        ++squarings;
        if (squarings > 64) throw DomainError("mat_exp: input norm too large");
    }
    Mat scaled = mat_scale(std::ldexp(1.0, -squarings), x);
    // taylor series; norm <= 1/2 so ~20 terms reach full double precision
    Mat sum = Mat::eye(n);
    Mat term = Mat::eye(n);
    for (int k = 1; k <= 24; ++k) {
        term = mat_scale(1.0 / k, mat_mul(term, scaled));
        sum = mat_add(sum, term);
    }
    for (int i = 0; i < squarings; ++i) sum = mat_mul(sum, sum);
    return sum;
}

namespace {

// denman-beavers iteration for the principal square root
Mat mat_sqrt(const Mat& m) {
    int n = m.rows;
    Mat y = m;
    Mat z = Mat::eye(n);
    for (int it = 0; it < 60; ++it) {
        Mat y_next = mat_scale(0.5, mat_add(y, mat_inverse(z)));
        Mat z_next = mat_scale(0.5, mat_add(z, mat_inverse(y)));
        y = y_next;
        z = z_next;
        Mat resid = mat_sub(mat_mul(y, y), m);
        if (mat_norm_fro(resid) < 1e-14 * (1.0 + mat_norm_fro(m))) return y;
    }
    throw DomainError("mat_log: square root iteration did not converge");
}

}  // namespace

Mat mat_log(const Mat& x) {
    if (x.rows != x.cols) throw UsageError("mat_log: square matrix required");
    int n = x.rows;
    Mat m = x;
    int sqrts = 0;
    while (mat_norm_fro(mat_sub(m, Mat::eye(n))) > 0.25) {
        if (sqrts >= 40) throw DomainError("mat_log: input outside the chart");
        m = mat_sqrt(m);
        ++sqrts;
    }
    // log(I + d) series, ||d|| <= 1/4
    Mat d = mat_sub(m, Mat::eye(n));
    Mat sum(n, n);
    Mat pw = Mat::eye(n);
    for (int k = 1; k <= 40; ++k) {
        pw = mat_mul(pw, d);
        sum = mat_add(sum, mat_scale((k % 2 == 1 ? 1.0 : -1.0) / k, pw));
    }
    return mat_scale(std::ldexp(1.0, sqrts), sum);
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw UsageError("fit_line: need matching samples, at least two");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12 * (1.0 + sxx * n)) throw UsageError("fit_line: abscissae are degenerate");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

}  // namespace lie
