#pragma once

#include <utility>
#include <vector>

namespace lie {

// small dense row-major matrix; sized for backend charts (dim <= 8), not for
// large linear algebra
struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
    double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static Mat eye(int n);
};

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_add(const Mat& x, const Mat& y);
Mat mat_sub(const Mat& x, const Mat& y);
Mat mat_scale(double s, const Mat& x);
Mat mat_transpose(const Mat& x);
double mat_norm_fro(const Mat& x);
// gaussian elimination with partial pivoting; DomainError on singular input
Mat mat_inverse(const Mat& x);
double mat_det(const Mat& x);
int mat_rank(Mat x, double tol);

// square matrices only: scaling-and-squaring exponential, and the logarithm by
// inverse scaling via denman-beavers square roots.  log throws DomainError when
// the iteration fails to reach the identity, which marks out-of-chart input.
Mat mat_exp(const Mat& x);
Mat mat_log(const Mat& x);

// least-squares straight line y ~ slope * x + intercept; at least two distinct
// abscissae required (UsageError otherwise)
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lie
