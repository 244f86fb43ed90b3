#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lie/numeric.hpp"

namespace lie {

// a map sampled on the delta-lattice net of the ball of radius rho2, with
// values in a fixed target space. parameters obey 0 < delta < rho1 < rho2 <= 1:
// rho1 bounds both the value near the origin and the additivity defect.
struct SampledMap {
    int dim_in = 0;
    int dim_out = 0;
    double delta = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    std::vector<std::int32_t> grid;   // lattice coords, sorted lexicographically
    std::vector<double> values;       // dim_out per grid point

    std::size_t size() const {
        return dim_in == 0 ? 0 : grid.size() / static_cast<std::size_t>(dim_in);
    }
    const std::int32_t *point(std::size_t i) const {
        return grid.data() + i * static_cast<std::size_t>(dim_in);
    }
    const double *value(std::size_t i) const {
        return values.data() + i * static_cast<std::size_t>(dim_out);
    }
    // index of a lattice point, if present (binary search)
    std::optional<std::size_t> find(const std::int32_t *pt) const;
};

// sample f on the full net; f receives and returns real coordinates.
SampledMap sample_map(int dim_in, int dim_out, double delta, double rho1, double rho2,
                      const std::function<std::vector<double>(const std::vector<double> &)> &f);

struct LinearizeReport {
    double sup_error = 0.0;           // max over the grid of the recovery error
    double k_measured = 0.0;          // sup_error / ((log2(1/delta) + 1) * rho1)
    double defect_observed = 0.0;     // largest additivity defect seen in sampling
    double constraint_residual = 0.0; // sup-norm residual of the constraint rows
};

// recover the linear map pinned at the sampled values on the scaled basis
// directions. validates the parameter ordering and grid completeness
// (UsageError) and the sampled hypotheses (InfeasibleError).
Mat linearize(const SampledMap &s, LinearizeReport *report = nullptr);

// same recovery, then corrects the pinning so that pi * phi == psi: rows of pi
// that are signed coordinate projections are enforced bitwise; general pi is
// corrected in exact rational arithmetic and rounded once at the end.
// pi is (dim_mid x dim_out), psi is (dim_mid x dim_in); pi*sigma must agree
// with psi on the grid to tolerance delta (InfeasibleError otherwise).
Mat linearize_constrained(const SampledMap &s, const Mat &pi, const Mat &psi,
                          LinearizeReport *report = nullptr);

// csv: one json parameter line, then rows "lattice coords..., value coords..."
void save_sampled_map(const SampledMap &s, const std::string &path);
SampledMap load_sampled_map(const std::string &path);

// json object with the matrix entries and the measured constants
void save_linear_map(const Mat &phi, const LinearizeReport &r, const std::string &path);

}  // namespace lie
