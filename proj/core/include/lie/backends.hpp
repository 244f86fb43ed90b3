#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lie/free_lie.hpp"
#include "lie/numeric.hpp"
#include "lie/words.hpp"

namespace lie {

enum class BackendKind { Abelian, Heisenberg3, SU2, SL2R, SL2RxH3 };

// a concrete group with an exponential chart.  coordinate layouts:
//   abelian:d   element = algebra = d reals
//   heis3       element (x, y, z), algebra (a, b, c) with bracket (0,0, a1*b2 - a2*b1)
//   su2         element = unit quaternion (w, x, y, z), algebra = imaginary part
//   sl2r        element = row-major 2x2 with det 1,
//               algebra basis ((e11-e22)/sqrt2, e12, e21)
//   sl2rxh3     element = (2x2 det-1 block, lambda, mu, kappa), algebra =
//               (3 sl2r coords, p, q, z); realized inside 4x4 matrices where the
//               nilpotent factor is I + lambda*P + mu*Q + kappa*Z with
//               P = E12 - E43, Q = E32 + E41, Z = E42
struct Backend {
    BackendKind kind = BackendKind::Abelian;
    int dim_param = 1;  // abelian dimension, ignored by the other kinds

    static Backend abelian(int d);
    static Backend heis3();
    static Backend su2();
    static Backend sl2r();
    static Backend sl2rxh3();
    // accepts "abelian:<d>", "heis3", "su2", "sl2r", "sl2rxh3"
    static Backend parse(const std::string& name);

    std::string name() const;
    int algebra_dim() const;
    int coord_size() const;
    double injectivity_radius() const;
    // true when log is globally available (no chart boundary), so distances can
    // be measured far beyond the injectivity radius
    bool chart_is_global() const;
    bool operator==(const Backend& other) const = default;
};

struct GroupElement {
    Backend backend;
    std::vector<double> c;
};

struct AlgebraVector {
    Backend backend;
    std::vector<double> v;
};

GroupElement identity(const Backend& b);
AlgebraVector algebra_zero(const Backend& b);
AlgebraVector algebra_vector(const Backend& b, std::vector<double> coeffs);
std::vector<AlgebraVector> algebra_basis(const Backend& b);

// how far the stored coordinates are from satisfying the backend's defining
// relations (unit quaternion, unit determinant, ...); exactly 0.0 for the
// unconstrained charts
double membership_residual(const GroupElement& g);

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
GroupElement power(const GroupElement& a, long long e);

// exp_map rejects arguments beyond the injectivity radius (DomainError); log_map
// throws DomainError only where the chart genuinely ends (antipodal locus on
// su2, non-convergent matrix logarithm on the sl2r family)
GroupElement exp_map(const AlgebraVector& x);
AlgebraVector log_map(const GroupElement& g);

AlgebraVector vec_add(const AlgebraVector& x, const AlgebraVector& y);
AlgebraVector vec_sub(const AlgebraVector& x, const AlgebraVector& y);
AlgebraVector vec_scale(double s, const AlgebraVector& x);
double vec_norm(const AlgebraVector& x);
AlgebraVector vec_bracket(const AlgebraVector& x, const AlgebraVector& y);

// left-invariant chart distance ||log(a^-1 b)||
double dist(const GroupElement& a, const GroupElement& b);

// matrix of Ad(g) acting on algebra coordinates
Mat adjoint(const GroupElement& g);
AlgebraVector apply_linear(const Mat& m, const AlgebraVector& x);

// evaluate a reduced word with the given elements substituted for generators
// (letter i of the word maps to letters[i-1]); UsageError on mismatched backends
// or too few letters
GroupElement evaluate_word(const GroupWord& w, const std::vector<GroupElement>& letters);

// numeric evaluation of a symbolic lie element: generator i maps to args[i-1]
AlgebraVector evaluate_element(const FreeLieElement& e, const std::vector<AlgebraVector>& args);

enum class SubgroupKind { Trivial, LowerCentral, FactorKernel, Catalog };

struct SubgroupDescriptor {
    std::string name;
    Backend backend;
    SubgroupKind kind = SubgroupKind::Catalog;
    std::vector<AlgebraVector> basis;  // orthonormal in chart coordinates
    bool normal = false;
    // set when the quotient by this (normal) subgroup is again a catalog
    // backend and a projection is available
    std::optional<Backend> quotient;
};

std::vector<SubgroupDescriptor> subgroup_catalog(const Backend& b);
std::optional<SubgroupDescriptor> find_subgroup(const Backend& b, const std::string& name);

// chart distance from g to the subgroup: norm of log(g) minus its orthogonal
// projection onto the subalgebra
double dist_to_subgroup(const GroupElement& g, const SubgroupDescriptor& h);

// image of g in the quotient backend; UsageError when the descriptor is not
// normal or no quotient backend is configured
GroupElement quotient_project(const GroupElement& g, const SubgroupDescriptor& n);
// same projection on chart coordinates (the quotient chart is a coordinate
// subspace of the source chart for every configured quotient)
AlgebraVector quotient_project_vec(const AlgebraVector& x, const SubgroupDescriptor& n);

}  // namespace lie
