#include <cmath>

#include "lie/backends.hpp"
#include "lie/errors.hpp"

namespace lie {

namespace {

AlgebraVector unit(const Backend& b, int i) {
    AlgebraVector e = algebra_zero(b);
    e.v[static_cast<size_t>(i)] = 1.0;
    return e;
}

SubgroupDescriptor make(const Backend& b, std::string name, SubgroupKind kind,
                        std::vector<int> axes, bool normal, std::optional<Backend> quotient) {
    SubgroupDescriptor d;
    d.name = std::move(name);
    d.backend = b;
    d.kind = kind;
    for (int i : axes) d.basis.push_back(unit(b, i));
    d.normal = normal;
    d.quotient = std::move(quotient);
    return d;
}

}  // namespace

std::vector<SubgroupDescriptor> subgroup_catalog(const Backend& b) {
    std::vector<SubgroupDescriptor> out;
    switch (b.kind) {
        case BackendKind::Abelian: {
            int d = b.dim_param;
            out.push_back(make(b, "trivial", SubgroupKind::Trivial, {}, true, b));
            for (int k = 1; k < d; ++k) {
                std::vector<int> axes;
                for (int i = 0; i < k; ++i) axes.push_back(i);
                out.push_back(make(b, "axes" + std::to_string(k), SubgroupKind::FactorKernel, axes,
                                   true, Backend::abelian(d - k)));
            }
            break;
        }
        case BackendKind::Heisenberg3:
            out.push_back(make(b, "trivial", SubgroupKind::Trivial, {}, true, b));
            out.push_back(make(b, "center", SubgroupKind::LowerCentral, {2}, true, Backend::abelian(2)));
            out.push_back(make(b, "xz", SubgroupKind::FactorKernel, {0, 2}, true, Backend::abelian(1)));
            out.push_back(make(b, "yz", SubgroupKind::FactorKernel, {1, 2}, true, Backend::abelian(1)));
            out.push_back(make(b, "x", SubgroupKind::Catalog, {0}, false, std::nullopt));
            out.push_back(make(b, "y", SubgroupKind::Catalog, {1}, false, std::nullopt));
            break;
        case BackendKind::SU2:
            out.push_back(make(b, "trivial", SubgroupKind::Trivial, {}, true, b));
            out.push_back(make(b, "torus", SubgroupKind::Catalog, {2}, false, std::nullopt));
            break;
        case BackendKind::SL2R:
            out.push_back(make(b, "trivial", SubgroupKind::Trivial, {}, true, b));
            out.push_back(make(b, "diag", SubgroupKind::Catalog, {0}, false, std::nullopt));
            out.push_back(make(b, "borel", SubgroupKind::Catalog, {0, 1}, false, std::nullopt));
            break;
        case BackendKind::SL2RxH3:
            out.push_back(make(b, "trivial", SubgroupKind::Trivial, {}, true, b));
            out.push_back(make(b, "nilfactor", SubgroupKind::FactorKernel, {3, 4, 5}, true, Backend::sl2r()));
            // the central line is normal, but its quotient is not a catalog group
            out.push_back(make(b, "zline", SubgroupKind::Catalog, {5}, true, std::nullopt));
            out.push_back(make(b, "sl2factor", SubgroupKind::Catalog, {0, 1, 2}, false, std::nullopt));
            break;
    }
    return out;
}

std::optional<SubgroupDescriptor> find_subgroup(const Backend& b, const std::string& name) {
    for (SubgroupDescriptor& d : subgroup_catalog(b))
        if (d.name == name) return d;
    return std::nullopt;
}

double dist_to_subgroup(const GroupElement& g, const SubgroupDescriptor& h) {
    if (!(g.backend == h.backend)) throw UsageError("dist_to_subgroup: mixed backends");
    AlgebraVector x = log_map(g);
    AlgebraVector resid = x;
    for (const AlgebraVector& b : h.basis) {
        double dot = 0.0;
        for (size_t i = 0; i < x.v.size(); ++i) dot += x.v[i] * b.v[i];
        resid = vec_sub(resid, vec_scale(dot, b));
    }
    return vec_norm(resid);
}

namespace {

// every configured quotient chart is a coordinate selection from the source
// chart; returns the retained element-coordinate indices
std::vector<int> quotient_coord_axes(const SubgroupDescriptor& n) {
    const Backend& b = n.backend;
    if (n.kind == SubgroupKind::Trivial) {
        std::vector<int> all;
        for (int i = 0; i < b.coord_size(); ++i) all.push_back(i);
        return all;
    }
    switch (b.kind) {
        case BackendKind::Abelian: {
            int k = static_cast<int>(n.basis.size());
            std::vector<int> tail;
            for (int i = k; i < b.dim_param; ++i) tail.push_back(i);
            return tail;
        }
        case BackendKind::Heisenberg3:
            if (n.name == "center") return {0, 1};
            if (n.name == "xz") return {1};
            if (n.name == "yz") return {0};
            break;
        case BackendKind::SL2RxH3:
            if (n.name == "nilfactor") return {0, 1, 2, 3};
            break;
        default:
            break;
    }
    throw UsageError("quotient_project: no quotient backend configured for subgroup '" + n.name + "'");
}

std::vector<int> quotient_algebra_axes(const SubgroupDescriptor& n) {
    const Backend& b = n.backend;
    if (n.kind == SubgroupKind::Trivial) {
        std::vector<int> all;
        for (int i = 0; i < b.algebra_dim(); ++i) all.push_back(i);
        return all;
    }
    switch (b.kind) {
        case BackendKind::Abelian:
            return quotient_coord_axes(n);
        case BackendKind::Heisenberg3:
            return quotient_coord_axes(n);
        case BackendKind::SL2RxH3:
            if (n.name == "nilfactor") return {0, 1, 2};
            break;
        default:
            break;
    }
    throw UsageError("quotient_project: no quotient backend configured for subgroup '" + n.name + "'");
}

}  // namespace

GroupElement quotient_project(const GroupElement& g, const SubgroupDescriptor& n) {
    if (!(g.backend == n.backend)) throw UsageError("quotient_project: mixed backends");
    if (!n.normal) throw UsageError("quotient_project: subgroup '" + n.name + "' is not normal");
    if (!n.quotient) throw UsageError("quotient_project: no quotient backend configured for subgroup '" + n.name + "'");
    std::vector<int> axes = quotient_coord_axes(n);
    GroupElement out = identity(*n.quotient);
    for (size_t i = 0; i < axes.size(); ++i) out.c[i] = g.c[static_cast<size_t>(axes[i])];
    return out;
}

AlgebraVector quotient_project_vec(const AlgebraVector& x, const SubgroupDescriptor& n) {
    if (!(x.backend == n.backend)) throw UsageError("quotient_project: mixed backends");
    if (!n.normal) throw UsageError("quotient_project: subgroup '" + n.name + "' is not normal");
    if (!n.quotient) throw UsageError("quotient_project: no quotient backend configured for subgroup '" + n.name + "'");
    std::vector<int> axes = quotient_algebra_axes(n);
    AlgebraVector out = algebra_zero(*n.quotient);
    for (size_t i = 0; i < axes.size(); ++i) out.v[i] = x.v[static_cast<size_t>(axes[i])];
    return out;
}

}  // namespace lie
