#pragma once

// Simple convex polytopes in facet form <X_j, x> >= lambda_j, their vertices,
// and the normal fan.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quasifold/error.hpp"
#include "quasifold/matrix.hpp"
#include "quasifold/scalar_text.hpp"
#include "quasifold/triple.hpp"

namespace quasifold {

struct Facet {
    Vec normal;     ///< inward normal X_j
    Scalar offset;  ///< lambda_j
};

struct Polytope {
    DomainPtr domain;
    std::size_t dim = 0;
    std::vector<Facet> facets;
};

struct Vertex {
    Vec coords;
    Cone facets;  ///< sorted 1-based indices of the facets through the vertex
};

struct EnumerationOptions {
    /// Parameter values used for sign tests over Q(a). The first drives the
    /// enumeration; the rest re-run it to confirm the combinatorics.
    std::vector<mpq_class> samples;
};

struct VertexEnumeration {
    std::vector<Vertex> vertices;      ///< sorted by incidence set
    bool sample_independent = true;    ///< same incidence structure at every sample
    std::vector<mpq_class> samples;    ///< samples actually used (parameter fields only)
};

inline Scalar dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw dimension_mismatch("dot: length mismatch");
    Scalar acc = Scalar::zero(a.empty() ? ScalarDomain::rational() : a.front().domain());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
    return acc;
}

namespace detail {

inline void check_polytope(const Polytope& p) {
    if (p.dim == 0) throw input_error("polytope dimension must be positive");
    if (p.facets.size() < p.dim + 1)
        throw input_error("a bounded polytope in dimension " + std::to_string(p.dim) + " needs at least " +
                          std::to_string(p.dim + 1) + " facets");
    for (std::size_t j = 0; j < p.facets.size(); ++j)
        if (p.facets[j].normal.size() != p.dim)
            throw input_error("facet " + std::to_string(j + 1) + " normal has wrong length");
}

inline std::string format_point(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + display_scalar(v[i]);
    return s + ")";
}

/// One enumeration pass. Sign tests use exact signs, falling back to the
/// exact value at `sample` for parameter-field elements.
inline std::vector<Vertex> enumerate_once(const Polytope& p, const std::optional<mpq_class>& sample) {
    const std::size_t n = p.dim, d = p.facets.size();
    std::vector<Vertex> found;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    for (;;) {
        std::vector<Vec> rows;
        Vec rhs;
        for (auto f : pick) {
            rows.push_back(p.facets[f].normal);
            rhs.push_back(p.facets[f].offset);
        }
        std::optional<Vec> x;
        try {
            x = solve(Mat::from_rows(p.domain, rows), rhs);
        } catch (const singular_matrix&) {
        }
        if (x) {
            bool feasible = true;
            Cone incident;
            for (std::size_t j = 0; j < d && feasible; ++j) {
                const Sign s = (dot(p.facets[j].normal, *x) - p.facets[j].offset).sign_or_sample(sample);
                if (s == Sign::negative) feasible = false;
                if (s == Sign::zero) incident.push_back(static_cast<int>(j + 1));
            }
            if (feasible) {
                auto same = std::find_if(found.begin(), found.end(), [&](const Vertex& v) { return v.coords == *x; });
                if (same == found.end()) found.push_back({*x, incident});
            }
        }
        std::size_t k = n;
        while (k > 0 && pick[k - 1] == d - n + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t i = k; i < n; ++i) pick[i] = pick[i - 1] + 1;
    }
    for (const auto& v : found)
        if (v.facets.size() > n)
            throw simplicity_error("vertex " + format_point(v.coords) + " lies on " + std::to_string(v.facets.size()) +
                                   " facets {" + cone_label(v.facets) + "}; the polytope is not simple");
    std::sort(found.begin(), found.end(), [](const Vertex& a, const Vertex& b) { return a.facets < b.facets; });
    return found;
}

}  // namespace detail

/// Default genericity samples for a parameter field: the domain's own sample
/// (or sqrt(2)-like) plus a sqrt(3)-like second value.
inline std::vector<mpq_class> default_samples(const DomainPtr& dom) {
    std::vector<mpq_class> s;
    s.push_back(dom->default_sample() ? *dom->default_sample() : parse_decimal("1.41421356237"));
    const mpq_class second = parse_decimal("1.73205080757");
    if (s.front() != second) s.push_back(second);
    return s;
}

/// All vertices of a simple polytope with their incident facets. Every n-subset
/// of facets is solved exactly; feasible solutions are kept and deduplicated.
inline VertexEnumeration enumerate_vertices(const Polytope& p, const EnumerationOptions& opt = {}) {
    detail::check_polytope(p);
    VertexEnumeration out;
    if (p.domain->kind() != DomainKind::rational_function) {
        out.vertices = detail::enumerate_once(p, std::nullopt);
        return out;
    }
    out.samples = opt.samples.empty() ? default_samples(p.domain) : opt.samples;
    out.vertices = detail::enumerate_once(p, out.samples.front());
    for (std::size_t s = 1; s < out.samples.size(); ++s) {
        const auto again = detail::enumerate_once(p, out.samples[s]);
        bool same = again.size() == out.vertices.size();
        for (std::size_t i = 0; same && i < again.size(); ++i) same = again[i].facets == out.vertices[i].facets;
        if (!same) out.sample_independent = false;
    }
    return out;
}

/// Normal fan: rays are the facet normals, one maximal cone per vertex given by
/// its incident facets. Cones are in the (lexicographic) order of `vertices`.
inline Fan normal_fan(const Polytope& p, const std::vector<Vertex>& vertices) {
    Fan f;
    f.dim = p.dim;
    for (const auto& facet : p.facets) f.rays.push_back(facet.normal);
    for (const auto& v : vertices) {
        if (v.facets.size() != p.dim)
            throw simplicity_error("vertex " + detail::format_point(v.coords) + " is not simple");
        f.max_cones.push_back(v.facets);
    }
    return f;
}

/// lambda_j = min over vertices of <X_j, v>.
inline std::vector<Scalar> derive_offsets(const std::vector<Vec>& normals, const std::vector<Vec>& vertices,
                                          const std::optional<mpq_class>& sample = std::nullopt) {
    if (vertices.empty()) throw input_error("derive_offsets needs at least one vertex");
    std::vector<Scalar> out;
    for (const auto& x : normals) {
        Scalar best = dot(x, vertices.front());
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            Scalar v = dot(x, vertices[i]);
            if ((v - best).sign_or_sample(sample) == Sign::negative) best = v;
        }
        out.push_back(best);
    }
    return out;
}

inline FundamentalTriple to_triple(const Polytope& p, const std::vector<Vertex>& vertices, Quasilattice lattice,
                                   std::vector<std::optional<Witness>> witnesses, std::int64_t box = 10) {
    FundamentalTriple t;
    t.fan = normal_fan(p, vertices);
    t.lattice = std::move(lattice);
    if (witnesses.empty()) witnesses.resize(t.fan.rays.size());
    t.witnesses = std::move(witnesses);
    check_structure(t);
    return with_witnesses(std::move(t), box);
}

}  // namespace quasifold
