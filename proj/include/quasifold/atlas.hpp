#pragma once

// The canonical affine atlas of a complex toric quasifold: one chart per
// maximal cone, its discrete group, fixed point, kernel relations, and the
// chart transitions written as generalized Laurent monomials.

#include <algorithm>
#include <cstddef>
#include <map>
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

struct Chart {
    Cone cone;
    Mat a_sigma;          ///< n x n, columns X_i (i in cone)
    Mat a_inv;            ///< rows labeled by the cone
    std::vector<int> fixed_point;  ///< 0 at cone positions, 1 elsewhere
    Mat gamma_raw;        ///< A_inv * G: exponents of exp(pi_sigma^{-1}(g)) for each generator g
    Mat gamma_exponents;  ///< gamma_raw with rational-integer entries replaced by 0
};

/// Homogeneous coordinates of the fixed point: z_j = 0 for j in the cone, 1 otherwise.
inline std::vector<int> fixed_point(const FundamentalTriple& t, const Cone& cone) {
    std::vector<int> p(t.ray_count(), 1);
    for (int i : cone) p.at(static_cast<std::size_t>(i - 1)) = 0;
    return p;
}

inline std::string fixed_point_label(const std::vector<int>& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + std::to_string(p[i]);
    return s + "]";
}

inline Chart build_chart(const FundamentalTriple& t, const Cone& cone) {
    t.cone_position(cone);
    Chart c;
    c.cone = cone;
    c.a_sigma = t.cone_matrix(cone);
    c.a_inv = invert(c.a_sigma);
    c.fixed_point = fixed_point(t, cone);
    c.gamma_raw = matmul(c.a_inv, t.lattice.generators);
    c.gamma_exponents = c.gamma_raw;
    for (std::size_t i = 0; i < c.gamma_exponents.rows(); ++i)
        for (std::size_t j = 0; j < c.gamma_exponents.cols(); ++j)
            if (c.gamma_exponents(i, j).is_rational_integer())
                c.gamma_exponents(i, j) = Scalar::zero(t.domain());
    return c;
}

/// Integer coefficients expressing A_sigma * c in the quasilattice for every
/// reduced gamma column c, built from the ray witnesses and re-verified exactly.
inline std::vector<Witness> gamma_lattice_certificate(const FundamentalTriple& t, const Chart& chart) {
    const std::size_t k = t.lattice.size();
    std::vector<Witness> out;
    for (std::size_t g = 0; g < k; ++g) {
        Witness m(k, 0);
        m[g] = 1;
        for (std::size_t i = 0; i < chart.cone.size(); ++i) {
            const auto shift = chart.gamma_raw(i, g).rational_value();
            if (!shift || !chart.gamma_exponents(i, g).is_zero() || shift->get_den() != 1) continue;
            const std::int64_t v = shift->get_num().get_si();
            const auto& w = t.witnesses.at(static_cast<std::size_t>(chart.cone[i] - 1));
            if (!w) throw validation_error("missing witness for ray " + std::to_string(chart.cone[i]));
            for (std::size_t q = 0; q < k; ++q) m[q] -= v * (*w)[q];
        }
        const Vec lhs = matvec(chart.a_sigma, chart.gamma_exponents.column(g));
        const Vec rhs = t.lattice.combine(m);
        if (!(lhs == rhs))
            throw validation_error("gamma column " + std::to_string(g + 1) + " of cone {" + cone_label(chart.cone) +
                                   "} is not in the quasilattice");
        out.push_back(std::move(m));
    }
    return out;
}

/// Transition from the chart of `from` (tau) to the chart of `to` (sigma):
/// w_i = prod_{j in tau} z_j^{E[i][j]} with E = A_sigma^{-1} A_tau.
struct MonomialMap {
    Cone from;
    Cone to;
    Mat exponents;  ///< rows labeled by `to`, columns by `from`
    std::size_t h = 0;

    /// Monomial transitions are established for 1 <= h <= n-1; disjoint cones are an extension valid on the dense orbit.
    bool extension() const { return h == from.size(); }
};

inline MonomialMap transition_map(const FundamentalTriple& t, const Cone& from, const Cone& to) {
    if (from == to) throw input_error("transition requires two distinct cones");
    t.cone_position(from);
    t.cone_position(to);
    MonomialMap m;
    m.from = from;
    m.to = to;
    m.exponents = solve(t.cone_matrix(to), t.cone_matrix(from));
    m.h = cone_difference(from, to).size();
    return m;
}

/// Exponent text after '^': bare when atomic ("-a", "2"), else parenthesized ("(1/phi)").
inline std::string exponent_text(const Scalar& e) {
    const std::string s = display_scalar(e);
    return is_atomic_text(s) ? s : "(" + s + ")";
}

/// "z" for one-dimensional charts, otherwise "z<ray index>".
inline std::string chart_variable(int ray, std::size_t dim) { return dim == 1 ? "z" : "z" + std::to_string(ray); }

inline std::string render_monomial(const MonomialMap& m, std::size_t row) {
    std::string out;
    const std::size_t n = m.from.size();
    for (std::size_t j = 0; j < m.from.size(); ++j) {
        const Scalar& e = m.exponents(row, j);
        if (e.is_zero()) continue;
        std::string f = chart_variable(m.from[j], n);
        if (!e.is_one()) f += "^" + exponent_text(e);
        out += (out.empty() ? "" : " ") + f;
    }
    return out.empty() ? "1" : out;
}

/// "[w_1 : ... : w_n]" in increasing order of the target cone's indices.
inline std::string render_transition(const MonomialMap& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.to.size(); ++i) out += (i ? " : " : "") + render_monomial(m, i);
    return out + "]";
}

struct Relation {
    int index = 0;          ///< j, not in the base cone
    Vec coefficients;       ///< a^j over the base cone: X_j = sum_i a^j_i X_i
    Vec kernel_vector;      ///< e_j - a^j in R^d
};

struct RelationSet {
    Cone base;
    std::vector<Relation> relations;
};

inline RelationSet relations(const FundamentalTriple& t, const Cone& cone) {
    t.cone_position(cone);
    const Mat pi = t.pi();
    std::vector<std::size_t> positions;
    for (int i : cone) positions.push_back(static_cast<std::size_t>(i - 1));
    const auto kernel = kernel_basis(pi, positions);
    RelationSet rs;
    rs.base = cone;
    std::size_t next = 0;
    for (std::size_t j = 1; j <= t.ray_count(); ++j) {
        if (std::binary_search(cone.begin(), cone.end(), static_cast<int>(j))) continue;
        Relation r;
        r.index = static_cast<int>(j);
        r.kernel_vector = kernel.at(next++);
        for (int i : cone) r.coefficients.push_back(-r.kernel_vector[static_cast<std::size_t>(i - 1)]);
        if (!is_zero_vec(matvec(pi, r.kernel_vector)))
            throw validation_error("relation for X" + std::to_string(j) + " is not in ker(pi)");
        rs.relations.push_back(std::move(r));
    }
    return rs;
}

/// "X4 = 1/phi X1 + 1/phi X2 - X3"
inline std::string render_relation(const RelationSet& rs, const Relation& r, const std::string& name = "X") {
    std::string rhs;
    for (std::size_t i = 0; i < rs.base.size(); ++i) {
        const Scalar& c = r.coefficients[i];
        if (c.is_zero()) continue;
        const std::string var = name + std::to_string(rs.base[i]);
        std::string term;
        if (c.is_one())
            term = var;
        else if ((-c).is_one())
            term = "-" + var;
        else {
            const std::string s = display_scalar(c);
            const bool compound = s.find(' ') != std::string::npos;
            term = (compound ? "(" + s + ")" : s) + " " + var;
        }
        if (rhs.empty())
            rhs = term;
        else if (term[0] == '-')
            rhs += " - " + term.substr(1);
        else
            rhs += " + " + term;
    }
    return name + std::to_string(r.index) + " = " + (rhs.empty() ? "0" : rhs);
}

struct CocycleReport {
    std::size_t pairs_checked = 0;
    std::size_t triples_checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Exact shared-column, inverse-pair and triangle identities over all ordered
/// pairs and triples of distinct maximal cones.
inline CocycleReport cocycle_check(const FundamentalTriple& t) {
    CocycleReport rep;
    const auto& cones = t.fan.max_cones;
    const std::size_t c = cones.size();
    std::vector<std::vector<std::optional<Mat>>> e(c, std::vector<std::optional<Mat>>(c));
    for (std::size_t s = 0; s < c; ++s)
        for (std::size_t u = 0; u < c; ++u)
            if (s != u) e[s][u] = transition_map(t, cones[u], cones[s]).exponents;  // rows s, cols u
    const auto id = Mat::identity(t.domain(), t.dim());
    for (std::size_t s = 0; s < c; ++s)
        for (std::size_t u = 0; u < c; ++u) {
            if (s == u) continue;
            ++rep.pairs_checked;
            const Mat& m = *e[s][u];
            for (int j : cone_intersection(cones[s], cones[u])) {
                const std::size_t col = m.col_of(j), row = m.row_of(j);
                for (std::size_t i = 0; i < m.rows(); ++i)
                    if (i == row ? !m(i, col).is_one() : !m(i, col).is_zero()) {
                        rep.violations.push_back("shared column " + std::to_string(j) + " of {" +
                                                 cone_label(cones[u]) + "}->{" + cone_label(cones[s]) + "}");
                        break;
                    }
            }
            if (!(matmul(m, *e[u][s]) == id))
                rep.violations.push_back("inverse pair {" + cone_label(cones[s]) + "},{" + cone_label(cones[u]) + "}");
        }
    for (std::size_t s = 0; s < c; ++s)
        for (std::size_t u = 0; u < c; ++u)
            for (std::size_t r = 0; r < c; ++r) {
                if (s == u || u == r || s == r) continue;
                ++rep.triples_checked;
                if (!(matmul(*e[s][u], *e[u][r]) == *e[s][r]))
                    rep.violations.push_back("triangle {" + cone_label(cones[s]) + "},{" + cone_label(cones[u]) +
                                             "},{" + cone_label(cones[r]) + "}");
            }
    return rep;
}

struct OrbitRow {
    std::size_t cone_dim = 0;
    std::size_t orbit_dim = 0;
    std::size_t count = 0;
};

/// Counts the cones of the fan (all subsets of maximal index sets) by dimension;
/// an m-dimensional cone gives an orbit of dimension n - m.
inline std::vector<OrbitRow> orbit_report(const FundamentalTriple& t) {
    std::set<Cone> faces;
    for (const auto& cone : t.fan.max_cones) {
        const std::size_t m = cone.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            Cone f;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::size_t{1} << i)) f.push_back(cone[i]);
            faces.insert(std::move(f));
        }
    }
    std::map<std::size_t, std::size_t> by_dim;
    for (const auto& f : faces) ++by_dim[f.size()];
    std::vector<OrbitRow> rows;
    for (auto [dim, count] : by_dim) rows.push_back({dim, t.dim() - dim, count});
    return rows;
}

struct Atlas {
    std::vector<Chart> charts;
    std::vector<MonomialMap> transitions;  ///< every ordered pair of distinct cones
    std::vector<RelationSet> relations;
    std::vector<OrbitRow> orbits;
    CocycleReport cocycle;
};

inline Atlas compile_atlas(const FundamentalTriple& t) {
    Atlas a;
    for (const auto& c : t.fan.max_cones) {
        a.charts.push_back(build_chart(t, c));
        a.relations.push_back(relations(t, c));
    }
    for (const auto& from : t.fan.max_cones)
        for (const auto& to : t.fan.max_cones)
            if (from != to) a.transitions.push_back(transition_map(t, from, to));
    a.orbits = orbit_report(t);
    a.cocycle = cocycle_check(t);
    return a;
}

}  // namespace quasifold
