#pragma once

// Fundamental triples (fan, quasilattice, ray generators) and their validation.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quasifold/error.hpp"
#include "quasifold/matrix.hpp"
#include "quasifold/scalar.hpp"
#include "quasifold/scalar_text.hpp"

namespace quasifold {

/// Sorted 1-based ray indices of a cone.
using Cone = std::vector<int>;

/// Integer coefficients of a vector with respect to the quasilattice generators.
using Witness = std::vector<std::int64_t>;

inline std::string cone_label(const Cone& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s;
}

inline Cone cone_intersection(const Cone& a, const Cone& b) {
    Cone out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Cone cone_difference(const Cone& a, const Cone& b) {
    Cone out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Z-span of the columns of an n x k generator matrix.
struct Quasilattice {
    Mat generators;

    const DomainPtr& domain() const { return generators.domain(); }
    std::size_t dim() const { return generators.rows(); }
    std::size_t size() const { return generators.cols(); }

    /// G m for an integer coefficient vector m.
    Vec combine(const Witness& m) const {
        if (m.size() != size()) throw dimension_mismatch("witness length does not match generator count");
        Vec v(dim(), Scalar::zero(domain()));
        for (std::size_t g = 0; g < size(); ++g) {
            if (m[g] == 0) continue;
            const Scalar c(domain(), mpq_class(static_cast<long>(m[g])));
            for (std::size_t i = 0; i < dim(); ++i) v[i] += c * generators(i, g);
        }
        return v;
    }
};

struct Fan {
    std::size_t dim = 0;
    std::vector<Vec> rays;         ///< X_1 .. X_d
    std::vector<Cone> max_cones;   ///< sorted 1-based index sets of size dim
};

struct FundamentalTriple {
    Fan fan;
    Quasilattice lattice;
    std::vector<std::optional<Witness>> witnesses;  ///< one slot per ray; empty slots are recovered on demand

    const DomainPtr& domain() const { return lattice.domain(); }
    std::size_t dim() const { return fan.dim; }
    std::size_t ray_count() const { return fan.rays.size(); }

    /// n x d matrix of pi: e_j -> X_j, columns labeled 1..d.
    Mat pi() const {
        Mat m = Mat::from_columns(domain(), fan.rays, dim());
        std::vector<int> labels(ray_count());
        for (std::size_t j = 0; j < labels.size(); ++j) labels[j] = static_cast<int>(j + 1);
        m.set_labels({}, labels);
        return m;
    }

    /// A_sigma: columns X_i for i in the cone, increasing index order, labeled by ray index.
    Mat cone_matrix(const Cone& cone) const {
        std::vector<Vec> cols;
        for (int i : cone) cols.push_back(ray(i));
        Mat m = Mat::from_columns(domain(), cols, dim());
        m.set_labels({}, cone);
        return m;
    }

    const Vec& ray(int j) const {
        if (j < 1 || static_cast<std::size_t>(j) > ray_count())
            throw input_error("ray index " + std::to_string(j) + " out of range");
        return fan.rays[static_cast<std::size_t>(j - 1)];
    }

    std::size_t cone_position(const Cone& cone) const {
        auto it = std::find(fan.max_cones.begin(), fan.max_cones.end(), cone);
        if (it == fan.max_cones.end()) throw input_error("{" + cone_label(cone) + "} is not a maximal cone");
        return static_cast<std::size_t>(it - fan.max_cones.begin());
    }
};

/// Checks shapes and domains; throws input_error on malformed structure.
inline void check_structure(const FundamentalTriple& t) {
    const std::size_t n = t.dim();
    if (n == 0) throw input_error("fan dimension must be positive");
    if (t.lattice.dim() != n) throw input_error("quasilattice generators must have length " + std::to_string(n));
    if (t.lattice.size() < n) throw input_error("quasilattice needs at least n generators");
    if (t.fan.rays.empty()) throw input_error("fan has no rays");
    for (std::size_t j = 0; j < t.fan.rays.size(); ++j) {
        if (t.fan.rays[j].size() != n)
            throw input_error("ray " + std::to_string(j + 1) + " has length " + std::to_string(t.fan.rays[j].size()));
        for (const auto& s : t.fan.rays[j])
            if (!same_domain(*s.domain(), *t.domain())) throw domain_mismatch("ray entries use another domain");
    }
    if (t.witnesses.size() != t.fan.rays.size()) throw input_error("need one witness slot per ray");
    for (const auto& c : t.fan.max_cones)
        for (int i : c)
            if (i < 1 || static_cast<std::size_t>(i) > t.fan.rays.size())
                throw input_error("cone {" + cone_label(c) + "} references ray " + std::to_string(i));
}

struct CheckResult {
    std::string name;
    bool passed = true;
    bool advisory = false;
    std::string detail;
};

struct SupportProbe {
    bool ran = false;
    std::size_t samples = 0;
    std::size_t gaps = 0;      ///< directions in no maximal cone
    std::size_t overlaps = 0;  ///< directions interior to two or more cones
    std::string note;
};

struct ValidationOptions {
    std::size_t probe_samples = 2000;
    std::uint64_t seed = 1;
    std::optional<mpq_class> parameter_sample;
    std::int64_t witness_box = 10;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::vector<Witness> witnesses;  ///< resolved witness for every ray (when quasirationality passed)
    SupportProbe probe;

    /// Hard checks only; advisory findings never fail a report.
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || c.advisory; });
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Verifies the supplied witness for ray j, or recovers one by solving
/// G m = X_j on a full-rank column subset and searching the free
/// coordinates in [-box, box]. Among integral solutions the one with the
/// smallest L1 norm (then lexicographically smallest) is returned.
inline Witness ray_membership(const FundamentalTriple& t, int j, std::int64_t box = 10) {
    const Vec& x = t.ray(j);
    const auto& slot = t.witnesses.at(static_cast<std::size_t>(j - 1));
    if (slot) {
        Vec diff = t.lattice.combine(*slot);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= x[i];
        if (!is_zero_vec(diff))
            throw no_witness_found("supplied witness for ray " + std::to_string(j) + " does not reproduce it");
        return *slot;
    }
    const Mat& g = t.lattice.generators;
    const auto pivots = pivot_columns(g);
    if (pivots.size() != g.rows()) throw rank_deficient("quasilattice generators do not span R^n");
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < g.cols(); ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.push_back(c);
    std::vector<Vec> pcols;
    for (auto p : pivots) pcols.push_back(g.column(p));
    const Mat basis_inv = invert(Mat::from_columns(t.domain(), pcols));

    std::optional<Witness> best;
    std::int64_t best_norm = 0;
    std::vector<std::int64_t> offset(free.size(), -box);
    for (;;) {
        Vec rhs = x;
        for (std::size_t f = 0; f < free.size(); ++f) {
            if (offset[f] == 0) continue;
            const Scalar c(t.domain(), mpq_class(static_cast<long>(offset[f])));
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= c * g(i, free[f]);
        }
        const Vec sol = matvec(basis_inv, rhs);
        bool integral = std::all_of(sol.begin(), sol.end(), [](const Scalar& s) { return s.is_rational_integer(); });
        if (integral) {
            Witness m(g.cols(), 0);
            std::int64_t norm = 0;
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                m[pivots[i]] = sol[i].rational_value()->get_num().get_si();
                norm += std::abs(m[pivots[i]]);
            }
            for (std::size_t f = 0; f < free.size(); ++f) {
                m[free[f]] = offset[f];
                norm += std::abs(offset[f]);
            }
            if (!best || norm < best_norm || (norm == best_norm && m < *best)) {
                best = m;
                best_norm = norm;
            }
        }
        std::size_t k = 0;
        while (k < offset.size() && offset[k] == box) offset[k++] = -box;
        if (k == offset.size()) break;
        ++offset[k];
    }
    if (!best) {
        std::ostringstream msg;
        msg << "no integer witness for ray " << j << " within box [-" << box << "," << box << "]";
        msg << "; rational solutions: particular (";
        const Vec part = matvec(basis_inv, x);
        for (std::size_t i = 0; i < part.size(); ++i)
            msg << (i ? ", " : "") << "m" << pivots[i] + 1 << " = " << format_scalar(part[i]);
        msg << ") plus ker G of dimension " << free.size();
        throw no_witness_found(msg.str());
    }
    return *best;
}

struct ConePair {
    std::size_t first = 0, second = 0;  ///< 0-based positions in fan.max_cones, first < second
    Cone shared;
    std::size_t h = 0;                   ///< |I_second \ I_first|
    bool disjoint = false;               ///< h == n: no shared ray
};

/// Every unordered pair of maximal cones with its shared index set; pairs
/// with no shared index are flagged as `disjoint`.
inline std::vector<ConePair> cone_adjacency(const FundamentalTriple& t) {
    std::vector<ConePair> out;
    const auto& cones = t.fan.max_cones;
    for (std::size_t a = 0; a < cones.size(); ++a)
        for (std::size_t b = a + 1; b < cones.size(); ++b) {
            ConePair p;
            p.first = a;
            p.second = b;
            p.shared = cone_intersection(cones[a], cones[b]);
            p.h = cone_difference(cones[b], cones[a]).size();
            p.disjoint = p.shared.empty();
            out.push_back(std::move(p));
        }
    return out;
}

namespace detail {

inline std::vector<std::vector<double>> to_double_matrix(const Mat& m, const std::optional<mpq_class>& sample) {
    std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).to_double(sample);
    return out;
}

inline SupportProbe support_probe(const FundamentalTriple& t, const ValidationOptions& opt) {
    SupportProbe probe;
    std::optional<mpq_class> sample = opt.parameter_sample ? opt.parameter_sample : t.domain()->default_sample();
    if (t.domain()->kind() == DomainKind::rational_function && !sample) {
        probe.note = "skipped: parameter field without a sample value";
        return probe;
    }
    std::vector<std::vector<std::vector<double>>> inverses;
    for (const auto& c : t.fan.max_cones) {
        try {
            inverses.push_back(to_double_matrix(invert(t.cone_matrix(c)), sample));
        } catch (const singular_matrix&) {
            probe.note = "skipped: singular cone";
            return probe;
        }
    }
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = t.dim();
    const double eps = 1e-9;
    probe.ran = true;
    probe.samples = opt.probe_samples;
    for (std::size_t s = 0; s < opt.probe_samples; ++s) {
        std::vector<double> u(n);
        double norm = 0;
        for (auto& v : u) {
            v = normal(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (auto& v : u) v /= norm;
        std::size_t closed = 0, interior = 0;
        for (const auto& inv : inverses) {
            double lo = 1e300;
            for (std::size_t i = 0; i < n; ++i) {
                double c = 0;
                for (std::size_t k = 0; k < n; ++k) c += inv[i][k] * u[k];
                lo = std::min(lo, c);
            }
            if (lo >= -eps) ++closed;
            if (lo > eps) ++interior;
        }
        if (closed == 0) ++probe.gaps;
        if (interior >= 2) ++probe.overlaps;
    }
    return probe;
}

}  // namespace detail

/// Runs every check on a triple: simpliciality and quasirationality are hard,
/// the face condition is implied by simpliciality, the support probe is advisory.
inline ValidationReport validate(const FundamentalTriple& t, const ValidationOptions& opt = {}) {
    check_structure(t);
    ValidationReport rep;
    const std::size_t n = t.dim();

    CheckResult simp{"simpliciality", true, false, ""};
    std::vector<bool> cone_ok(t.fan.max_cones.size(), true);
    for (std::size_t c = 0; c < t.fan.max_cones.size(); ++c) {
        const Cone& cone = t.fan.max_cones[c];
        std::set<int> distinct(cone.begin(), cone.end());
        std::string why;
        if (cone.size() != n)
            why = "has " + std::to_string(cone.size()) + " indices, expected " + std::to_string(n);
        else if (distinct.size() != cone.size())
            why = "repeats a ray index";
        else if (rank(t.cone_matrix(cone)) != n)
            why = "rays are linearly dependent";
        if (!why.empty()) {
            cone_ok[c] = false;
            simp.passed = false;
            simp.detail += (simp.detail.empty() ? "" : "; ") + std::string("cone {") + cone_label(cone) + "} " + why;
        }
    }
    std::vector<bool> used(t.ray_count(), false);
    for (const auto& c : t.fan.max_cones)
        for (int i : c) used[static_cast<std::size_t>(i - 1)] = true;
    for (std::size_t j = 0; j < used.size(); ++j)
        if (!used[j]) {
            simp.passed = false;
            simp.detail += (simp.detail.empty() ? "" : "; ") + std::string("ray ") + std::to_string(j + 1) +
                           " lies in no maximal cone";
        }
    if (simp.passed) simp.detail = std::to_string(t.fan.max_cones.size()) + " maximal cones of rank " + std::to_string(n);
    rep.checks.push_back(simp);

    CheckResult quasi{"quasirationality", true, false, ""};
    for (std::size_t j = 0; j < t.ray_count(); ++j) {
        try {
            rep.witnesses.push_back(ray_membership(t, static_cast<int>(j + 1), opt.witness_box));
        } catch (const error& e) {
            quasi.passed = false;
            quasi.detail += (quasi.detail.empty() ? "" : "; ") + std::string(e.what());
        }
    }
    if (!quasi.passed) rep.witnesses.clear();
    if (quasi.passed) quasi.detail = "every ray is an integer combination of the generators";
    rep.checks.push_back(quasi);

    CheckResult face{"face_condition", true, false, ""};
    std::size_t pairs = 0;
    for (const auto& p : cone_adjacency(t)) {
        if (!cone_ok[p.first] || !cone_ok[p.second] || p.shared.empty()) continue;
        ++pairs;
        if (rank(t.cone_matrix(p.shared)) != p.shared.size()) {
            face.passed = false;
            face.detail += "shared rays {" + cone_label(p.shared) + "} dependent; ";
        }
    }
    if (face.passed) face.detail = std::to_string(pairs) + " intersecting pairs have independent shared rays";
    rep.checks.push_back(face);

    CheckResult support{"support_probe", true, true, ""};
    if (simp.passed) {
        rep.probe = detail::support_probe(t, opt);
        if (rep.probe.ran) {
            support.passed = rep.probe.gaps == 0 && rep.probe.overlaps == 0;
            support.detail = std::to_string(rep.probe.samples) + " directions, " + std::to_string(rep.probe.gaps) +
                             " uncovered, " + std::to_string(rep.probe.overlaps) + " covered twice";
        } else {
            support.detail = rep.probe.note;
        }
    } else {
        support.detail = "skipped: simpliciality failed";
    }
    rep.checks.push_back(support);
    return rep;
}

/// Copy of the triple with every witness slot filled (throws on failure).
inline FundamentalTriple with_witnesses(FundamentalTriple t, std::int64_t box = 10) {
    for (std::size_t j = 0; j < t.ray_count(); ++j)
        if (!t.witnesses[j]) t.witnesses[j] = ray_membership(t, static_cast<int>(j + 1), box);
    return t;
}

}  // namespace quasifold
