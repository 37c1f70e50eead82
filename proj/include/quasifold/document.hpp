#pragma once

// JSON input documents: a scalar domain, a quasilattice, and either a fan or a
// polytope, plus optional option overrides.

#include <gmpxx.h>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "quasifold/error.hpp"
#include "quasifold/matrix.hpp"
#include "quasifold/polytope.hpp"
#include "quasifold/scalar_text.hpp"
#include "quasifold/triple.hpp"
#include "quasifold/verify.hpp"

namespace quasifold {

using json = nlohmann::ordered_json;

struct InputDocument {
    std::string name;
    std::string title;
    std::string source;  ///< file path or "gallery:<name>"
    DomainPtr domain;
    Quasilattice lattice;
    std::optional<Fan> fan;
    std::optional<Polytope> polytope;
    std::vector<std::optional<Witness>> witnesses;
    json options = json::object();
};

namespace detail {

class DocumentReader {
public:
    explicit DocumentReader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& what) const {
        throw input_error(source_ + ": " + path + ": " + what);
    }

    const json& field(const json& obj, const std::string& path, const char* key) const {
        if (!obj.is_object()) fail(path, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
        return *it;
    }

    std::string text(const json& v, const std::string& path) const {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
        fail(path, "expected a scalar string or integer");
    }

    Scalar scalar(const json& v, const std::string& path, const DomainPtr& dom) const {
        try {
            return parse_scalar(text(v, path), dom);
        } catch (const input_error& e) {
            fail(path, e.what());
        }
    }

    Vec vector(const json& v, const std::string& path, const DomainPtr& dom, std::optional<std::size_t> len) const {
        if (!v.is_array()) fail(path, "expected an array");
        if (len && v.size() != *len)
            fail(path, "expected " + std::to_string(*len) + " entries, got " + std::to_string(v.size()));
        Vec out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(scalar(v[i], path + "/" + std::to_string(i), dom));
        return out;
    }

    Witness integers(const json& v, const std::string& path, std::size_t len) const {
        if (!v.is_array() || v.size() != len) fail(path, "expected an integer array of length " + std::to_string(len));
        Witness w;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer()) fail(path + "/" + std::to_string(i), "expected an integer");
            w.push_back(v[i].get<std::int64_t>());
        }
        return w;
    }

    Cone cone(const json& v, const std::string& path) const {
        if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of 1-based ray indices");
        Cone c;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer() || v[i].get<int>() < 1) fail(path + "/" + std::to_string(i), "expected a positive index");
            c.push_back(v[i].get<int>());
        }
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) fail(path, "repeated ray index");
        return c;
    }

    DomainPtr domain(const json& v) const {
        const std::string kind = text(field(v, "/domain", "kind"), "/domain/kind");
        if (kind == "rational") return ScalarDomain::rational();
        if (kind != "number_field" && kind != "rational_function")
            fail("/domain/kind", "unknown domain kind '" + kind + "' (rational, number_field, rational_function)");
        const std::string symbol = text(field(v, "/domain", "symbol"), "/domain/symbol");
        const json* mp = nullptr;
        if (kind == "number_field") {
            mp = &field(v, "/domain", "min_poly");
            if (!mp->is_array() || mp->size() < 2) fail("/domain/min_poly", "expected descending coefficients");
        }
        try {
            if (mp) {
                std::vector<mpq_class> coeffs;
                for (auto it = mp->rbegin(); it != mp->rend(); ++it) coeffs.push_back(parse_decimal(text(*it, "/domain/min_poly")));
                return ScalarDomain::number_field(Poly(coeffs), symbol,
                                                  parse_decimal(text(field(v, "/domain", "embedding"), "/domain/embedding")));
            }
            std::optional<mpq_class> sample;
            if (v.contains("default_sample")) sample = parse_decimal(text(v["default_sample"], "/domain/default_sample"));
            return ScalarDomain::rational_function(symbol, sample, v.value("positive", true));
        } catch (const input_error& e) {
            fail("/domain", e.what());
        }
    }

    std::vector<std::optional<Witness>> witnesses(const json& parent, const std::string& path, std::size_t count,
                                                  std::size_t k) const {
        std::vector<std::optional<Witness>> out(count);
        if (!parent.contains("witnesses")) return out;
        const json& w = parent["witnesses"];
        if (!w.is_array() || w.size() != count) fail(path + "/witnesses", "expected one entry per ray (null to recover)");
        for (std::size_t j = 0; j < count; ++j)
            if (!w[j].is_null()) out[j] = integers(w[j], path + "/witnesses/" + std::to_string(j), k);
        return out;
    }

private:
    std::string source_;
};

}  // namespace detail

inline InputDocument parse_document(const json& doc, const std::string& source = "<input>") {
    const detail::DocumentReader r(source);
    if (!doc.is_object()) r.fail("/", "expected a JSON object");
    InputDocument out;
    out.source = source;
    out.name = doc.value("name", std::string());
    out.title = doc.value("title", std::string());
    out.domain = r.domain(r.field(doc, "/", "domain"));

    const json& gens = r.field(r.field(doc, "/", "quasilattice"), "/quasilattice", "generators");
    if (!gens.is_array() || gens.empty()) r.fail("/quasilattice/generators", "expected a non-empty array of vectors");
    const std::size_t n = gens[0].is_array() ? gens[0].size() : 0;
    if (n == 0) r.fail("/quasilattice/generators/0", "expected a non-empty vector");
    std::vector<Vec> cols;
    for (std::size_t g = 0; g < gens.size(); ++g)
        cols.push_back(r.vector(gens[g], "/quasilattice/generators/" + std::to_string(g), out.domain, n));
    out.lattice.generators = Mat::from_columns(out.domain, cols, n);
    const std::size_t k = cols.size();

    const bool has_fan = doc.contains("fan"), has_poly = doc.contains("polytope");
    if (has_fan == has_poly) r.fail("/", "exactly one of 'fan' or 'polytope' is required");
    if (has_fan) {
        const json& f = doc["fan"];
        const json& rays = r.field(f, "/fan", "rays");
        if (!rays.is_array() || rays.empty()) r.fail("/fan/rays", "expected a non-empty array of vectors");
        Fan fan;
        fan.dim = n;
        for (std::size_t j = 0; j < rays.size(); ++j)
            fan.rays.push_back(r.vector(rays[j], "/fan/rays/" + std::to_string(j), out.domain, n));
        const json& cones = r.field(f, "/fan", "max_cones");
        if (!cones.is_array() || cones.empty()) r.fail("/fan/max_cones", "expected a non-empty array");
        for (std::size_t c = 0; c < cones.size(); ++c) {
            const std::string path = "/fan/max_cones/" + std::to_string(c);
            Cone cone = r.cone(cones[c], path);
            if (cone.back() > static_cast<int>(rays.size())) r.fail(path, "references a ray that does not exist");
            fan.max_cones.push_back(std::move(cone));
        }
        out.witnesses = r.witnesses(f, "/fan", rays.size(), k);
        out.fan = std::move(fan);
    } else {
        const json& p = doc["polytope"];
        const json& facets = r.field(p, "/polytope", "facets");
        if (!facets.is_array() || facets.empty()) r.fail("/polytope/facets", "expected a non-empty array");
        Polytope poly;
        poly.domain = out.domain;
        poly.dim = n;
        for (std::size_t j = 0; j < facets.size(); ++j) {
            const std::string path = "/polytope/facets/" + std::to_string(j);
            poly.facets.push_back({r.vector(r.field(facets[j], path, "normal"), path + "/normal", out.domain, n),
                                   r.scalar(r.field(facets[j], path, "offset"), path + "/offset", out.domain)});
        }
        out.witnesses = r.witnesses(p, "/polytope", facets.size(), k);
        out.polytope = std::move(poly);
    }
    if (doc.contains("options")) {
        if (!doc["options"].is_object()) r.fail("/options", "expected an object");
        out.options = doc["options"];
    }
    return out;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline InputDocument load_document(const std::string& path) { return parse_document(read_json_file(path), path); }

/// Replaces the parameter of a Q(a) document by a rational value; the result lives over Q.
inline InputDocument specialize(const InputDocument& doc, const mpq_class& value) {
    if (doc.domain->kind() != DomainKind::rational_function)
        throw input_error("specialization needs a document over a parameter field");
    const DomainPtr q = ScalarDomain::rational();
    auto sub = [&](const Scalar& s) { return Scalar(q, s.substitute_value(value)); };
    auto sub_vec = [&](const Vec& v) {
        Vec out;
        for (const auto& s : v) out.push_back(sub(s));
        return out;
    };
    InputDocument out = doc;
    out.domain = q;
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < doc.lattice.size(); ++c) cols.push_back(sub_vec(doc.lattice.generators.column(c)));
    out.lattice.generators = Mat::from_columns(q, cols, doc.lattice.dim());
    if (doc.fan)
        for (auto& ray : out.fan->rays) ray = sub_vec(ray);
    if (doc.polytope) {
        out.polytope->domain = q;
        for (auto& f : out.polytope->facets) {
            f.normal = sub_vec(f.normal);
            f.offset = sub(f.offset);
        }
    }
    return out;
}

struct PreparedTriple {
    FundamentalTriple triple;
    std::optional<VertexEnumeration> vertices;  ///< polytope documents only
};

inline PreparedTriple prepare(const InputDocument& doc) {
    PreparedTriple out;
    if (doc.fan) {
        out.triple.fan = *doc.fan;
        out.triple.lattice = doc.lattice;
        out.triple.witnesses = doc.witnesses;
        check_structure(out.triple);
        return out;
    }
    out.vertices = enumerate_vertices(*doc.polytope);
    out.triple.fan = normal_fan(*doc.polytope, out.vertices->vertices);
    out.triple.lattice = doc.lattice;
    out.triple.witnesses = doc.witnesses;
    check_structure(out.triple);
    return out;
}

/// Option overrides from the document, applied on top of the defaults.
inline ValidationOptions validation_options(const InputDocument& doc, ValidationOptions opt = {}) {
    if (doc.options.contains("validation")) {
        const auto& v = doc.options["validation"];
        opt.probe_samples = v.value("probe_samples", opt.probe_samples);
        opt.witness_box = v.value("witness_box", opt.witness_box);
    }
    return opt;
}

inline TrialConfig trial_config(const InputDocument& doc, TrialConfig cfg = {}) {
    if (doc.options.contains("verify")) {
        const auto& v = doc.options["verify"];
        cfg.samples = v.value("samples", cfg.samples);
        cfg.tolerance = v.value("tolerance", cfg.tolerance);
        cfg.word_length = v.value("word_length", cfg.word_length);
        cfg.integer_box = v.value("integer_box", cfg.integer_box);
    }
    return cfg;
}

}  // namespace quasifold
