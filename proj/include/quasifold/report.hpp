#pragma once

// Report assembly. Every command builds a JSON report; the text form is
// rendered from that JSON so both encodings carry the same content.

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quasifold/atlas.hpp"
#include "quasifold/document.hpp"
#include "quasifold/polytope.hpp"
#include "quasifold/scalar_text.hpp"
#include "quasifold/triple.hpp"
#include "quasifold/verify.hpp"
#include "quasifold/version.hpp"

namespace quasifold {

struct RunOptions {
    std::uint64_t seed = 1;
    std::optional<mpq_class> parameter_sample;
    bool validation = true;
    bool polytope = true;
    bool atlas = true;
    bool verification = false;
    std::optional<std::pair<Cone, Cone>> transition;  ///< (from, to): report only this pair
};

struct RunOutcome {
    json report;
    bool passed = true;  ///< false when any hard check failed
};

namespace detail {

inline json scalar_row(const Vec& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(format_scalar(s));
    return a;
}

inline json matrix_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(scalar_row(m.row(i)));
    return rows;
}

inline json cone_json(const Cone& c) {
    json a = json::array();
    for (int i : c) a.push_back(i);
    return a;
}

inline json domain_json(const DomainPtr& d, const std::optional<mpq_class>& sample) {
    json out;
    switch (d->kind()) {
        case DomainKind::rational:
            out["kind"] = "rational";
            break;
        case DomainKind::number_field: {
            out["kind"] = "number_field";
            out["symbol"] = d->symbol();
            json mp = json::array();
            const auto& c = d->min_poly().coeffs();
            for (auto it = c.rbegin(); it != c.rend(); ++it) mp.push_back(it->get_str());
            out["min_poly"] = mp;
            out["embedding"] = d->embedding_approx().get_str();
            break;
        }
        case DomainKind::rational_function:
            out["kind"] = "rational_function";
            out["symbol"] = d->symbol();
            out["positive"] = d->parameter_positive();
            if (sample) out["parameter_sample"] = sample->get_str();
            break;
    }
    return out;
}

inline json transition_json(const MonomialMap& m) {
    json t;
    t["from"] = cone_json(m.from);
    t["to"] = cone_json(m.to);
    t["h"] = m.h;
    t["extension"] = m.extension();
    t["rows"] = cone_json(m.to);
    t["cols"] = cone_json(m.from);
    t["exponents"] = matrix_json(m.exponents);
    t["rendered"] = render_transition(m);
    return t;
}

inline json trial_report_json(const TrialReport& r) {
    json out;
    out["check"] = r.check;
    out["ok"] = r.ok();
    out["trials"] = r.trials;
    out["skipped"] = r.skipped;
    out["max_deviation"] = r.max_deviation;
    json br = json::object();
    for (const auto& [k, v] : r.breakdown)
        br[k] = {{"trials", v.trials}, {"failures", v.failures}, {"max_deviation", v.max_deviation}};
    out["breakdown"] = br;
    json fl = json::array();
    for (const auto& f : r.failures)
        fl.push_back({{"trial", f.trial},
                      {"seed", f.seed},
                      {"kind", f.kind},
                      {"target", f.target},
                      {"deviation", f.deviation},
                      {"detail", f.detail}});
    out["failures"] = fl;
    return out;
}

}  // namespace detail

inline RunOutcome run_document(const InputDocument& doc, const RunOptions& opt) {
    RunOutcome out;
    json& rep = out.report;
    const std::optional<mpq_class> sample =
        opt.parameter_sample ? opt.parameter_sample : doc.domain->default_sample();
    rep["tool"] = tool_name;
    rep["version"] = tool_version;
    rep["seed"] = opt.seed;
    rep["input"] = {{"name", doc.name}, {"title", doc.title}, {"source", doc.source},
                    {"domain", detail::domain_json(doc.domain, sample)}};

    PreparedTriple prepared = prepare(doc);
    const FundamentalTriple& raw = prepared.triple;
    rep["input"]["dim"] = raw.dim();
    rep["input"]["rays"] = raw.ray_count();
    rep["input"]["generators"] = raw.lattice.size();

    if (prepared.vertices && opt.polytope) {
        json p;
        p["sample_independent"] = prepared.vertices->sample_independent;
        json rows = json::array();
        std::size_t idx = 0;
        for (const auto& v : prepared.vertices->vertices)
            rows.push_back({{"index", ++idx},
                            {"vertex", detail::scalar_row(v.coords)},
                            {"cone", detail::cone_json(v.facets)},
                            {"fixed_point", fixed_point_label(fixed_point(raw, v.facets))}});
        p["vertices"] = rows;
        rep["polytope"] = p;
    }

    ValidationOptions vopt = validation_options(doc);
    vopt.seed = opt.seed;
    vopt.parameter_sample = sample;
    const ValidationReport val = validate(raw, vopt);
    if (opt.validation) {
        json v;
        v["ok"] = val.ok();
        json checks = json::array();
        for (const auto& c : val.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"advisory", c.advisory}, {"detail", c.detail}});
        v["checks"] = checks;
        json w = json::array();
        for (const auto& m : val.witnesses) w.push_back(m);
        v["witnesses"] = w;
        v["probe"] = {{"ran", val.probe.ran},
                      {"samples", val.probe.samples},
                      {"gaps", val.probe.gaps},
                      {"overlaps", val.probe.overlaps},
                      {"note", val.probe.note}};
        rep["validation"] = v;
    }
    if (!val.ok()) {
        out.passed = false;
        rep["status"] = {{"ok", false}, {"reason", "validation failed"}};
        return out;
    }
    const FundamentalTriple t = with_witnesses(raw, vopt.witness_box);

    if (opt.transition) {
        rep["transition"] = detail::transition_json(transition_map(t, opt.transition->first, opt.transition->second));
    } else if (opt.atlas) {
        const Atlas a = compile_atlas(t);
        json at;
        json charts = json::array();
        for (const auto& ch : a.charts) {
            json cert = json::array();
            for (const auto& m : gamma_lattice_certificate(t, ch)) cert.push_back(m);
            charts.push_back({{"cone", detail::cone_json(ch.cone)},
                              {"fixed_point", fixed_point_label(ch.fixed_point)},
                              {"a_sigma", detail::matrix_json(ch.a_sigma)},
                              {"gamma_generators", detail::matrix_json(ch.gamma_exponents)},
                              {"gamma_certificate", cert}});
        }
        at["charts"] = charts;
        at["gamma_note"] =
            "gamma generators are canonical exponent columns; two descriptions of the same group may differ "
            "generator by generator";
        json tr = json::array();
        for (const auto& m : a.transitions) tr.push_back(detail::transition_json(m));
        at["transitions"] = tr;
        json rel = json::array();
        for (const auto& rs : a.relations) {
            json items = json::array();
            for (const auto& r : rs.relations)
                items.push_back({{"index", r.index},
                                 {"coefficients", detail::scalar_row(r.coefficients)},
                                 {"rendered", render_relation(rs, r)}});
            rel.push_back({{"cone", detail::cone_json(rs.base)}, {"relations", items}});
        }
        at["relations"] = rel;
        json orb = json::array();
        for (const auto& o : a.orbits)
            orb.push_back({{"cone_dim", o.cone_dim}, {"orbit_dim", o.orbit_dim}, {"count", o.count}});
        at["orbits"] = orb;
        at["cocycle"] = {{"ok", a.cocycle.ok()},
                         {"pairs_checked", a.cocycle.pairs_checked},
                         {"triples_checked", a.cocycle.triples_checked},
                         {"violations", a.cocycle.violations}};
        if (!a.cocycle.ok()) out.passed = false;
        rep["atlas"] = at;
    }

    if (opt.verification) {
        TrialConfig cfg = trial_config(doc);
        cfg.seed = opt.seed;
        cfg.parameter_sample = sample;
        const auto summary = verify_all(t, cfg);
        json v;
        v["ok"] = summary.ok();
        v["config"] = {{"samples", cfg.samples},
                       {"tolerance", cfg.tolerance},
                       {"word_length", cfg.word_length},
                       {"integer_box", cfg.integer_box}};
        json checks = json::array();
        for (const auto& r : summary.checks) checks.push_back(detail::trial_report_json(r));
        v["checks"] = checks;
        rep["verification"] = v;
        if (!summary.ok()) out.passed = false;
    }
    rep["status"] = {{"ok", out.passed}};
    return out;
}

namespace detail {

inline std::string join_ints(const json& a, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? sep : "") + std::to_string(a[i].get<long long>());
    return s;
}

/// Text form of a canonical scalar string: re-parsed and shown with display_scalar.
inline std::string show(const json& s, const DomainPtr& dom) {
    return display_scalar(parse_scalar(s.get<std::string>(), dom));
}

inline std::string vector_text(const json& row, const DomainPtr& dom) {
    std::string s = "(";
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? ", " : "") + show(row[i], dom);
    return s + ")";
}

inline DomainPtr domain_from_json(const json& d) {
    const std::string kind = d["kind"];
    if (kind == "rational") return ScalarDomain::rational();
    if (kind == "number_field") {
        std::vector<mpq_class> c;
        for (auto it = d["min_poly"].rbegin(); it != d["min_poly"].rend(); ++it) c.push_back(parse_decimal(*it));
        return ScalarDomain::number_field(Poly(c), d["symbol"], parse_decimal(d["embedding"].get<std::string>()));
    }
    return ScalarDomain::rational_function(d["symbol"], std::nullopt, d.value("positive", true));
}

}  // namespace detail

inline std::string render_text(const json& rep) {
    std::ostringstream o;
    const json& in = rep["input"];
    const DomainPtr dom = detail::domain_from_json(in["domain"]);
    o << rep["tool"].get<std::string>() << " " << rep["version"].get<std::string>() << ", seed "
      << rep["seed"].get<std::uint64_t>() << "\n";
    o << "input: " << (in["name"].get<std::string>().empty() ? in["source"].get<std::string>() : in["name"].get<std::string>());
    if (!in["title"].get<std::string>().empty()) o << " - " << in["title"].get<std::string>();
    o << "\n";
    {
        const json& d = in["domain"];
        std::string field = d["kind"] == "rational" ? "Q" : "Q(" + d["symbol"].get<std::string>() + ")";
        if (d["kind"] == "number_field") {
            std::vector<mpq_class> c;
            for (auto it = d["min_poly"].rbegin(); it != d["min_poly"].rend(); ++it) c.push_back(mpq_class(it->get<std::string>()));
            field += ", " + detail::format_poly(Poly(c), d["symbol"]) + " = 0, " + d["symbol"].get<std::string>() +
                     " ~ " + Scalar::generator(dom).eval_numeric(10);
        } else if (d["kind"] == "rational_function") {
            if (d.value("positive", true)) field += ", " + d["symbol"].get<std::string>() + " > 0";
            if (d.contains("parameter_sample"))
                field += ", numeric sample " + d["symbol"].get<std::string>() + " = " +
                         Scalar(ScalarDomain::rational(), mpq_class(d["parameter_sample"].get<std::string>())).eval_numeric(10);
        }
        o << "domain: " << field << "\n";
    }
    o << "dimension " << in["dim"] << ", " << in["rays"] << " rays, " << in["generators"] << " quasilattice generators\n";

    if (rep.contains("polytope")) {
        const json& p = rep["polytope"];
        o << "\npolytope: " << p["vertices"].size() << " vertices"
          << (p["sample_independent"].get<bool>() ? "" : " (WARNING: incidences depend on the parameter sample)") << "\n";
        for (const auto& v : p["vertices"])
            o << "  " << v["index"] << "  " << detail::vector_text(v["vertex"], dom) << "  "
              << v["fixed_point"].get<std::string>() << "  {" << detail::join_ints(v["cone"]) << "}\n";
    }

    if (rep.contains("validation")) {
        const json& v = rep["validation"];
        o << "\nvalidation: " << (v["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
        for (const auto& c : v["checks"]) {
            const bool passed = c["passed"];
            o << "  " << c["name"].get<std::string>() << ": "
              << (passed ? "pass" : (c["advisory"].get<bool>() ? "advisory" : "FAIL"));
            if (!c["detail"].get<std::string>().empty()) o << " (" << c["detail"].get<std::string>() << ")";
            o << "\n";
        }
        if (!v["witnesses"].empty()) {
            o << "  witnesses:";
            for (std::size_t j = 0; j < v["witnesses"].size(); ++j)
                o << " X" << j + 1 << "=[" << detail::join_ints(v["witnesses"][j]) << "]";
            o << "\n";
        }
    }

    auto transition_line = [&](const json& t) {
        std::string s = "{" + detail::join_ints(t["from"]) + "} -> {" + detail::join_ints(t["to"]) +
                        "}: " + t["rendered"].get<std::string>();
        if (t["extension"].get<bool>()) s += "  (extension: disjoint index sets, valid on the dense orbit)";
        return s;
    };

    if (rep.contains("transition")) {
        const json& t = rep["transition"];
        o << "\ntransition " << transition_line(t) << "\n";
        o << "  exponent matrix (rows " << detail::join_ints(t["rows"]) << "; columns " << detail::join_ints(t["cols"])
          << "):\n";
        for (const auto& row : t["exponents"]) o << "    " << detail::vector_text(row, dom) << "\n";
    }

    if (rep.contains("atlas")) {
        const json& a = rep["atlas"];
        o << "\natlas: " << a["charts"].size() << " charts\n";
        for (const auto& c : a["charts"]) {
            o << "  chart {" << detail::join_ints(c["cone"]) << "} at " << c["fixed_point"].get<std::string>()
              << "\n    gamma generators:";
            const json& g = c["gamma_generators"];
            const std::size_t k = g.empty() ? 0 : g[0].size();
            for (std::size_t q = 0; q < k; ++q) {
                json col = json::array();
                for (const auto& row : g) col.push_back(row[q]);
                o << " " << detail::vector_text(col, dom);
            }
            o << "\n";
        }
        o << "  transitions:\n";
        for (const auto& t : a["transitions"]) o << "    " << transition_line(t) << "\n";
        o << "  relations:\n";
        for (const auto& rs : a["relations"]) {
            o << "    over {" << detail::join_ints(rs["cone"]) << "}:";
            bool first = true;
            for (const auto& r : rs["relations"]) {
                o << (first ? " " : "; ") << r["rendered"].get<std::string>();
                first = false;
            }
            o << "\n";
        }
        o << "  orbits:";
        for (const auto& r : a["orbits"])
            o << " " << r["count"] << " of dimension " << r["orbit_dim"] << (r == a["orbits"].back() ? "" : ",");
        o << "\n";
        const json& cc = a["cocycle"];
        o << "  cocycle: " << (cc["ok"].get<bool>() ? "ok" : "FAILED") << " (" << cc["pairs_checked"] << " pairs, "
          << cc["triples_checked"] << " triples)\n";
        for (const auto& v : cc["violations"]) o << "    violation: " << v.get<std::string>() << "\n";
    }

    if (rep.contains("verification")) {
        const json& v = rep["verification"];
        const json& cfg = v["config"];
        o << "\nverification: " << (v["ok"].get<bool>() ? "ok" : "FAILED") << " (" << cfg["samples"]
          << " samples per target, tolerance ";
        char tol[32];
        std::snprintf(tol, sizeof tol, "%.0e", cfg["tolerance"].get<double>());
        o << tol << ")\n";
        for (const auto& c : v["checks"]) {
            o << "  " << c["check"].get<std::string>() << ": " << c["trials"] << " trials, "
              << c["failures"].size() << " failures";
            if (c["skipped"].get<std::size_t>() > 0) o << ", " << c["skipped"] << " pairs skipped";
            o << "\n";
            std::size_t shown = 0;
            for (const auto& f : c["failures"]) {
                if (++shown > 10) {
                    o << "    ... " << c["failures"].size() - 10 << " more\n";
                    break;
                }
                char dev[32];
                std::snprintf(dev, sizeof dev, "%.3e", f["deviation"].get<double>());
                o << "    " << f["kind"].get<std::string>() << " at " << f["target"].get<std::string>() << " trial "
                  << f["trial"] << " (seed " << f["seed"] << "): " << f["detail"].get<std::string>() << ", deviation "
                  << dev << "\n";
            }
        }
    }
    o << "\nstatus: " << (rep["status"]["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
    return o.str();
}

}  // namespace quasifold
