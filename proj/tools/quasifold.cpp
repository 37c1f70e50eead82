// Command-line front end: validate, atlas, transition, polytope, verify, gallery.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quasifold/quasifold.hpp"

namespace {

using namespace quasifold;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_input_error = 2;

struct Common {
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::string param;
    std::string substitute;
};

Cone parse_cone(const std::string& text) {
    Cone c;
    std::string item;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (item.empty()) throw input_error("bad cone '" + text + "': expected comma-separated indices");
            try {
                c.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw input_error("bad cone '" + text + "': '" + item + "' is not an index");
            }
            item.clear();
        } else if (ch != ' ') {
            item += ch;
        }
    }
    std::sort(c.begin(), c.end());
    return c;
}

/// "a=1.4142" -> value, checking the symbol against the document's parameter.
mpq_class parse_assignment(const std::string& text, const InputDocument& doc, const char* flag) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw input_error(std::string(flag) + " expects symbol=value");
    if (doc.domain->kind() != DomainKind::rational_function)
        throw input_error(std::string(flag) + " applies only to documents over a parameter field");
    if (text.substr(0, eq) != doc.domain->symbol())
        throw input_error(std::string(flag) + ": unknown parameter '" + text.substr(0, eq) + "' (document uses '" +
                          doc.domain->symbol() + "')");
    return parse_decimal(text.substr(eq + 1));
}

std::uint64_t resolve_seed(const Common& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("QUASIFOLD_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw input_error(std::string("QUASIFOLD_SEED is not an unsigned integer: ") + env);
        }
    }
    return 1;
}

int emit(const RunOutcome& r, const Common& c) {
    const std::string body = c.format == "text" ? render_text(r.report) : r.report.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(c.out);
        if (!f) throw input_error(c.out + ": cannot open for writing");
        f << body;
    }
    return r.passed ? exit_ok : exit_check_failed;
}

int run(InputDocument doc, RunOptions opt, const Common& c) {
    if (!c.substitute.empty()) doc = specialize(doc, parse_assignment(c.substitute, doc, "--substitute"));
    if (!c.param.empty()) opt.parameter_sample = parse_assignment(c.param, doc, "--param");
    opt.seed = resolve_seed(c);
    return emit(run_document(doc, opt), c);
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "write the report to this path instead of stdout");
    cmd->add_option("--format", c.format, "report encoding")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", c.seed, "random seed (default: QUASIFOLD_SEED or 1)");
    cmd->add_option("--param", c.param, "numeric sample for the parameter, e.g. a=1.4142");
    cmd->add_option("--substitute", c.substitute, "replace the parameter by a rational value, e.g. a=1");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Charts, transition monomials and checks for nonrational toric geometry"};
    app.require_subcommand(1);
    Common common;
    std::string input, from, to, gallery_name;
    bool list = false;

    auto* validate_cmd = app.add_subcommand("validate", "check simpliciality, quasirationality and the face condition");
    auto* atlas_cmd = app.add_subcommand("atlas", "charts, transitions, relations, orbits and the cocycle check");
    auto* transition_cmd = app.add_subcommand("transition", "one chart transition");
    auto* polytope_cmd = app.add_subcommand("polytope", "vertex, cone and fixed point table of a polytope document");
    auto* verify_cmd = app.add_subcommand("verify", "numeric checks at sampled points");
    auto* gallery_cmd = app.add_subcommand("gallery", "run a built-in example end to end");
    for (auto* cmd : {validate_cmd, atlas_cmd, transition_cmd, polytope_cmd, verify_cmd}) {
        cmd->add_option("input", input, "JSON input document")->required()->check(CLI::ExistingFile);
        add_common(cmd, common);
    }
    transition_cmd->add_option("--from", from, "source cone, e.g. 1,2,3")->required();
    transition_cmd->add_option("--to", to, "target cone, e.g. 1,2,4")->required();
    gallery_cmd->add_option("name", gallery_name, "example name");
    gallery_cmd->add_flag("--list", list, "list the available examples");
    add_common(gallery_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        RunOptions opt;
        if (*gallery_cmd) {
            if (list || gallery_name.empty()) {
                for (const auto& n : gallery_names()) std::cout << n << "\n";
                return gallery_name.empty() && !list ? exit_input_error : exit_ok;
            }
            opt.verification = true;
            return run(load_gallery(gallery_name), opt, common);
        }
        InputDocument doc = load_document(input);
        if (*validate_cmd) {
            opt.polytope = false;
            opt.atlas = false;
        } else if (*atlas_cmd) {
            opt.polytope = false;
        } else if (*transition_cmd) {
            opt.polytope = false;
            opt.transition = std::make_pair(parse_cone(from), parse_cone(to));
        } else if (*polytope_cmd) {
            if (!doc.polytope) throw input_error(input + ": the polytope command needs a polytope document");
            opt.atlas = false;
        } else if (*verify_cmd) {
            opt.polytope = false;
            opt.atlas = false;
            opt.verification = true;
        }
        return run(std::move(doc), opt, common);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const validation_error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return exit_check_failed;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_check_failed;
    }
}
