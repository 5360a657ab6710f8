// Command-line front end: lct analyze --expr/--file/--batch ...

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lct/errors.hpp"
#include "lct/verdict.hpp"

namespace {

enum class Format { Text, Json, JsonLines };

struct InputLine {
    std::string text;
    int line = 0;
};

struct InputFile {
    std::vector<std::string> vars;
    std::vector<InputLine> exprs;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// One expression per line, '#' starts a comment, an optional "vars: x,y,z" line before the first expression.
InputFile read_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lct::PreconditionError("cannot open " + path);
    InputFile f;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.rfind("vars:", 0) == 0) {
            if (!f.exprs.empty()) throw lct::PreconditionError(path + ":" + std::to_string(lineno) + ": vars line after expressions");
            f.vars = lct::parse_variable_list(trim(line.substr(5)));
            continue;
        }
        f.exprs.push_back({line, lineno});
    }
    return f;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const lct::ParseError*>(&e) || dynamic_cast<const lct::PreconditionError*>(&e) ||
        dynamic_cast<const lct::NonIsolatedError*>(&e) || dynamic_cast<const lct::SmoothGermError*>(&e))
        return 1;
    return 2;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const lct::ParseError*>(&e)) return "parse";
    if (dynamic_cast<const lct::NonIsolatedError*>(&e)) return "non-isolated";
    if (dynamic_cast<const lct::PreconditionError*>(&e)) return "precondition";
    if (dynamic_cast<const lct::TruncationInsufficient*>(&e)) return "truncation";
    if (dynamic_cast<const lct::IrrationalExponent*>(&e)) return "irrational-exponent";
    if (dynamic_cast<const lct::ConsistencyFailure*>(&e)) return "consistency";
    return "internal";
}

struct Runner {
    std::vector<std::string> vars;
    lct::AnalyzeOptions opt;
    Format format = Format::Text;
    std::optional<lct::ReportCache> cache;

    /// Returns the exit code for this input.
    int run(const std::string& text, const std::string& where) {
        try {
            const lct::Polynomial f = lct::parse_polynomial(text, vars);
            if (format == Format::Text) {
                std::cout << lct::render_text(lct::analyze(f, vars, opt, text));
                return 0;
            }
            nlohmann::json j;
            const std::string material = lct::ReportCache::key_material(f, vars, opt);
            std::optional<std::string> hit = cache ? cache->get(material) : std::nullopt;
            if (hit) {
                j = nlohmann::json::parse(*hit);
            } else {
                j = lct::to_json(lct::analyze(f, vars, opt, text));
                // The raw text is not part of the key; store the canonical form and patch it in on output.
                nlohmann::json stored = j;
                stored["input"] = stored["f"];
                if (cache) cache->put(material, stored.dump());
            }
            j["input"] = text;
            std::cout << (format == Format::Json ? j.dump(2) : j.dump()) << "\n";
            return 0;
        } catch (const std::exception& e) {
            std::cerr << where << ": " << error_kind(e) << " error: " << e.what() << "\n";
            if (const auto* pe = dynamic_cast<const lct::ParseError*>(&e))
                std::cerr << "  " << text << "\n  " << std::string(pe->position(), ' ') << "^\n";
            if (const auto* te = dynamic_cast<const lct::TruncationInsufficient*>(&e))
                std::cerr << "  retry with --truncation " << te->suggested_order() << " or a larger --max-order\n";
            if (format == Format::JsonLines) {
                nlohmann::json j = {{"input", text}, {"error", {{"kind", error_kind(e)}, {"message", e.what()}}}};
                std::cout << j.dump() << "\n";
            }
            return exit_code_for(e);
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Logarithmic comparison theorem analyzer for isolated hypersurface singularities"};
    app.require_subcommand(1);
    CLI::App* analyze = app.add_subcommand("analyze", "analyze one or more polynomials");

    std::string expr, file, batch, vars_text, cache_dir;
    bool json = false, json_lines = false, text = false;
    lct::AnalyzeOptions opt;
    auto* src = analyze->add_option_group("input");
    src->add_option("--expr", expr, "polynomial expression");
    src->add_option("--file", file, "file holding one expression");
    src->add_option("--batch", batch, "file with one expression per line");
    src->require_option(1);
    analyze->add_option("--vars", vars_text, "comma-separated variable names");
    auto* fmt = analyze->add_option_group("format");
    fmt->add_flag("--json", json, "pretty JSON report");
    fmt->add_flag("--json-lines", json_lines, "one compact JSON object per input");
    fmt->add_flag("--text", text, "human-readable report (default)");
    fmt->require_option(0, 1);
    analyze->add_option("--truncation", opt.order, "initial s-order K (default: number of variables + 1)")
        ->check(CLI::Range(1, 250));
    analyze->add_option("--x-degree", opt.x_degree, "x-degree bound Dx at the initial order")->check(CLI::Range(1, 250));
    analyze->add_option("--max-order", opt.max_order, "largest s-order tried before giving up")
        ->check(CLI::Range(2, 250));
    analyze->add_option("--degree-bound", opt.degree_bound, "degree bound for logarithmic vector fields")
        ->check(CLI::Range(1, 250));
    analyze->add_option("--cache", cache_dir, "directory for cached JSON reports");
    analyze->add_flag("--selfcheck", opt.selfcheck, "run the spectrum self-checks");
    analyze->add_flag("--logder", opt.logder, "include logarithmic vector field diagnostics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Runner r;
    r.opt = opt;
    r.format = json ? Format::Json : json_lines ? Format::JsonLines : Format::Text;
    std::vector<InputLine> inputs;
    std::string origin = "<expr>";
    try {
        if (!vars_text.empty()) r.vars = lct::parse_variable_list(vars_text);
        if (!expr.empty()) {
            inputs.push_back({expr, 0});
        } else {
            origin = file.empty() ? batch : file;
            InputFile in = read_input_file(origin);
            if (r.vars.empty()) r.vars = in.vars;
            if (!file.empty() && in.exprs.size() != 1)
                throw lct::PreconditionError(file + ": expected exactly one expression, found " +
                                             std::to_string(in.exprs.size()) + " (use --batch)");
            inputs = std::move(in.exprs);
        }
        if (r.vars.empty()) throw lct::PreconditionError("no variables: pass --vars or a 'vars:' line");
        if (!cache_dir.empty()) {
            if (r.format == Format::Text) std::cerr << "note: --cache applies to JSON output only\n";
            r.cache.emplace(cache_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    int code = 0;
    for (const auto& in : inputs) {
        const std::string where = in.line ? origin + ":" + std::to_string(in.line) : origin;
        code = std::max(code, r.run(in.text, where));
    }
    return code;
}
