#include "hahn/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <nlohmann/json.hpp>

#include "hahn/interpretation.hpp"
#include "hahn/logic.hpp"
#include "hahn/report.hpp"
#include "hahn/series.hpp"

namespace hahn::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    out.push_back(current);
    return out;
}

GroupElement group_int(GroupKind kind, std::int64_t v) {
    switch (kind) {
        case GroupKind::Int: return GroupElement::from_int(v);
        case GroupKind::Rat: return GroupElement::from_rat(BigRat(v));
        case GroupKind::Lex2: return GroupElement::from_lex2(v, 0);
    }
    throw UsageError("bad group kind");
}

void emit_report(const Report& report, const SessionConfig& cfg, std::ostream& out) {
    if (cfg.json_output)
        out << report.to_json().dump(2) << "\n";
    else
        out << report.text();
}

// --- series ---------------------------------------------------------------

int cmd_series_binary(const SessionConfig& cfg, const std::string& op, const std::string& lhs,
                      const std::string& rhs, std::ostream& out) {
    AlgebraContext ctx = cfg.algebra();
    Series f = Series::parse(lhs, ctx);
    Series g = Series::parse(rhs, ctx);
    Series result = op == "add" ? f + g : f * g;
    if (cfg.json_output)
        out << result.to_json().dump(2) << "\n";
    else
        out << result.str() << "\n";
    return 0;
}

int cmd_series_parse(const SessionConfig& cfg, const std::string& literal, std::ostream& out) {
    Series f = Series::parse(literal, cfg.algebra());
    if (cfg.json_output)
        out << f.to_json().dump(2) << "\n";
    else
        out << f.str() << "\n";
    return 0;
}

int cmd_series_truncate(const SessionConfig& cfg, const std::string& literal,
                        const std::string& at, const std::string& monomial, std::ostream& out) {
    AlgebraContext ctx = cfg.algebra();
    Series f = Series::parse(literal, ctx);
    if (at.empty() == monomial.empty())
        throw UsageError("truncate needs exactly one of --at and --monomial");
    Series result = at.empty() ? f.truncate_at_monomial(Series::parse(monomial, ctx))
                               : f.truncate(ctx.parse_exponent(at));
    if (cfg.json_output)
        out << result.to_json().dump(2) << "\n";
    else
        out << result.str() << "\n";
    return 0;
}

int cmd_series_decompose(const SessionConfig& cfg, const std::string& literal,
                         std::ostream& out) {
    Series f = Series::parse(literal, cfg.algebra());
    Decomposition d = f.decompose();
    if (cfg.json_output) {
        json j{{"purely_infinite", d.purely_infinite.to_json()},
               {"constant", d.constant.str()},
               {"infinitesimal", d.infinitesimal.to_json()}};
        out << j.dump(2) << "\n";
    } else {
        out << "purely_infinite: " << d.purely_infinite.str() << "\n";
        out << "constant: " << d.constant.str() << "\n";
        out << "infinitesimal: " << d.infinitesimal.str() << "\n";
    }
    return 0;
}

int cmd_series_val(const SessionConfig& cfg, const std::string& literal, std::ostream& out) {
    Series f = Series::parse(literal, cfg.algebra());
    if (cfg.json_output)
        out << json{{"valuation", f.valuation().str()}}.dump(2) << "\n";
    else
        out << f.valuation().str() << "\n";
    return 0;
}

// --- mso ------------------------------------------------------------------

int cmd_mso_eval(const SessionConfig& cfg, const std::string& formula_arg,
                 const std::string& strategy_name, const std::string& assign,
                 std::ostream& out) {
    std::string text = formula_arg;
    if (std::ifstream file(formula_arg); file.good()) {
        std::ostringstream buffer;
        buffer << file.rdbuf();
        text = buffer.str();
    }
    mso::FormulaPtr formula = mso::parse_formula(text);
    mso::Assignment asg;
    if (!assign.empty()) {
        for (const std::string& item : split(assign, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw UsageError("assignment entries look like name=value: " + item);
            std::string name = item.substr(0, eq);
            std::uint64_t value = std::stoull(item.substr(eq + 1));
            asg.elems[name] = value;
        }
    }
    bool result = mso::eval(mso::BoundedStructure{cfg.bound}, *formula, asg,
                            mso::strategy_from_string(strategy_name));
    if (cfg.json_output)
        out << json{{"value", result}}.dump(2) << "\n";
    else
        out << (result ? "true" : "false") << "\n";
    return 0;
}

// --- interpret --------------------------------------------------------------

int cmd_interpret_demo(const SessionConfig& cfg, const std::string& base,
                       std::size_t trials, std::ostream& out) {
    AlgebraContext ctx = cfg.algebra();
    interp::InterpretationConfig icfg(Series::parse(base, ctx), cfg.depth);
    Report report = interp::check_interpretation(icfg, trials, cfg.seed);
    emit_report(report, cfg, out);
    return report.all_pass() ? 0 : 1;
}

int cmd_interpret_two_sorted(const SessionConfig& cfg, const std::string& literal,
                             const std::string& gamma_text, std::ostream& out) {
    AlgebraContext ctx = cfg.algebra();
    Series f = Series::parse(literal, ctx);
    GroupElement gamma = ctx.parse_exponent(gamma_text);
    Series truncated = interp::truncation_map(f, gamma);
    bool in_support = interp::exponent_rel(gamma, f);
    if (cfg.json_output) {
        json j{{"truncation", truncated.to_json()}, {"in_support", in_support}};
        out << j.dump(2) << "\n";
    } else {
        out << "truncation: " << truncated.str() << "\n";
        out << "in_support: " << (in_support ? "true" : "false") << "\n";
    }
    return 0;
}

// --- witness ----------------------------------------------------------------

int cmd_witness_sop(const SessionConfig& cfg, std::size_t length, const std::string& thetas_arg,
                    std::ostream& out) {
    std::vector<GroupElement> thetas;
    if (thetas_arg.empty()) {
        for (std::size_t i = 0; i < length; ++i)
            thetas.push_back(group_int(cfg.group, static_cast<std::int64_t>(i)));
    } else {
        AlgebraContext ctx = cfg.algebra();
        for (const std::string& item : split(thetas_arg, ';'))
            thetas.push_back(ctx.parse_exponent(item));
    }
    std::vector<Series> chain = witness::sop_chain(thetas);
    Coefficient one = Coefficient::from_rat(BigRat(1));  // the chain is built over rationals
    std::vector<Series> universe;
    for (const auto& theta : thetas) universe.push_back(Series::monomial(theta, one));
    for (std::int64_t j = 1; j <= 5; ++j)
        universe.push_back(Series::monomial(thetas.back() + group_int(cfg.group, j), one));
    universe.push_back(Series::monomial(thetas.front(), one + one));
    universe.push_back(Series::monomial(thetas.front(), one) +
                       Series::monomial(thetas[1], one));
    Report report;
    report.add("chain-strictly-nested", witness::verify_sop(chain, universe));
    if (cfg.json_output) {
        json j = report.to_json();
        j["chain"] = json::array();
        for (const auto& f : chain) j["chain"].push_back(f.str());
        out << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < chain.size(); ++i)
            out << "f_" << i << " = " << chain[i].str() << "\n";
        out << report.text();
    }
    return report.all_pass() ? 0 : 1;
}

int cmd_witness_tp2(const SessionConfig& cfg, std::size_t depth, std::size_t width,
                    std::ostream& out) {
    witness::WitnessGrid grid = witness::tp2_grid(depth, width, cfg.caps);
    Report report = witness::verify_tp2(grid, witness::all_paths(depth, width));
    emit_report(report, cfg, out);
    return report.all_pass() ? 0 : 1;
}

int cmd_witness_shatter(const SessionConfig& cfg, std::size_t size, std::size_t universe_size,
                        std::ostream& out) {
    if (universe_size < size)
        throw UsageError("universe must be at least as large as the shattered set");
    witness::ShatterInstance inst = witness::subset_sum_instance(size);
    std::vector<Series> universe = inst.points;
    Coefficient one = Coefficient::from_rat(BigRat(1));
    std::size_t extras = universe_size - size;
    std::size_t extra_monomials = extras - extras / 3;
    for (std::size_t j = 0; j < extra_monomials; ++j)
        universe.push_back(
            Series::monomial(GroupElement::from_int(BigInt(size + j)), one));
    for (std::size_t j = 0; universe.size() < universe_size; ++j)
        universe.push_back(inst.points[j % size] + inst.points[(j + 1) % size]);
    Report report;
    report.add("shatters-exactly", witness::check_shatters(inst, universe, true));
    emit_report(report, cfg, out);
    return report.all_pass() ? 0 : 1;
}

int cmd_selftest(const SessionConfig& cfg, std::ostream& out) {
    std::vector<selftest::CriterionResult> results = selftest::run_all(cfg.seed);
    bool pass = true;
    if (cfg.json_output) {
        json arr = json::array();
        for (const auto& r : results) {
            arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            pass = pass && r.pass;
        }
        out << json{{"criteria", arr}}.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            out << selftest::render(r) << "\n";
            pass = pass && r.pass;
        }
    }
    return pass ? 0 : 1;
}

}  // namespace

void SessionConfig::load_file(const std::string& path) {
    std::ifstream file(path);
    if (!file.good()) throw UsageError("cannot read config file: " + path);
    json j = json::parse(file, nullptr, true, true);
    if (j.contains("group")) group = group_kind_from_string(j["group"].get<std::string>());
    if (j.contains("field")) field = field_kind_from_string(j["field"].get<std::string>());
    if (j.contains("modulus")) {
        modulus = j["modulus"].is_string() ? BigInt(j["modulus"].get<std::string>())
                                           : BigInt(j["modulus"].get<std::uint64_t>());
    }
    if (j.contains("bound")) bound = j["bound"].get<std::uint64_t>();
    if (j.contains("depth")) depth = j["depth"].get<std::size_t>();
    if (j.contains("caps")) {
        const json& c = j["caps"];
        if (c.contains("outer")) caps.max_outer_index = c["outer"].get<std::size_t>();
        if (c.contains("exponent")) caps.max_exponent_index = c["exponent"].get<std::size_t>();
        if (c.contains("bits")) caps.max_bits = c["bits"].get<std::size_t>();
    }
    if (j.contains("output")) {
        std::string mode = j["output"].get<std::string>();
        if (mode == "json") json_output = true;
        else if (mode == "text") json_output = false;
        else throw UsageError("config output mode must be text or json");
    }
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
}

void SessionConfig::validate() const {
    if (bound < 1 || depth < 1) throw UsageError("bounds must be >= 1");
    if (caps.max_exponent_index < 1 || caps.max_bits < 1)
        throw UsageError("caps must be >= 1");
    if (field == FieldKind::Fp &&
        (modulus < 2 || !boost::multiprecision::miller_rabin_test(modulus, 25)))
        throw UsageError("fp modulus must be prime, got " + modulus.str());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    SessionConfig cfg;
    try {
        // Config file first (env var, then an explicit --config), flags win.
        std::string config_path;
        if (const char* env = std::getenv("HAHN_TRUNC_CONFIG")) config_path = env;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
        }
        if (!config_path.empty()) cfg.load_file(config_path);

        CLI::App app{"Exact finitely supported generalized power series with truncation, "
                     "a bounded two-sorted logic evaluator, and combinatorial witness suites"};
        app.name("hahntrunc");
        app.fallthrough();
        app.require_subcommand(1);

        std::string group_name = to_string(cfg.group);
        std::string field_name = to_string(cfg.field);
        std::string modulus_text = cfg.modulus.str();
        std::string caps_text;
        std::string config_flag;  // consumed in the prescan above
        app.add_option("--group", group_name, "value group: int, rat or lex2");
        app.add_option("--field", field_name, "coefficient field: rat or fp");
        app.add_option("--modulus", modulus_text, "prime modulus for the fp field");
        app.add_option("--bound", cfg.bound, "element domain bound for the logic evaluator");
        app.add_option("--depth", cfg.depth, "interpretation depth");
        app.add_option("--caps", caps_text, "tower caps as outer,exponent,bits");
        app.add_option("--seed", cfg.seed, "seed for the randomized suites");
        app.add_option("--config", config_flag, "config file (also HAHN_TRUNC_CONFIG)");
        app.add_flag("--json", cfg.json_output, "emit JSON instead of text");

        // series
        CLI::App* series = app.add_subcommand("series", "series algebra");
        series->require_subcommand(1);
        std::string lit_a, lit_b, trunc_at, trunc_monomial;
        CLI::App* sparse = series->add_subcommand("parse", "parse and print canonically");
        sparse->add_option("literal", lit_a)->required();
        CLI::App* sadd = series->add_subcommand("add", "sum of two series");
        sadd->add_option("lhs", lit_a)->required();
        sadd->add_option("rhs", lit_b)->required();
        CLI::App* smul = series->add_subcommand("mul", "product of two series");
        smul->add_option("lhs", lit_a)->required();
        smul->add_option("rhs", lit_b)->required();
        CLI::App* strunc = series->add_subcommand("truncate", "cut below an exponent");
        strunc->add_option("literal", lit_a)->required();
        strunc->add_option("--at", trunc_at, "exponent to cut at");
        strunc->add_option("--monomial", trunc_monomial, "monomial to cut at");
        CLI::App* sdec = series->add_subcommand("decompose",
                                                "purely infinite + constant + infinitesimal");
        sdec->add_option("literal", lit_a)->required();
        CLI::App* sval = series->add_subcommand("val", "valuation (inf for 0)");
        sval->add_option("literal", lit_a)->required();

        // mso
        CLI::App* msoc = app.add_subcommand("mso", "bounded two-sorted logic");
        msoc->require_subcommand(1);
        CLI::App* meval = msoc->add_subcommand("eval", "evaluate a closed-or-assigned formula");
        std::string formula_arg, strategy_name = "lfp", assign;
        meval->add_option("--formula", formula_arg, "formula text or file")->required();
        meval->add_option("--strategy", strategy_name, "lfp or enum");
        meval->add_option("--assign", assign, "comma-separated name=value pairs");

        // interpret
        CLI::App* interp_cmd = app.add_subcommand("interpret", "arithmetic inside the series field");
        interp_cmd->require_subcommand(1);
        CLI::App* idemo = interp_cmd->add_subcommand("demo", "verify the encoded arithmetic");
        std::string base = "t";
        std::size_t trials = 200;
        idemo->add_option("--base", base, "base monomial below 1");
        idemo->add_option("--trials", trials, "random membership trials");
        CLI::App* itwo = interp_cmd->add_subcommand("two-sorted", "truncation map and support relation");
        std::string gamma_text;
        itwo->add_option("--series", lit_a)->required();
        itwo->add_option("--gamma", gamma_text)->required();

        // witness
        CLI::App* wit = app.add_subcommand("witness", "combinatorial witness suites");
        wit->require_subcommand(1);
        CLI::App* wsop = wit->add_subcommand("sop", "strictly nested solution sets");
        std::size_t length = 10;
        std::string thetas_arg;
        wsop->add_option("--length", length, "chain length");
        wsop->add_option("--thetas", thetas_arg, "semicolon-separated exponents");
        CLI::App* wtp2 = wit->add_subcommand("tp2", "grid of pairwise-inconsistent rows");
        std::size_t gdepth = 2, gwidth = 3;
        wtp2->add_option("--depth", gdepth, "rows");
        wtp2->add_option("--width", gwidth, "columns");
        CLI::App* wshatter = wit->add_subcommand("shatter", "subset-sum shattering");
        std::size_t size = 10, universe_size = 30;
        wshatter->add_option("--size", size, "shattered set size");
        wshatter->add_option("--universe", universe_size, "universe size");

        CLI::App* self = app.add_subcommand("selftest", "run the full verification suite");

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        }

        cfg.group = group_kind_from_string(group_name);
        cfg.field = field_kind_from_string(field_name);
        cfg.modulus = parse_bigint(modulus_text);
        if (!caps_text.empty()) {
            std::vector<std::string> parts = split(caps_text, ',');
            if (parts.size() != 3) throw UsageError("--caps needs outer,exponent,bits");
            cfg.caps.max_outer_index = std::stoull(parts[0]);
            cfg.caps.max_exponent_index = std::stoull(parts[1]);
            cfg.caps.max_bits = std::stoull(parts[2]);
        }
        cfg.validate();

        if (sparse->parsed()) return cmd_series_parse(cfg, lit_a, out);
        if (sadd->parsed()) return cmd_series_binary(cfg, "add", lit_a, lit_b, out);
        if (smul->parsed()) return cmd_series_binary(cfg, "mul", lit_a, lit_b, out);
        if (strunc->parsed()) return cmd_series_truncate(cfg, lit_a, trunc_at, trunc_monomial, out);
        if (sdec->parsed()) return cmd_series_decompose(cfg, lit_a, out);
        if (sval->parsed()) return cmd_series_val(cfg, lit_a, out);
        if (meval->parsed()) return cmd_mso_eval(cfg, formula_arg, strategy_name, assign, out);
        if (idemo->parsed()) return cmd_interpret_demo(cfg, base, trials, out);
        if (itwo->parsed()) return cmd_interpret_two_sorted(cfg, lit_a, gamma_text, out);
        if (wsop->parsed()) return cmd_witness_sop(cfg, length, thetas_arg, out);
        if (wtp2->parsed()) return cmd_witness_tp2(cfg, gdepth, gwidth, out);
        if (wshatter->parsed()) return cmd_witness_shatter(cfg, size, universe_size, out);
        if (self->parsed()) return cmd_selftest(cfg, out);
        throw UsageError("no subcommand selected");
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hahn::cli
