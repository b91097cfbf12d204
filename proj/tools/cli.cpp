#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ldwb/criteria.hpp"
#include "ldwb/embedding_model.hpp"
#include "ldwb/laver_table.hpp"
#include "ldwb/ld_engine.hpp"
#include "ldwb/report.hpp"
#include "ldwb/term.hpp"

namespace ldwb::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::size_t budget_frontier = SearchBudget{}.max_frontier_terms;
    std::size_t budget_depth = SearchBudget{}.max_depth;
    std::size_t max_term_size = kDefaultMaxTermSize;
    std::size_t max_divisor_size = SearchBounds{}.max_divisor_size;
    std::size_t max_chain = SearchBounds{}.max_chain;
    std::size_t max_seed = SearchBounds{}.max_seed_size;
    std::size_t max_context = QuasiFreeBounds{}.max_context;
    std::size_t max_tail = QuasiFreeBounds{}.max_tail;
    std::size_t max_component_size = QuasiFreeBounds{}.max_component_size;
    std::uint64_t seed = 0;
    std::string sig;
    std::string out;
    std::string format = "text";

    SearchBudget budget() const { return {budget_frontier, max_term_size, budget_depth}; }
    SearchBounds bounds() const { return {max_divisor_size, max_chain, max_seed}; }
    QuasiFreeBounds qf_bounds() const { return {max_context, max_tail, max_component_size}; }
    bool json() const { return format == "json"; }
};

/// Raised for bad input that is not a term syntax error.
class UsageError : public Error {
public:
    using Error::Error;
};

void add_budget_flags(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--budget-frontier,--max-frontier", cfg.budget_frontier,
                    "Maximum terms kept per search side")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget-depth", cfg.budget_depth, "Maximum expansion depth")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-term-size", cfg.max_term_size, "Maximum term size (leaves)")
        ->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--out", cfg.out, "Write the report to this file");
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
}

void add_sig_flag(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--sig", cfg.sig,
                    "Signature: 'mono', 'jk', or a JSON signature file "
                    "(default: inferred from the input)");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ColoredSignature colored_signature(const std::string& choice)
{
    if (choice.empty() || choice == "jk") {
        return ColoredSignature::flagship();
    }
    if (choice == "mono") {
        return ColoredSignature(Signature::from_names({"x"}), {Color::Proper});
    }
    return ColoredSignature::from_json(read_file(choice));
}

Signature signature_for(const std::string& choice, std::string_view text)
{
    if (choice.empty()) {
        return infer_signature(text);
    }
    return colored_signature(choice).base();
}

Term parse_input(std::string_view text, const Signature& sig, const RunConfig& cfg)
{
    return parse_term(text, sig, ParseOptions{cfg.max_term_size});
}

int max_laver_index()
{
    if (const char* env = std::getenv("LDWB_MAX_LAVER_N")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("LDWB_MAX_LAVER_N is not an integer: '") + env + "'");
        }
    }
    return kDefaultMaxLaverIndex;
}

/// Writes the collected output either to --out or to the given stream.
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + cfg.out + "' for writing");
    }
    file << text;
}

void print_position(std::ostream& err, std::string_view text, std::size_t position)
{
    err << "  " << text << "\n  " << std::string(position, ' ') << "^\n";
}

// --- term -------------------------------------------------------------------

int cmd_term(const std::string& action, const std::string& text, std::size_t steps,
             const RunConfig& cfg, std::ostream& out)
{
    const Signature sig = signature_for(cfg.sig, text);
    const Term t = parse_input(text, sig, cfg);
    std::ostringstream buf;
    if (action == "parse") {
        if (cfg.json()) {
            buf << json{{"term", render_term(t)}, {"size", t.size()}}.dump() << '\n';
        } else {
            buf << render_term(t) << '\n';
        }
    } else if (action == "expand") {
        for (const auto& [result, step] : expand_once(t)) {
            if (cfg.json()) {
                buf << json{{"pos", step.position}, {"result", render_term(result)}}.dump() << '\n';
            } else {
                buf << render_term(result) << '\n';
            }
        }
    } else {
        const Term w = random_expansion_walk(t, steps, cfg.seed);
        if (cfg.json()) {
            buf << json{{"input", render_term(t)},
                        {"steps", steps},
                        {"seed", cfg.seed},
                        {"result", render_term(w)}}
                       .dump()
                << '\n';
        } else {
            buf << render_term(w) << '\n';
        }
    }
    emit(cfg, buf.str(), out);
    return kOk;
}

// --- eq ---------------------------------------------------------------------

int cmd_eq(const std::string& lhs_text, const std::string& rhs_text, const RunConfig& cfg,
           std::ostream& out)
{
    const Signature sig = signature_for(cfg.sig, lhs_text + " " + rhs_text);
    const Term lhs = parse_input(lhs_text, sig, cfg);
    const Term rhs = parse_input(rhs_text, sig, cfg);
    const Verdict v = decide_equiv(lhs, rhs, sig, cfg.budget());
    json doc = verdict_to_json(v);
    std::ostringstream buf;
    if (cfg.json()) {
        doc["lhs"] = render_term(lhs);
        doc["rhs"] = render_term(rhs);
        doc["budget"] = budget_to_json(cfg.budget());
        buf << doc.dump() << '\n';
    } else {
        buf << verdict_name(v) << '\n';
        doc.erase("verdict");
        buf << doc.dump() << '\n';
    }
    emit(cfg, buf.str(), out);
    if (is_equal(v)) {
        return kOk;
    }
    return is_distinct(v) ? kFound : kUnknown;
}

// --- laver ------------------------------------------------------------------

struct LaverArgs {
    int n = -1;
    LaverTable::Value row = 0;
    std::string file;
};

LaverTable table_for(const LaverArgs& args)
{
    if (!args.file.empty()) {
        return load_table(args.file, false, max_laver_index());
    }
    if (args.n < 0) {
        throw UsageError("either -n or --file is required");
    }
    return build_table(args.n, max_laver_index());
}

int cmd_laver(const std::string& action, const LaverArgs& args, const RunConfig& cfg,
              std::ostream& out)
{
    if (action == "gen") {
        if (args.n < 0) {
            throw UsageError("-n is required");
        }
        const LaverTable table = build_table(args.n, max_laver_index());
        const std::string path = cfg.out.empty() ? "A" + std::to_string(args.n) + ".lavr" : cfg.out;
        save_table(table, path);
        out << "wrote A_" << args.n << " to " << path << '\n';
        return kOk;
    }
    const LaverTable table = table_for(args);
    std::ostringstream buf;
    int code = kOk;
    if (action == "period") {
        if (args.row < 1 || args.row > table.order()) {
            throw UsageError("--row must be in 1.." + std::to_string(table.order()));
        }
        const auto period = row_period(table, args.row);
        if (cfg.json()) {
            buf << json{{"n", table.n()}, {"row", args.row}, {"period", period}}.dump() << '\n';
        } else {
            buf << period << '\n';
        }
    } else if (action == "verify") {
        const bool ok = verify_ld_exhaustive(table);
        buf << (ok ? "OK" : "FAIL") << '\n';
        code = ok ? kOk : kFound;
    } else {
        buf << table_to_json(table) << '\n';
    }
    emit(cfg, buf.str(), out);
    return code;
}

// --- classify ---------------------------------------------------------------

int cmd_classify(const std::string& pairs_path, const RunConfig& cfg, std::ostream& out)
{
    const ColoredSignature sig = colored_signature(cfg.sig);
    std::vector<std::pair<Term, Term>> pairs;
    std::istringstream lines(read_file(pairs_path));
    std::string line;
    for (std::size_t number = 1; std::getline(lines, line); ++number) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json entry;
        try {
            entry = json::parse(line);
        } catch (const json::parse_error&) {
            throw UsageError("line " + std::to_string(number) + ": not a JSON object");
        }
        if (!entry.is_object() || !entry.contains("lhs") || !entry["lhs"].is_string() ||
            !entry.contains("rhs") || !entry["rhs"].is_string()) {
            throw UsageError("line " + std::to_string(number) +
                             ": expected {\"lhs\": \"...\", \"rhs\": \"...\"}");
        }
        try {
            pairs.emplace_back(parse_input(entry["lhs"].get<std::string>(), sig.base(), cfg),
                               parse_input(entry["rhs"].get<std::string>(), sig.base(), cfg));
        } catch (const Error& e) {
            throw UsageError("line " + std::to_string(number) + ": " + e.what());
        }
    }
    const auto results = batch_classify(pairs, sig, cfg.budget());
    std::ostringstream buf;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (cfg.json()) {
            buf << classification_to_json(pairs[i].first, pairs[i].second, results[i]).dump()
                << '\n';
        } else {
            buf << render_term(pairs[i].first) << " vs " << render_term(pairs[i].second) << ": "
                << kind_name(results[i].kind) << " (" << results[i].rule << ")\n";
        }
    }
    emit(cfg, buf.str(), out);
    return kOk;
}

// --- criteria ---------------------------------------------------------------

std::unique_ptr<EqualityOracle> oracle_for(const std::string& fixture, const Signature& sig,
                                           const RunConfig& cfg)
{
    if (fixture.empty() || fixture == "free") {
        return std::make_unique<FreeLdOracle>(cfg.budget());
    }
    if (fixture == "idempotent") {
        return std::make_unique<FiniteMagmaOracle>(FiniteMagmaOracle::idempotent_point(sig));
    }
    if (fixture == "identified") {
        return std::make_unique<FiniteMagmaOracle>(FiniteMagmaOracle::laver_constant(1, sig, 1));
    }
    throw UsageError("unknown fixture '" + fixture + "' (free, idempotent, identified)");
}

int cmd_criteria(const std::string& action, const std::string& fixture, bool rho,
                 const RunConfig& cfg, std::ostream& out)
{
    const ColoredSignature colored = colored_signature(cfg.sig.empty() ? "mono" : cfg.sig);
    const Signature& sig = colored.base();
    const auto oracle = oracle_for(fixture, sig, cfg);

    json report{{"query", action},
                {"signature", json::parse(colored.to_json())["generators"]},
                {"oracle", oracle->name()},
                {"seed", cfg.seed}};
    int code = kUnknown;
    std::string verdict;
    if (action == "cycles") {
        std::vector<Term> generators = leaves_of(sig);
        if (rho) {
            for (auto& g : generators) {
                g = apply_rho(g, RhoMap{});
            }
        }
        const auto result = find_cycle(generators, cfg.bounds(), *oracle);
        verdict = result.found() ? "Found" : "NotFoundWithinBounds";
        json witness = nullptr;
        if (result.found()) {
            witness = json::array();
            for (const auto& w : *result.cycle) {
                witness.push_back(witness_to_json(w));
            }
            code = kFound;
        }
        report["witness"] = std::move(witness);
        report["bounds"] = bounds_to_json(cfg.bounds());
        report["rho_images"] = rho;
        report["criterion"] = sig.size() == 1 || rho
                                  ? "acyclicity (decisive for monogenic algebras)"
                                  : "acyclicity (necessary only; quasi-freeness also required)";
        report["counts"] = {{"seeds", result.seeds},
                            {"candidates", result.candidates},
                            {"unknown", result.unknown}};
    } else {
        if (sig.size() < 2) {
            throw UsageError("quasifree needs a signature with at least two generators");
        }
        const auto result = check_quasi_free(sig, cfg.qf_bounds(), *oracle);
        verdict = result.found() ? "Violation" : "NoneWithinBounds";
        report["witness"] = result.found() ? violation_to_json(*result.violation) : json(nullptr);
        report["bounds"] = bounds_to_json(cfg.qf_bounds());
        report["criterion"] = "quasi-freeness (multi-generator algebras)";
        report["counts"] = {{"candidates", result.candidates}, {"unknown", result.unknown}};
        if (result.found()) {
            code = kFound;
        }
    }
    report["verdict"] = verdict;
    if (dynamic_cast<const FreeLdOracle*>(oracle.get())) {
        report["budget"] = budget_to_json(cfg.budget());
    }

    std::ostringstream buf;
    if (cfg.json()) {
        buf << report.dump() << '\n';
    } else {
        buf << verdict << '\n';
        buf << report["counts"].dump() << '\n';
        if (!report["witness"].is_null()) {
            buf << report["witness"].dump() << '\n';
        }
    }
    emit(cfg, buf.str(), out);
    return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Workbench for left-distributive algebras", "ldwb"};
    app.require_subcommand(1);
    RunConfig cfg;

    // term
    auto* term = app.add_subcommand("term", "Parse, expand or walk a term");
    term->require_subcommand(1);
    std::string term_action;
    std::string term_text;
    std::size_t walk_steps = 1;
    for (const char* name : {"parse", "expand", "walk"}) {
        auto* sub = term->add_subcommand(name);
        sub->add_option("term", term_text, "Term text")->required();
        add_sig_flag(sub, cfg);
        add_output_flags(sub, cfg);
        sub->add_option("--max-term-size", cfg.max_term_size)->check(CLI::PositiveNumber);
        if (std::string(name) == "walk") {
            sub->add_option("--steps", walk_steps, "Number of expansion steps");
            sub->add_option("--seed", cfg.seed, "Random seed");
        }
        sub->callback([&term_action, name] { term_action = name; });
    }

    // eq
    auto* eq = app.add_subcommand("eq", "Decide LD-equivalence of two terms");
    std::string lhs_text;
    std::string rhs_text;
    eq->add_option("lhs", lhs_text)->required();
    eq->add_option("rhs", rhs_text)->required();
    add_sig_flag(eq, cfg);
    add_budget_flags(eq, cfg);
    add_output_flags(eq, cfg);

    // laver
    auto* laver = app.add_subcommand("laver", "Laver tables");
    laver->require_subcommand(1);
    std::string laver_action;
    LaverArgs laver_args;
    for (const char* name : {"gen", "period", "verify", "export"}) {
        auto* sub = laver->add_subcommand(name);
        sub->add_option("-n", laver_args.n, "Table index");
        if (std::string(name) != "gen") {
            sub->add_option("--file", laver_args.file, "Load the table from a binary file");
        }
        if (std::string(name) == "period") {
            sub->add_option("--row", laver_args.row, "Row index")->required();
        }
        add_output_flags(sub, cfg);
        sub->callback([&laver_action, name] { laver_action = name; });
    }

    // classify
    auto* classify = app.add_subcommand("classify", "Classify word pairs in the embedding model");
    std::string pairs_path;
    classify->add_option("pairs", pairs_path, "JSON-lines file of {\"lhs\",\"rhs\"} pairs")
        ->required();
    add_sig_flag(classify, cfg);
    add_budget_flags(classify, cfg);
    add_output_flags(classify, cfg);

    // criteria
    auto* criteria = app.add_subcommand("criteria", "Bounded freeness-criteria searches");
    criteria->require_subcommand(1);
    std::string criteria_action;
    std::string fixture;
    bool rho = false;
    for (const char* name : {"cycles", "quasifree"}) {
        auto* sub = criteria->add_subcommand(name);
        add_sig_flag(sub, cfg);
        add_budget_flags(sub, cfg);
        add_output_flags(sub, cfg);
        sub->add_option("--fixture", fixture, "Algebra: free (default), idempotent, identified");
        sub->add_option("--seed", cfg.seed, "Recorded in the report");
        if (std::string(name) == "cycles") {
            sub->add_option("--max-divisor-size", cfg.max_divisor_size)->check(CLI::PositiveNumber);
            sub->add_option("--max-chain", cfg.max_chain)->check(CLI::PositiveNumber);
            sub->add_option("--max-seed", cfg.max_seed)->check(CLI::PositiveNumber);
            sub->add_flag("--rho", rho, "Use the rho images of the generators");
        } else {
            sub->add_option("--max-context", cfg.max_context);
            sub->add_option("--max-tail", cfg.max_tail);
            sub->add_option("--max-component-size", cfg.max_component_size)
                ->check(CLI::PositiveNumber);
        }
        sub->callback([&criteria_action, name] { criteria_action = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    std::string_view diagnosed_text;
    try {
        if (term->parsed()) {
            diagnosed_text = term_text;
            return cmd_term(term_action, term_text, walk_steps, cfg, out);
        }
        if (eq->parsed()) {
            diagnosed_text = lhs_text;
            const int code = cmd_eq(lhs_text, rhs_text, cfg, out);
            return code;
        }
        if (laver->parsed()) {
            return cmd_laver(laver_action, laver_args, cfg, out);
        }
        if (classify->parsed()) {
            return cmd_classify(pairs_path, cfg, out);
        }
        return cmd_criteria(criteria_action, fixture, rho, cfg, out);
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << '\n';
        print_position(err, diagnosed_text, e.position());
    } catch (const UnknownGenerator& e) {
        err << "error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    }
    return kUsage;
}

}  // namespace ldwb::cli
