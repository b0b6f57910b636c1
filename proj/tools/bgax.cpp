// Command-line front end. Exit codes: 0 success, 1 usage or parse error,
// 2 internal invariant violation.

#include "bgax/decision.hpp"
#include "bgax/enumeration.hpp"
#include "bgax/models.hpp"
#include "bgax/pipeline.hpp"
#include "bgax/prover.hpp"
#include "bgax/term.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <limits>
#include <set>
#include <iostream>
#include <sstream>

namespace
{

using namespace bgax;

constexpr int exit_usage = 1;
constexpr int exit_internal = 2;

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Identity> read_identities(const std::string &path)
{
    FormulaFile f = parse_formula_file(read_file(path));
    if (!f.errors.empty())
        throw parse_error(path + " line " + std::to_string(f.errors.front().line) + ": " +
                              f.errors.front().message,
                          0);
    std::vector<Identity> out;
    for (const TaggedFormula &t : f.formulas)
        out.push_back(t.identity);
    return out;
}

std::string witness_text(const Z2Assignment &w)
{
    std::string out;
    for (const auto &[v, value] : w)
    {
        if (!out.empty())
            out += ", ";
        out += std::string(1, v) + "=" + std::to_string(value);
    }
    return out;
}

int cmd_check(const std::string &text)
{
    Identity id = parse_identity(text);
    bool parity = parity_decide(id);
    DecisionResult z2 = z2_decide(id);
    std::cout << "identity: " << print_identity(id) << '\n';
    std::cout << "parity: " << (parity ? "even" : "odd") << '\n';
    std::cout << "z2: " << (z2.is_theorem ? "holds" : "fails");
    if (z2.witness)
        std::cout << " at " << witness_text(*z2.witness);
    std::cout << '\n';
    if (parity != z2.is_theorem)
    {
        std::cerr << "internal error: parity and Z2 evaluation disagree\n";
        return exit_internal;
    }
    std::cout << "theorem: " << (parity ? "yes" : "no") << '\n';
    return 0;
}

int cmd_enumerate(bool mirror, bool swap, bool list)
{
    CandidateSpec spec;
    SymmetryConvention conv{mirror, swap};
    if (list)
    {
        std::set<Identity> seen;
        std::vector<TaggedFormula> out;
        for (const Identity &id : enumerate_candidates(spec))
        {
            Identity c = canonicalize(id, conv);
            if (seen.insert(c).second)
                out.push_back({"c" + std::to_string(out.size() + 1), c});
        }
        std::cout << format_formula_file(out);
        return 0;
    }
    std::cout << "shapes with 6 leaves: " << enumerate_shapes(6).size() << '\n';
    std::cout << "candidates T = x, T over {e, x, y, y, z, z}:\n";
    for (const CountRow &row : count_under_all_conventions(spec))
    {
        bool selected = row.convention.mirror == mirror && row.convention.variable_swap == swap;
        std::cout << "  " << (selected ? "* " : "  ") << row.convention.name() << ": " << row.count << '\n';
    }
    std::cout << "reported candidate count: " << reported_candidate_count
              << " (not reproduced by any of the conventions above)\n";
    return 0;
}

int cmd_models(const std::string &text, int size, bool all, bool count, std::size_t limit, bool json,
               bool least_number)
{
    ModelQuery q;
    q.identities = {parse_identity(text)};
    q.size = size;
    q.mode = count ? ModelMode::count : all ? ModelMode::find_all : ModelMode::find_one;
    q.limit = limit;
    q.least_number = least_number;
    ModelSearchResult r = find_models(q);
    if (count)
    {
        std::cout << r.count << '\n';
        return 0;
    }
    if (json)
    {
        std::cout << '[';
        for (std::size_t i = 0; i < r.models.size(); ++i)
            std::cout << (i ? "," : "") << table_to_json(r.models[i]);
        std::cout << "]\n";
        return 0;
    }
    if (r.models.empty())
        std::cout << "no model of size " << size << '\n';
    for (std::size_t i = 0; i < r.models.size(); ++i)
    {
        std::cout << "model " << i + 1 << (is_boolean_group(r.models[i]) ? " (Boolean group)" : "") << '\n'
                  << table_to_grid(r.models[i]);
    }
    return 0;
}

struct ProveOptions
{
    std::string axioms, goals, preset = "default";
    bool lpo = false, trace = false;
    double max_seconds = -1;
    long max_processed = -1;
    long max_term_size = -1;
};

int cmd_prove(const ProveOptions &o)
{
    std::vector<Identity> axioms = read_identities(o.axioms);
    std::vector<Identity> goals = o.goals.empty() ? std::vector<Identity>{} : read_identities(o.goals);
    StrategyPreset p = strategy_preset(o.preset);
    if (o.lpo)
        p.ordering.kind = OrderingKind::lpo;
    if (o.max_seconds >= 0)
        p.limits.max_seconds = o.max_seconds;
    if (o.max_processed >= 0)
        p.limits.max_processed = static_cast<std::size_t>(o.max_processed);
    if (o.max_term_size >= 0)
        p.limits.max_term_size = static_cast<std::size_t>(o.max_term_size);

    if (goals.empty())
    {
        CompletionResult r = complete(axioms, p.ordering, p.limits);
        std::cout << "status: " << to_string(r.status) << " (" << r.stop_reason << ")\n";
        for (const RewriteRule &rule : r.system.rules)
            std::cout << print_term(rule.lhs) << (rule.oriented ? " -> " : " = ") << print_term(rule.rhs) << '\n';
        return 0;
    }

    ProofOutcome out = derive(axioms, goals, p.ordering, p.limits);
    std::cout << "status: " << to_string(out.status) << " (" << out.stop_reason << ")\n";
    for (std::size_t i = 0; i < goals.size(); ++i)
        std::cout << "goal " << print_identity(goals[i]) << ": " << (out.goal_joined[i] ? "joined" : "open") << '\n';
    const ProverStats &s = out.stats;
    std::cout << "processed " << s.processed << ", critical pairs " << s.critical_pairs << ", rules "
              << s.rules_generated << ", dropped " << s.dropped_by_limits << ", ground-joinable " << s.ground_joinable << ", " << s.elapsed_seconds << " s\n";
    if (out.status == ProofStatus::proved)
    {
        ReplayResult replay = check_trace(out.trace, axioms, goals);
        std::cout << "trace: " << out.trace.size() << " steps, replay " << (replay.ok ? "ok" : "FAILED") << '\n';
        if (o.trace)
            std::cout << format_trace(out.trace);
        if (!replay.ok)
        {
            std::cerr << "internal error: trace step " << replay.failed_step << ": " << replay.message << '\n';
            return exit_internal;
        }
    }
    return 0;
}

ClassifyConfig config_for(const std::string &preset, bool no_prove)
{
    ClassifyConfig c = ClassifyConfig::from_preset(preset);
    c.prove = !no_prove;
    return c;
}

int cmd_classify(const std::string &text, const std::string &preset, bool json, bool no_prove)
{
    Classification c = classify(parse_identity(text), config_for(preset, no_prove));
    if (json)
    {
        std::cout << classification_json(c) << '\n';
        return 0;
    }
    std::cout << "identity: " << print_identity(c.identity) << '\n'
              << "parity: " << (c.parity ? "even" : "odd") << " (Z2 agrees)\n"
              << "models:";
    for (const SizeEvidence &ev : c.models)
        std::cout << " n=" << ev.n << ':' << ev.models << (ev.truncated ? "+" : "") << '/' << ev.boolean_groups;
    std::cout << "  (count/Boolean groups)\n";
    if (c.trivial)
        std::cout << "trivial: "
                  << (c.trivial->trivializing ? "no nontrivial model up to " + std::to_string(c.trivial->bound)
                                              : "nontrivial model at n=" + std::to_string(c.trivial->bound))
                  << '\n';
    if (c.proof.attempted)
        std::cout << "proof toward " << to_string(c.proof.target) << ": " << to_string(c.proof.status) << " ("
                  << c.proof.stop_reason << ", " << c.proof.stats.processed << " processed)\n";
    std::cout << "verdict: " << to_string(c.verdict) << '\n';
    return 0;
}

int cmd_batch(const std::string &path, bool json, int workers, const std::string &preset, bool no_prove)
{
    ClassifyConfig config = config_for(preset, no_prove);
    BatchReport report = run_batch(read_file(path), config, workers);
    if (json)
        std::cout << report_json(report, config);
    else
        std::cout << report_tsv(report);
    for (const FormulaLineError &e : report.errors)
        std::cerr << path << ':' << e.line << ": " << e.message << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Boolean-group single-axiom toolkit: parity decision, candidate enumeration, "
                 "finite models and equational completion"};
    app.require_subcommand(1);

    std::string identity;

    auto *check = app.add_subcommand("check", "decide Boolean-group theoremhood (parity and Z2)");
    check->add_option("identity", identity, "identity, e.g. \"((e·xy)·yz)z = x\"")->required();

    bool mirror = false, swap = false, list = false;
    auto *enumerate = app.add_subcommand("enumerate", "count candidate single axioms T = x");
    enumerate->add_flag("--mirror", mirror, "identify T with its mirror image");
    enumerate->add_flag("--swap", swap, "identify candidates differing by y <-> z");
    enumerate->add_flag("--list", list, "print the canonical candidates instead of counts");

    int size = 2;
    bool all = false, count = false, json = false, least_number = false;
    std::size_t limit = std::numeric_limits<std::size_t>::max();
    auto *models = app.add_subcommand("models", "search finite models (e is element 0)");
    models->add_option("identity", identity)->required();
    models->add_option("--size,-n", size, "domain size (1..6)")->required();
    auto *all_flag = models->add_flag("--all", all, "all models");
    models->add_flag("--count", count, "only the number of models")->excludes(all_flag);
    models->add_option("--limit", limit, "stop after this many models");
    models->add_flag("--json", json, "JSON output");
    models->add_flag("--least-number", least_number, "prune isomorphic tables (counts become non-raw)");

    ProveOptions prove_opts;
    auto *prove = app.add_subcommand("prove", "completion; derive goals from axioms");
    prove->add_option("--axioms", prove_opts.axioms, "formula file")->required();
    prove->add_option("--goals", prove_opts.goals, "formula file (omit to just complete)");
    prove->add_option("--preset", prove_opts.preset, "strategy preset (default, lpo)");
    prove->add_flag("--lpo", prove_opts.lpo, "use the lexicographic path ordering");
    prove->add_option("--max-seconds", prove_opts.max_seconds, "wall-clock limit");
    prove->add_option("--max-processed", prove_opts.max_processed, "processed-equation limit");
    prove->add_option("--max-term-size", prove_opts.max_term_size, "term size cap in symbols");
    prove->add_flag("--trace", prove_opts.trace, "print the proof trace");

    std::string preset = "default";
    bool no_prove = false;
    auto *classify_cmd = app.add_subcommand("classify", "full classification of one identity");
    classify_cmd->add_option("identity", identity)->required();
    classify_cmd->add_option("--preset", preset, "prover strategy preset");
    classify_cmd->add_flag("--json", json, "JSON output");
    classify_cmd->add_flag("--no-prove", no_prove, "skip the prover");

    std::string batch_file;
    bool tsv = false;
    int workers = 0;
    auto *batch = app.add_subcommand("batch", "classify every formula of a file");
    batch->add_option("file", batch_file)->required();
    auto *json_flag = batch->add_flag("--json", json, "JSON report");
    batch->add_flag("--tsv", tsv, "TSV report (default)")->excludes(json_flag);
    batch->add_option("--workers,-j", workers, "worker threads (0: all cores, 1: serial)");
    batch->add_option("--preset", preset, "prover strategy preset");
    batch->add_flag("--no-prove", no_prove, "skip the prover");

    auto *fixtures_cmd = app.add_subcommand("fixtures", "print the embedded 11 formulas");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try
    {
        if (*check)
            return cmd_check(identity);
        if (*enumerate)
            return cmd_enumerate(mirror, swap, list);
        if (*models)
            return cmd_models(identity, size, all, count, limit, json, least_number);
        if (*prove)
            return cmd_prove(prove_opts);
        if (*classify_cmd)
            return cmd_classify(identity, preset, json, no_prove);
        if (*batch)
            return cmd_batch(batch_file, json, workers, preset, no_prove);
        if (*fixtures_cmd)
        {
            std::cout << fixture_file();
            return 0;
        }
    }
    catch (const invariant_violation &e)
    {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    catch (const std::logic_error &e)
    {
        // invalid_argument / out_of_range: bad sizes, unknown presets, ...
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::runtime_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
