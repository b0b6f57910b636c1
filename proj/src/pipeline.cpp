#include "bgax/pipeline.hpp"

#include "bgax/parallel.hpp"

#include <nlohmann/json.hpp>

#include <exception>
#include <sstream>

namespace bgax
{

using json = nlohmann::ordered_json;

// --- fixtures -------------------------------------------------------------

std::vector<TaggedFormula> FixtureSet::all() const
{
    std::vector<TaggedFormula> out = single_axioms;
    out.insert(out.end(), finite_only.begin(), finite_only.end());
    return out;
}

namespace
{

TaggedFormula fixture(const char *tag, const char *text) { return {tag, parse_identity(text)}; }

} // namespace

const FixtureSet &fixtures()
{
    static const FixtureSet set = [] {
        FixtureSet s;
        s.single_axioms = {
            fixture("80R4u", "((e·xy)·yz)z = x"), fixture("81R1d", "e((x·yz)y·z) = x"),
            fixture("81L2d", "e(xy·z)·yz = x"),   fixture("81R2d", "((e·xy)·zy)z = x"),
            fixture("81L3d", "(e(x·yz)·y)z = x"), fixture("81R3d", "e((x·yz)z·y) = x"),
            fixture("81M2d", "e(xy·zy)·z = x"),   fixture("81R3u", "e((xy·z)·yz) = x"),
        };
        s.finite_only = {
            fixture("81L2", "(ex·yz)y·z = x"),
            fixture("81M2", "(ex·y)z·yz = x"),
            fixture("81R1", "(ex·yz)z·y = x"),
        };
        return s;
    }();
    return set;
}

std::string fixture_file()
{
    const FixtureSet &set = fixtures();
    return "# single axioms for Boolean groups\n" + format_formula_file(set.single_axioms) +
           "# axioms for finite Boolean groups only\n" + format_formula_file(set.finite_only);
}

const std::vector<Identity> &boolean_group_axioms()
{
    static const std::vector<Identity> goals{parse_identity("xx = e"), parse_identity("ex = x"),
                                             parse_identity("xy·z = x·yz")};
    return goals;
}

const Identity &trivial_goal()
{
    static const Identity goal = parse_identity("x = e");
    return goal;
}

// --- classification -------------------------------------------------------

ClassifyConfig ClassifyConfig::from_preset(std::string_view name)
{
    const StrategyPreset &p = strategy_preset(name);
    ClassifyConfig c;
    c.strategy = p.name;
    c.ordering = p.ordering;
    // Keep the processed-count bound that makes batch reports reproducible.
    c.limits.max_seconds = p.limits.max_seconds;
    c.limits.max_term_size = p.limits.max_term_size;
    c.limits.max_passive = p.limits.max_passive;
    return c;
}

std::string to_string(Verdict v)
{
    switch (v)
    {
    case Verdict::boolean_theorem_candidate:
        return "boolean-theorem-candidate";
    case Verdict::trivializing:
        return "trivializing";
    case Verdict::inconsistent_evidence:
        return "inconsistent-evidence";
    }
    return "unknown";
}

std::string to_string(ProofTarget t)
{
    return t == ProofTarget::boolean_group_axioms ? "boolean-group-axioms" : "x = e";
}

namespace
{

bool satisfies_goals(const CayleyTable &t, const std::vector<Identity> &goals, const Identity **failed)
{
    for (const Identity &g : goals)
        if (!satisfies(t, g))
        {
            *failed = &g;
            return false;
        }
    return true;
}

} // namespace

CrossValidation cross_validate(const std::vector<Identity> &axioms, const std::vector<Identity> &goals, int max_n)
{
    CrossValidation out;
    for (int n = 1; n <= max_n; ++n)
    {
        ModelQuery q;
        q.identities = axioms;
        q.size = n;
        for (const CayleyTable &t : find_models(q).models)
        {
            ++out.tables_checked;
            const Identity *failed = nullptr;
            if (!satisfies_goals(t, goals, &failed))
            {
                out.ok = false;
                out.counterexample = t;
                out.failed_goal = *failed;
                return out;
            }
        }
    }
    return out;
}

Classification classify(const Identity &id, const ClassifyConfig &config, std::string tag)
{
    Classification c;
    c.tag = tag.empty() ? print_identity(id) : std::move(tag);
    c.identity = id;

    c.parity = parity_decide(id);
    DecisionResult z2 = z2_decide(id);
    c.z2_agrees = z2.is_theorem == c.parity;
    c.z2_witness = z2.witness;
    if (!c.z2_agrees)
        throw invariant_violation("parity criterion and Z2 evaluation disagree on " + print_identity(id));

    // Model evidence; the examined tables are kept for cross-validation.
    std::vector<CayleyTable> examined;
    bool all_boolean = true;
    for (int n = 1; n <= config.model_max_size; ++n)
    {
        ModelQuery q;
        q.identities = {id};
        q.size = n;
        q.limit = config.model_limit + 1;
        ModelSearchResult r = find_models(q);
        SizeEvidence ev;
        ev.n = n;
        ev.truncated = r.models.size() > config.model_limit;
        if (ev.truncated)
        {
            r.models.resize(config.model_limit);
            ModelQuery counting = q;
            counting.mode = ModelMode::count;
            ev.models = find_models(counting).count;
        }
        else
        {
            ev.models = r.models.size();
        }
        for (CayleyTable &t : r.models)
        {
            if (is_boolean_group(t))
                ++ev.boolean_groups;
            else
                all_boolean = false;
            examined.push_back(std::move(t));
        }
        c.models.push_back(ev);
    }

    if (!c.parity)
        c.trivial = is_trivializing(id, config.trivial_bound);

    if (config.prove)
    {
        ProofSummary &p = c.proof;
        p.attempted = true;
        p.target = c.parity ? ProofTarget::boolean_group_axioms : ProofTarget::trivial;
        p.goals = c.parity ? boolean_group_axioms() : std::vector<Identity>{trivial_goal()};
        ProofOutcome out = derive({id}, p.goals, config.ordering, config.limits);
        p.status = out.status;
        p.stop_reason = out.stop_reason;
        p.goal_joined = out.goal_joined;
        p.stats = out.stats;
        p.trace_steps = out.trace.size();
        if (out.status == ProofStatus::proved)
        {
            ReplayResult replay = check_trace(out.trace, {id}, p.goals);
            if (!replay.ok)
                throw invariant_violation("proof for " + c.tag + " does not replay at step " +
                                          std::to_string(replay.failed_step) + ": " + replay.message);
            p.replayed = true;
            for (const CayleyTable &t : examined)
            {
                const Identity *failed = nullptr;
                if (!satisfies_goals(t, p.goals, &failed))
                    throw invariant_violation("proof for " + c.tag + " is contradicted by a model of size " +
                                              std::to_string(t.n) + " violating " + print_identity(*failed));
                ++p.tables_checked;
            }
            p.cross_validated = true;
        }
    }

    const bool proved = c.proof.attempted && c.proof.status == ProofStatus::proved;
    if (c.parity && all_boolean)
        c.verdict = Verdict::boolean_theorem_candidate;
    else if (!c.parity && ((proved && c.proof.target == ProofTarget::trivial) || c.trivial->trivializing))
        c.verdict = Verdict::trivializing;
    else
        c.verdict = Verdict::inconsistent_evidence;
    return c;
}

// --- batch ----------------------------------------------------------------

BatchReport run_batch(std::string_view file_text, const ClassifyConfig &config, int workers)
{
    FormulaFile file = parse_formula_file(file_text);
    BatchReport report;
    report.errors = file.errors;
    const std::size_t n = file.formulas.size();
    report.entries.resize(n);

    auto work = [&](std::size_t i) {
        report.entries[i] = classify(file.formulas[i].identity, config, file.formulas[i].tag);
    };
    const int threads = resolve_workers(workers);
    if (threads == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            work(i);
    }
    else
    {
        // Exceptions may not leave an OpenMP region; rethrow the first one
        // in input order afterwards.
        std::vector<std::exception_ptr> failures(n);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        {
            try
            {
                work(static_cast<std::size_t>(i));
            }
            catch (...)
            {
                failures[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (const std::exception_ptr &e : failures)
            if (e)
                std::rethrow_exception(e);
    }

    BatchSummary &s = report.summary;
    s.formulas = n;
    s.parse_errors = report.errors.size();
    for (const Classification &c : report.entries)
    {
        s.parity_pass += c.parity ? 1 : 0;
        s.proved += c.proof.attempted && c.proof.status == ProofStatus::proved ? 1 : 0;
        switch (c.verdict)
        {
        case Verdict::boolean_theorem_candidate:
            ++s.boolean_theorem_candidates;
            break;
        case Verdict::trivializing:
            ++s.trivializing;
            break;
        case Verdict::inconsistent_evidence:
            ++s.inconsistent_evidence;
            break;
        }
    }
    return report;
}

// --- reports --------------------------------------------------------------

namespace
{

json identity_json(const Identity &id) { return print_identity(id); }

json classification_object(const Classification &c)
{
    json j;
    j["tag"] = c.tag;
    j["identity"] = identity_json(c.identity);
    j["parity"] = c.parity;
    j["z2_agrees"] = c.z2_agrees;
    if (c.z2_witness)
    {
        json w = json::object();
        for (const auto &[v, value] : *c.z2_witness)
            w[std::string(1, v)] = value;
        j["z2_witness"] = std::move(w);
    }
    else
    {
        j["z2_witness"] = nullptr;
    }

    json models = json::array();
    for (const SizeEvidence &ev : c.models)
        models.push_back(json{{"n", ev.n},
                              {"models", ev.models},
                              {"boolean_groups", ev.boolean_groups},
                              {"truncated", ev.truncated}});
    j["models"] = std::move(models);

    if (c.trivial)
    {
        json t;
        t["trivializing"] = c.trivial->trivializing;
        t["bound"] = c.trivial->bound;
        t["witness"] = c.trivial->witness ? json::parse(table_to_json(*c.trivial->witness)) : json(nullptr);
        j["trivial"] = std::move(t);
    }
    else
    {
        j["trivial"] = nullptr;
    }

    const ProofSummary &p = c.proof;
    if (p.attempted)
    {
        json proof;
        proof["target"] = to_string(p.target);
        proof["status"] = to_string(p.status);
        proof["stop_reason"] = p.stop_reason;
        json goals = json::array();
        for (std::size_t i = 0; i < p.goals.size(); ++i)
            goals.push_back(json{{"goal", identity_json(p.goals[i])},
                                 {"joined", i < p.goal_joined.size() && p.goal_joined[i]}});
        proof["goals"] = std::move(goals);
        proof["processed"] = p.stats.processed;
        proof["critical_pairs"] = p.stats.critical_pairs;
        proof["rules_generated"] = p.stats.rules_generated;
        proof["dropped_by_limits"] = p.stats.dropped_by_limits;
        proof["ground_joinable"] = p.stats.ground_joinable;
        proof["trace_steps"] = p.trace_steps;
        proof["replayed"] = p.replayed;
        proof["cross_validated"] = p.cross_validated;
        proof["tables_checked"] = p.tables_checked;
        j["proof"] = std::move(proof);
    }
    else
    {
        j["proof"] = nullptr;
    }
    j["verdict"] = to_string(c.verdict);
    return j;
}

std::string ordering_name(const TermOrdering &o) { return o.kind == OrderingKind::kbo ? "kbo" : "lpo"; }

} // namespace

std::string classification_json(const Classification &c) { return classification_object(c).dump(2); }

std::string report_json(const BatchReport &report, const ClassifyConfig &config)
{
    json j;
    json cfg;
    cfg["strategy"] = config.strategy;
    cfg["ordering"] = ordering_name(config.ordering);
    cfg["max_processed"] = config.limits.max_processed;
    cfg["max_seconds"] = config.limits.max_seconds;
    cfg["max_term_size"] = config.limits.max_term_size;
    cfg["model_max_size"] = config.model_max_size;
    cfg["trivial_bound"] = config.trivial_bound;
    cfg["prove"] = config.prove;
    j["config"] = std::move(cfg);

    const BatchSummary &s = report.summary;
    j["summary"] = json{{"formulas", s.formulas},
                        {"parity_pass", s.parity_pass},
                        {"parity_fail", s.formulas - s.parity_pass},
                        {"boolean_theorem_candidates", s.boolean_theorem_candidates},
                        {"trivializing", s.trivializing},
                        {"inconsistent_evidence", s.inconsistent_evidence},
                        {"proved", s.proved},
                        {"parse_errors", s.parse_errors}};

    json errors = json::array();
    for (const FormulaLineError &e : report.errors)
        errors.push_back(json{{"line", e.line}, {"message", e.message}});
    j["errors"] = std::move(errors);

    json entries = json::array();
    for (const Classification &c : report.entries)
        entries.push_back(classification_object(c));
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

std::string report_tsv(const BatchReport &report)
{
    std::ostringstream os;
    os << "tag\tidentity\tparity\tz2_agrees\tmodel_counts\tboolean_groups\ttrivializing\tproof_target\tproof_status"
          "\tprocessed\tverdict\n";
    for (const Classification &c : report.entries)
    {
        std::string counts;
        std::string groups;
        for (const SizeEvidence &ev : c.models)
        {
            if (!counts.empty())
            {
                counts += ',';
                groups += ',';
            }
            counts += std::to_string(ev.models) + (ev.truncated ? "+" : "");
            groups += std::to_string(ev.boolean_groups);
        }
        std::string trivial = !c.trivial ? "-" : c.trivial->trivializing ? "yes" : "no";
        os << c.tag << '\t' << print_identity(c.identity, PrintStyle::ascii) << '\t' << (c.parity ? "yes" : "no")
           << '\t' << (c.z2_agrees ? "yes" : "no") << '\t' << counts << '\t' << groups << '\t' << trivial << '\t'
           << (c.proof.attempted ? to_string(c.proof.target) : "-") << '\t'
           << (c.proof.attempted ? to_string(c.proof.status) : "-") << '\t'
           << (c.proof.attempted ? std::to_string(c.proof.stats.processed) : "-") << '\t' << to_string(c.verdict)
           << '\n';
    }
    const BatchSummary &s = report.summary;
    os << "# formulas\t" << s.formulas << '\n'
       << "# parity_pass\t" << s.parity_pass << '\n'
       << "# boolean_theorem_candidates\t" << s.boolean_theorem_candidates << '\n'
       << "# trivializing\t" << s.trivializing << '\n'
       << "# inconsistent_evidence\t" << s.inconsistent_evidence << '\n'
       << "# proved\t" << s.proved << '\n'
       << "# parse_errors\t" << s.parse_errors << '\n';
    for (const FormulaLineError &e : report.errors)
        os << "# error line " << e.line << '\t' << e.message << '\n';
    return os.str();
}

} // namespace bgax
