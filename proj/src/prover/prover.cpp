#include "bgax/prover.hpp"

#include "engine.hpp"

#include <stdexcept>

namespace bgax
{

using detail::Engine;
using detail::TermId;

namespace
{

const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";

TermId install_rule(Engine &engine, const RewriteRule &r)
{
    TermId l = engine.bank().from_term(r.lhs);
    TermId rhs = engine.bank().from_term(r.rhs);
    if (r.oriented && !engine.ordering().greater(l, rhs))
        throw std::invalid_argument("rule " + print_term(r.lhs) + " -> " + print_term(r.rhs) +
                                    " is not decreasing in the term ordering");
    engine.add_rule(l, rhs, r.oriented);
    return l;
}

Identity canonical_identity(detail::TermBank &bank, TermId l, TermId r)
{
    bank.canonical_pair(l, r);
    return Identity{bank.to_term(l, detail::canonical_letters(), ""), bank.to_term(r, detail::canonical_letters(), "")};
}

void check_ordering(const TermOrdering &ord)
{
    if (!ord.valid())
        throw std::invalid_argument("term ordering weights are not admissible");
}

} // namespace

bool TermOrdering::valid() const
{
    return kind == OrderingKind::lpo || (variable_weight > 0 && variable_weight <= constant_weight);
}

std::string to_string(ProofStatus s)
{
    switch (s)
    {
    case ProofStatus::proved:
        return "proved";
    case ProofStatus::saturated:
        return "saturated-without-proof";
    case ProofStatus::resource_out:
        return "resource-out";
    }
    return "unknown";
}

Comparison compare(const TermOrdering &ord, const Term &s, const Term &t)
{
    check_ordering(ord);
    detail::TermBank bank(detail::weights_for(ord));
    detail::Ordering o(bank, ord);
    TermId a = bank.from_term(s);
    TermId b = bank.from_term(t);
    return o.compare(a, b);
}

Term normalize(const Term &t, const std::vector<RewriteRule> &rules, const TermOrdering &ord)
{
    check_ordering(ord);
    Engine engine(ord, ProverLimits{});
    for (const RewriteRule &r : rules)
        install_rule(engine, r);
    TermId nf = engine.normal_form(engine.bank().from_term(t));
    return engine.bank().to_term(nf, alphabet, "");
}

std::vector<Term> normalize_ground(const std::vector<Term> &terms, const std::vector<RewriteRule> &rules,
                                   const TermOrdering &ord)
{
    check_ordering(ord);
    Engine engine(ord, ProverLimits{});
    for (const RewriteRule &r : rules)
        install_rule(engine, r);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const Term &t : terms)
        out.push_back(engine.bank().to_term(engine.normal_form(engine.bank().from_term(t, true)), "", alphabet));
    return out;
}

std::vector<Identity> critical_pairs(const RewriteRule &r1, const RewriteRule &r2, const TermOrdering &ord)
{
    check_ordering(ord);
    Engine engine(ord, ProverLimits{});
    install_rule(engine, r1);
    install_rule(engine, r2);
    std::vector<Identity> out;
    for (auto [l, r] : engine.overlaps_between(0, 1))
        if (l != r)
            out.push_back(canonical_identity(engine.bank(), l, r));
    return out;
}

CompletionResult complete(const std::vector<Identity> &axioms, const TermOrdering &ord, const ProverLimits &limits)
{
    check_ordering(ord);
    Engine engine(ord, limits);
    for (const Identity &ax : axioms)
        engine.add_axiom(engine.bank().from_term(ax.lhs), engine.bank().from_term(ax.rhs));
    CompletionResult result;
    result.status = engine.run();
    result.stop_reason = engine.stop_reason();
    result.stats = engine.stats();
    result.system.ordering = ord;
    for (const detail::Active &a : engine.actives())
    {
        if (a.state != detail::ActiveState::live)
            continue;
        Identity id = canonical_identity(engine.bank(), a.lhs, a.rhs);
        result.system.rules.push_back(RewriteRule{id.lhs, id.rhs, a.oriented});
    }
    return result;
}

ProofOutcome derive(const std::vector<Identity> &axioms, const std::vector<Identity> &goals, const TermOrdering &ord,
                    const ProverLimits &limits)
{
    check_ordering(ord);
    Engine engine(ord, limits);
    for (const Identity &ax : axioms)
        engine.add_axiom(engine.bank().from_term(ax.lhs), engine.bank().from_term(ax.rhs));
    for (const Identity &g : goals)
        engine.add_goal(engine.bank().from_term(g.lhs, true), engine.bank().from_term(g.rhs, true));

    ProofOutcome out;
    out.goals = goals;
    out.status = engine.run();
    out.stop_reason = engine.stop_reason();
    out.stats = engine.stats();
    for (const detail::Goal &g : engine.goals())
        out.goal_joined.push_back(g.joined);
    if (out.status == ProofStatus::proved)
        out.trace = engine.extract_proof(alphabet);
    return out;
}

const std::vector<StrategyPreset> &strategy_presets()
{
    static const std::vector<StrategyPreset> presets = [] {
        std::vector<StrategyPreset> p;
        p.push_back({"default", TermOrdering{}, ProverLimits{}});
        TermOrdering lpo;
        lpo.kind = OrderingKind::lpo;
        p.push_back({"lpo", lpo, ProverLimits{}});
        return p;
    }();
    return presets;
}

const StrategyPreset &strategy_preset(std::string_view name)
{
    for (const StrategyPreset &p : strategy_presets())
        if (p.name == name)
            return p;
    throw std::invalid_argument("unknown strategy preset '" + std::string(name) + "'");
}

} // namespace bgax
